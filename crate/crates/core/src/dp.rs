//! Dynamic programming over tree decompositions: maximum-weight independent
//! set by per-bag subset states, and d-scattered set on top of it.
//!
//! A d-scattered set of G is exactly an independent set of the power graph
//! G^{d-1}. Fattening every bag of a decomposition of G by balls of radius
//! ⌈(d-1)/2⌉ yields a valid decomposition of G^{d-1} (any two vertices at
//! distance < d have a geodesic midpoint within that radius of both, and the
//! expanded vertex subtrees stay connected), so the independent-set DP on the
//! power graph solves the scattered problem without a bespoke transition
//! table.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::nice::{make_nice, NiceDecomposition, NiceKind};
use crate::treewidth::TreeDecomposition;
use crate::weight::{Weight, WeightMap};

/// Parameters for the scattered-set problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScatteredParams {
    /// Required pairwise distance, at least 2.
    pub d: usize,
}

impl ScatteredParams {
    pub fn new(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidInput(format!("d must be >= 2, got {d}")));
        }
        Ok(ScatteredParams { d })
    }
}

/// Largest bag admitted by the subset DP; states are u64 bit masks over bag
/// positions.
const MAX_DP_BAG: usize = 63;

struct NodeTable<W> {
    /// State mask over sorted bag positions -> best value. Only independent
    /// states are ever materialized.
    values: BTreeMap<u64, W>,
    /// For forget nodes: whether the winning child state included the
    /// forgotten vertex. The back-pointers for introduce and join nodes are
    /// implicit in the node kind.
    took_forgotten: BTreeMap<u64, bool>,
}

/// Maximum-weight independent set via the standard per-bag subset DP.
/// Returns the optimum and a witness attaining it.
pub fn mwis_on_decomposition<W: Weight>(
    g: &Graph,
    w: &WeightMap<W>,
    nd: &NiceDecomposition,
) -> Result<(W, VertexSet)> {
    if nd.n != g.num_vertices() {
        return Err(Error::InvalidInput(format!(
            "decomposition covers {} vertices, graph has {}",
            nd.n,
            g.num_vertices()
        )));
    }
    if w.len() != g.num_vertices() {
        return Err(Error::InvalidInput(
            "weight map does not match the graph".into(),
        ));
    }
    if let Some(big) = nd.nodes.iter().find(|node| node.bag.len() > MAX_DP_BAG) {
        return Err(Error::Capacity {
            what: "bag size for the subset DP",
            got: big.bag.len(),
            limit: MAX_DP_BAG,
        });
    }

    let mut tables: Vec<Option<NodeTable<W>>> = (0..nd.nodes.len()).map(|_| None).collect();
    for x in nd.post_order() {
        let node = &nd.nodes[x];
        let table = match node.kind {
            NiceKind::Leaf => {
                let mut values = BTreeMap::new();
                values.insert(0u64, W::zero());
                NodeTable {
                    values,
                    took_forgotten: BTreeMap::new(),
                }
            }
            NiceKind::Introduce { child, vertex } => {
                let rank = node
                    .bag
                    .binary_search(&vertex)
                    .expect("introduced vertex in bag");
                // Neighbors of the introduced vertex among this bag's
                // positions; every processed neighbor lives in the bag.
                let mut nbr_mask = 0u64;
                for (i, &u) in node.bag.iter().enumerate() {
                    if g.has_edge(vertex, u) {
                        nbr_mask |= 1 << i;
                    }
                }
                let child_table = tables[child].as_ref().expect("child computed");
                let mut values = BTreeMap::new();
                for (&cmask, &val) in &child_table.values {
                    let pmask = insert_bit_gap(cmask, rank);
                    values.insert(pmask, val);
                    if pmask & nbr_mask == 0 {
                        let with = val
                            .checked_add(&w.get(vertex))
                            .ok_or(Error::WeightOverflow)?;
                        values.insert(pmask | (1 << rank), with);
                    }
                }
                NodeTable {
                    values,
                    took_forgotten: BTreeMap::new(),
                }
            }
            NiceKind::Forget { child, vertex } => {
                let child_bag = &nd.nodes[child].bag;
                let rank = child_bag
                    .binary_search(&vertex)
                    .expect("forgotten vertex in child bag");
                let child_table = tables[child].as_ref().expect("child computed");
                let mut values: BTreeMap<u64, W> = BTreeMap::new();
                let mut took: BTreeMap<u64, bool> = BTreeMap::new();
                for (&cmask, &val) in &child_table.values {
                    let had = cmask & (1 << rank) != 0;
                    let pmask = remove_bit_gap(cmask, rank);
                    match values.get(&pmask) {
                        // Ties keep the earlier entry; child masks without
                        // the forgotten vertex enumerate first, so exclusion
                        // wins ties deterministically.
                        Some(&best) if best >= val => {}
                        _ => {
                            values.insert(pmask, val);
                            took.insert(pmask, had);
                        }
                    }
                }
                NodeTable {
                    values,
                    took_forgotten: took,
                }
            }
            NiceKind::Join { left, right } => {
                let left_table = tables[left].as_ref().expect("left computed");
                let right_table = tables[right].as_ref().expect("right computed");
                let mut values = BTreeMap::new();
                for (&mask, &lv) in &left_table.values {
                    let Some(&rv) = right_table.values.get(&mask) else {
                        continue;
                    };
                    // The bag-selected weight is counted on both sides.
                    let mut overlap = W::zero();
                    for (i, &u) in node.bag.iter().enumerate() {
                        if mask & (1 << i) != 0 {
                            overlap = overlap
                                .checked_add(&w.get(u))
                                .ok_or(Error::WeightOverflow)?;
                        }
                    }
                    let sum = lv.checked_add(&rv).ok_or(Error::WeightOverflow)?;
                    let val = sum.checked_sub(&overlap).ok_or(Error::WeightOverflow)?;
                    values.insert(mask, val);
                }
                NodeTable {
                    values,
                    took_forgotten: BTreeMap::new(),
                }
            }
        };
        tables[x] = Some(table);
    }

    let root_table = tables[nd.root].as_ref().expect("root computed");
    let &value = root_table
        .values
        .get(&0)
        .expect("root bag is empty, so state 0 exists");

    // Witness reconstruction: walk down recording the forgotten vertices the
    // winning states included.
    let mut witness = VertexSet::new();
    let mut stack = vec![(nd.root, 0u64)];
    while let Some((x, mask)) = stack.pop() {
        match nd.nodes[x].kind {
            NiceKind::Leaf => {}
            NiceKind::Introduce { child, vertex } => {
                let rank = nd.nodes[x].bag.binary_search(&vertex).unwrap();
                stack.push((child, remove_bit_gap(mask, rank)));
            }
            NiceKind::Forget { child, vertex } => {
                let table = tables[x].as_ref().unwrap();
                let took = *table.took_forgotten.get(&mask).expect("state traced");
                let rank = nd.nodes[child].bag.binary_search(&vertex).unwrap();
                let mut cmask = insert_bit_gap(mask, rank);
                if took {
                    cmask |= 1 << rank;
                    witness.insert(vertex);
                }
                stack.push((child, cmask));
            }
            NiceKind::Join { left, right } => {
                stack.push((left, mask));
                stack.push((right, mask));
            }
        }
    }

    debug_assert!(g.is_independent_set(&witness));
    debug_assert_eq!(w.sum_over(witness.iter().copied())?, value);
    Ok((value, witness))
}

/// Insert a zero bit at `rank`, shifting higher bits up.
fn insert_bit_gap(mask: u64, rank: usize) -> u64 {
    let low = mask & ((1u64 << rank) - 1);
    let high = mask >> rank;
    low | (high << (rank + 1))
}

/// Remove the bit at `rank`, shifting higher bits down.
fn remove_bit_gap(mask: u64, rank: usize) -> u64 {
    let low = mask & ((1u64 << rank) - 1);
    let high = mask >> (rank + 1);
    low | (high << rank)
}

/// Maximum d-scattered set. The supplied decomposition must decompose `g`;
/// its bags are fattened by distance-⌈(d-1)/2⌉ balls to decompose the power
/// graph G^{d-1}, and the independent-set DP runs there with unit weights.
pub fn scattered_on_decomposition(
    g: &Graph,
    params: &ScatteredParams,
    nd: &NiceDecomposition,
) -> Result<(usize, VertexSet)> {
    if params.d < 2 {
        return Err(Error::InvalidInput("d must be >= 2".into()));
    }
    let n = g.num_vertices();
    if n == 0 {
        return Ok((0, VertexSet::new()));
    }
    // Distances within a component are below n, so d caps at n: beyond that
    // the constraint reads "in distinct components" either way.
    let d = params.d.min(n.max(2));

    let power = g.power(d - 1);
    let fat = fatten_decomposition(g, &nd.to_decomposition(), d);
    debug_assert!(crate::treewidth::validate_decomposition(&power, &fat).is_ok());
    let fat_nice = make_nice(&fat)?;
    let unit: WeightMap<usize> = WeightMap::unit(&power);
    let (value, witness) = mwis_on_decomposition(&power, &unit, &fat_nice)?;

    // Independent re-check of the witness against true graph distances.
    assert!(
        g.is_scattered_set(&witness, params.d),
        "witness fails the pairwise distance check"
    );
    assert_eq!(value, witness.len());
    Ok((value, witness))
}

/// Replace every bag by the union of balls of radius ⌈(d-1)/2⌉ around its
/// members (radius 0 when d = 2). Valid for G^{d-1}: an edge of the power
/// graph is a path of length < d in G whose midpoint carries both endpoints
/// into some fattened bag, and the set of bags containing a vertex grows to
/// the union of the adjacent-overlapping subtrees of a connected ball.
fn fatten_decomposition(g: &Graph, td: &TreeDecomposition, d: usize) -> TreeDecomposition {
    let r = if d == 2 { 0 } else { (d - 1).div_ceil(2) };
    if r == 0 {
        return td.clone();
    }
    let balls: Vec<VertexSet> = (0..g.num_vertices())
        .map(|v| {
            let dist = g.bfs_distances(v).expect("valid source");
            VertexSet::from_iter((0..g.num_vertices()).filter(|&u| dist[u].is_some_and(|x| x <= r)))
        })
        .collect();
    let bags = td
        .bags
        .iter()
        .map(|bag| {
            let mut fat = VertexSet::new();
            for &v in bag.iter() {
                fat = fat.union(&balls[v]);
            }
            fat
        })
        .collect();
    TreeDecomposition {
        n: td.n,
        bags,
        tree_edges: td.tree_edges.clone(),
    }
}

/// Convenience: decompose with a single bag and run the MWIS DP; the
/// exponential fallback for tiny graphs in tests.
pub fn mwis_single_bag<W: Weight>(g: &Graph, w: &WeightMap<W>) -> Result<(W, VertexSet)> {
    let nd = make_nice(&TreeDecomposition::single_bag(g))?;
    mwis_on_decomposition(g, w, &nd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treewidth::decompose_bounded_degree;

    fn nice_for(g: &Graph) -> NiceDecomposition {
        make_nice(&TreeDecomposition::single_bag(g)).unwrap()
    }

    #[test]
    fn p4_alternating_weights() {
        let g = Graph::path(4);
        let w = WeightMap::<u64>::new(&g, vec![1, 10, 1, 10]).unwrap();
        let (value, witness) = mwis_on_decomposition(&g, &w, &nice_for(&g)).unwrap();
        assert_eq!(value, 20);
        assert_eq!(witness.as_slice(), &[1, 3]);
    }

    #[test]
    fn c5_unit() {
        let g = Graph::cycle(5);
        let w = WeightMap::<u64>::unit(&g);
        let (value, _) = mwis_on_decomposition(&g, &w, &nice_for(&g)).unwrap();
        assert_eq!(value, 2);
    }

    #[test]
    fn works_on_builder_decompositions() {
        let g = Graph::cycle(6);
        let td = decompose_bounded_degree(&g, 7).unwrap();
        let nd = make_nice(&td).unwrap();
        let w = WeightMap::<u64>::unit(&g);
        let (value, witness) = mwis_on_decomposition(&g, &w, &nd).unwrap();
        assert_eq!(value, 3);
        assert!(g.is_independent_set(&witness));
    }

    #[test]
    fn zero_weight_vertices_are_harmless() {
        let g = Graph::path(3);
        let w = WeightMap::<u64>::new(&g, vec![0, 5, 0]).unwrap();
        let (value, witness) = mwis_on_decomposition(&g, &w, &nice_for(&g)).unwrap();
        assert_eq!(value, 5);
        assert!(g.is_independent_set(&witness));
    }

    #[test]
    fn mwis_matches_oracle_on_random_graphs() {
        use crate::oracle::{oracle_mwis, OracleLimit};
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        let limits = OracleLimit::default();
        for _ in 0..30 {
            let n = rng.random_range(1..=16);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.random_bool(0.35) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let vals: Vec<u64> = (0..n).map(|_| rng.random_range(0..=100)).collect();
            let w = WeightMap::new(&g, vals).unwrap();
            let (value, witness) = mwis_on_decomposition(&g, &w, &nice_for(&g)).unwrap();
            let (expected, _) = oracle_mwis(&g, &w, &limits).unwrap();
            assert_eq!(value, expected);
            assert!(g.is_independent_set(&witness));
            assert_eq!(w.sum_over(witness.iter().copied()).unwrap(), value);
        }
    }

    #[test]
    fn scattered_matches_oracle_on_random_graphs() {
        use crate::oracle::{oracle_scattered, OracleLimit};
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(22);
        let limits = OracleLimit::default();
        for case in 0..30 {
            let d = 3 + case % 3;
            let n = rng.random_range(1..=14);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.random_bool(0.3) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let (value, witness) =
                scattered_on_decomposition(&g, &ScatteredParams::new(d).unwrap(), &nice_for(&g))
                    .unwrap();
            let (expected, _) = oracle_scattered(&g, d, &limits).unwrap();
            assert_eq!(value, expected, "d = {d}");
            assert!(g.is_scattered_set(&witness, d));
        }
    }

    #[test]
    fn scattered_value_is_decomposition_independent() {
        use crate::oracle::{certify_free, Pattern};
        use crate::treewidth::decompose_peeled;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for case in 0..15 {
            let k = rng.random_range(2..=3usize);
            let sizes: Vec<usize> = (0..k).map(|_| rng.random_range(2..=4)).collect();
            let g = crate::generators::clique_chain(&sizes).unwrap();
            let t = 2 * k + 1;
            assert!(certify_free(&g, &Pattern::Path(t)).unwrap().is_none());
            let d = 3 + case % 2;
            let params = ScatteredParams::new(d).unwrap();
            let mut values = Vec::new();
            for td in [
                TreeDecomposition::single_bag(&g),
                decompose_bounded_degree(&g, t).unwrap(),
                decompose_peeled(&g, t).unwrap(),
            ] {
                let nd = make_nice(&td).unwrap();
                let (value, witness) = scattered_on_decomposition(&g, &params, &nd).unwrap();
                assert!(g.is_scattered_set(&witness, d));
                values.push(value);
            }
            assert!(
                values.windows(2).all(|w| w[0] == w[1]),
                "values {values:?} diverge"
            );
        }
    }

    #[test]
    fn oversized_bag_is_a_capacity_error() {
        let g = Graph::empty(70);
        let nd = make_nice(&TreeDecomposition::single_bag(&g)).unwrap();
        let w = WeightMap::<u64>::unit(&g);
        assert!(matches!(
            mwis_on_decomposition(&g, &w, &nd),
            Err(crate::error::Error::Capacity { .. })
        ));
    }

    #[test]
    fn empty_graph_dp() {
        let g = Graph::empty(0);
        let w = WeightMap::<u64>::unit(&g);
        let nd = make_nice(&TreeDecomposition {
            n: 0,
            bags: vec![],
            tree_edges: vec![],
        })
        .unwrap();
        let (value, witness) = mwis_on_decomposition(&g, &w, &nd).unwrap();
        assert_eq!(value, 0);
        assert!(witness.is_empty());
    }

    #[test]
    fn scattered_p7_d3() {
        let g = Graph::path(7);
        let (value, witness) =
            scattered_on_decomposition(&g, &ScatteredParams::new(3).unwrap(), &nice_for(&g))
                .unwrap();
        assert_eq!(value, 3);
        assert!(g.is_scattered_set(&witness, 3));
    }

    #[test]
    fn scattered_d2_is_mis() {
        let g = Graph::cycle(5);
        let (value, _) =
            scattered_on_decomposition(&g, &ScatteredParams::new(2).unwrap(), &nice_for(&g))
                .unwrap();
        assert_eq!(value, 2);
    }

    #[test]
    fn scattered_beyond_diameter() {
        let g = Graph::path(4);
        let (value, _) =
            scattered_on_decomposition(&g, &ScatteredParams::new(9).unwrap(), &nice_for(&g))
                .unwrap();
        assert_eq!(value, 1);
    }

    #[test]
    fn scattered_disconnected_counts_components() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let (value, _) =
            scattered_on_decomposition(&g, &ScatteredParams::new(7).unwrap(), &nice_for(&g))
                .unwrap();
        assert_eq!(value, 2);
    }

    #[test]
    fn bit_gap_helpers() {
        assert_eq!(insert_bit_gap(0b101, 1), 0b1001);
        assert_eq!(insert_bit_gap(0b11, 0), 0b110);
        assert_eq!(remove_bit_gap(0b1001, 1), 0b101);
        assert_eq!(remove_bit_gap(0b110, 0), 0b11);
    }

    #[test]
    fn monotone_under_weight_increase() {
        let g = Graph::cycle(6);
        let base = WeightMap::<u64>::new(&g, vec![3, 1, 4, 1, 5, 9]).unwrap();
        let (v0, _) = mwis_on_decomposition(&g, &base, &nice_for(&g)).unwrap();
        for v in 0..6 {
            let mut vals = base.values().to_vec();
            vals[v] += 7;
            let bumped = WeightMap::new(&g, vals).unwrap();
            let (v1, _) = mwis_on_decomposition(&g, &bumped, &nice_for(&g)).unwrap();
            assert!(v1 >= v0);
        }
    }

    #[test]
    fn scattered_monotone_in_d() {
        let g = Graph::cycle(9);
        let nd = nice_for(&g);
        let mut prev = usize::MAX;
        for d in 2..=6 {
            let (value, _) =
                scattered_on_decomposition(&g, &ScatteredParams::new(d).unwrap(), &nd).unwrap();
            assert!(value <= prev);
            prev = value;
        }
    }
}
