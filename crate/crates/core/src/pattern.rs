//! Induced-structure detection: induced paths P_t and small induced pattern
//! graphs (claws, brooms, short cycles).

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default cap on pattern size for [`contains_induced`]. The patterns in
/// scope (claw, brooms, short paths and cycles) are tiny.
pub const PATTERN_CAP: usize = 12;

/// Search for an induced path on `t` vertices. Returns the witness vertex
/// sequence if one exists: consecutive pairs adjacent, all other pairs not.
///
/// Pruned DFS over growing induced paths: a path is only extended through
/// neighbors of its last vertex that are non-adjacent to every earlier path
/// vertex, so the work is exponential only in `t`.
pub fn contains_induced_path(g: &Graph, t: usize) -> Option<Vec<usize>> {
    assert!(t >= 1, "path order must be positive");
    if g.num_vertices() < t {
        return None;
    }
    if t == 1 {
        return Some(vec![0]);
    }
    let mut path = Vec::with_capacity(t);
    let mut on_path = vec![false; g.num_vertices()];
    for start in 0..g.num_vertices() {
        path.push(start);
        on_path[start] = true;
        if extend_induced_path(g, t, &mut path, &mut on_path) {
            return Some(path);
        }
        on_path[start] = false;
        path.pop();
    }
    None
}

fn extend_induced_path(g: &Graph, t: usize, path: &mut Vec<usize>, on_path: &mut [bool]) -> bool {
    if path.len() == t {
        return true;
    }
    let last = *path.last().unwrap();
    'next: for &v in g.neighbors(last) {
        if on_path[v] {
            continue;
        }
        // v must be non-adjacent to every path vertex except `last`.
        for &p in path[..path.len() - 1].iter() {
            if g.has_edge(v, p) {
                continue 'next;
            }
        }
        path.push(v);
        on_path[v] = true;
        if extend_induced_path(g, t, path, on_path) {
            return true;
        }
        on_path[v] = false;
        path.pop();
    }
    false
}

/// Whether `g` is P_t-free; the negation of [`contains_induced_path`].
pub fn is_pt_free(g: &Graph, t: usize) -> bool {
    contains_induced_path(g, t).is_none()
}

/// Search for an induced copy of the pattern `h` in `g`. On success returns
/// the embedding as a vector indexed by pattern vertex, giving the image in
/// `g`; the map preserves both adjacency and non-adjacency.
///
/// Backtracking with degree-based ordering; patterns larger than
/// [`PATTERN_CAP`] are refused.
pub fn contains_induced(g: &Graph, h: &Graph) -> Result<Option<Vec<usize>>> {
    let hn = h.num_vertices();
    if hn > PATTERN_CAP {
        return Err(Error::Capacity {
            what: "pattern size",
            got: hn,
            limit: PATTERN_CAP,
        });
    }
    if hn == 0 {
        return Ok(Some(Vec::new()));
    }
    if hn > g.num_vertices() {
        return Ok(None);
    }

    // Place the highest-degree pattern vertex first, then greedily prefer
    // vertices with many already-placed neighbors: candidate filtering gets
    // tight early.
    let order = pattern_order(h);
    let mut image = vec![usize::MAX; hn];
    let mut used = vec![false; g.num_vertices()];
    if place(g, h, &order, 0, &mut image, &mut used) {
        Ok(Some(image))
    } else {
        Ok(None)
    }
}

fn pattern_order(h: &Graph) -> Vec<usize> {
    let hn = h.num_vertices();
    let mut order = Vec::with_capacity(hn);
    let mut placed = vec![false; hn];
    for _ in 0..hn {
        let mut best: Option<(usize, (usize, usize))> = None;
        for x in 0..hn {
            if placed[x] {
                continue;
            }
            let anchored = h.neighbors(x).iter().filter(|&&y| placed[y]).count();
            let key = (anchored, h.degree(x));
            if best.is_none_or(|(_, k)| key > k) {
                best = Some((x, key));
            }
        }
        let (x, _) = best.unwrap();
        placed[x] = true;
        order.push(x);
    }
    order
}

fn place(
    g: &Graph,
    h: &Graph,
    order: &[usize],
    pos: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    if pos == order.len() {
        return true;
    }
    let x = order[pos];
    'cand: for v in 0..g.num_vertices() {
        if used[v] || g.degree(v) < h.degree(x) {
            continue;
        }
        for &y in &order[..pos] {
            let w = image[y];
            if h.has_edge(x, y) != g.has_edge(v, w) {
                continue 'cand;
            }
        }
        image[x] = v;
        used[v] = true;
        if place(g, h, order, pos + 1, image, used) {
            return true;
        }
        used[v] = false;
        image[x] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p5_contains_itself() {
        let g = Graph::path(5);
        let w = contains_induced_path(&g, 5).unwrap();
        assert_eq!(w.len(), 5);
        assert_induced_path(&g, &w);
    }

    #[test]
    fn c5_has_no_induced_p5() {
        let g = Graph::cycle(5);
        assert!(contains_induced_path(&g, 5).is_none());
        assert!(contains_induced_path(&g, 4).is_some());
    }

    #[test]
    fn clique_has_no_p3() {
        for n in 3..6 {
            assert!(contains_induced_path(&Graph::complete(n), 3).is_none());
        }
    }

    #[test]
    fn claw_finds_itself() {
        let claw = Graph::star(3);
        let emb = contains_induced(&claw, &Graph::star(3)).unwrap();
        assert!(emb.is_some());
    }

    #[test]
    fn k4_is_claw_free() {
        let g = Graph::complete(4);
        assert!(contains_induced(&g, &Graph::star(3)).unwrap().is_none());
    }

    #[test]
    fn pattern_cap_enforced() {
        let g = Graph::complete(14);
        let h = Graph::empty(13);
        assert!(matches!(
            contains_induced(&g, &h),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn embedding_preserves_structure() {
        // C_6 contains an induced P_4 but no induced C_4.
        let g = Graph::cycle(6);
        let p4 = Graph::path(4);
        let emb = contains_induced(&g, &p4).unwrap().unwrap();
        for x in 0..4 {
            for y in (x + 1)..4 {
                assert_eq!(p4.has_edge(x, y), g.has_edge(emb[x], emb[y]));
            }
        }
        assert!(contains_induced(&g, &Graph::cycle(4)).unwrap().is_none());
    }

    fn assert_induced_path(g: &Graph, w: &[usize]) {
        for i in 0..w.len() {
            for j in (i + 1)..w.len() {
                assert_eq!(g.has_edge(w[i], w[j]), j == i + 1, "pair {i},{j}");
            }
        }
    }

    #[test]
    fn broom_has_p_t_plus_1_but_not_t_plus_2() {
        for (d, t) in [(2, 3), (3, 4), (2, 2)] {
            let b = Graph::broom(d, t).unwrap();
            assert!(contains_induced_path(&b, t + 1).is_some());
            assert!(contains_induced_path(&b, t + 2).is_none());
        }
    }

    proptest::proptest! {
        // Specialized path search agrees with the generic embedding search.
        #[test]
        fn path_detection_cross_validation(edges in proptest::collection::vec((0usize..9, 0usize..9), 0..18), t in 2usize..6) {
            let pairs: Vec<(usize, usize)> = edges.into_iter().filter(|(u, v)| u != v).collect();
            let g = Graph::from_edges(9, &pairs).unwrap();
            let specialized = contains_induced_path(&g, t).is_some();
            let generic = contains_induced(&g, &Graph::path(t)).unwrap().is_some();
            proptest::prop_assert_eq!(specialized, generic);
        }
    }
}
