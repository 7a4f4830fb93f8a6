//! Weighted balanced separators via the path-growing argument.
//!
//! In a connected graph with maximum degree at most `delta` and no induced
//! path on `t` vertices starting at a distinguished root, growing an induced
//! path whose closed neighborhood is repeatedly removed yields a separator
//! `X` of at most `(t-1)*delta + 1` vertices such that no component of
//! `G - X` holds more than half the total weight.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::weight::{twice_gt, Weight, WeightMap};

/// Output of [`gyarfas_separator`].
#[derive(Debug, Clone)]
pub struct SeparatorResult<W: Weight> {
    /// The separator, `|x| <= (t-1)*delta + 1`.
    pub x: VertexSet,
    /// Components of `G - x`, each with its weight sum; every weight is at
    /// most half the total.
    pub components: Vec<(VertexSet, W)>,
    /// The induced path v_0..v_i grown by the construction.
    pub grown_path: Vec<usize>,
}

/// Grow an induced path from `v0`, removing closed neighborhoods, until no
/// component of the remainder weighs more than `w(V)/2`.
///
/// The caller promises `g` contains no induced path on `t` vertices with one
/// endpoint at `v0`; a violation is detected at runtime and reported as
/// [`Error::NotPtFree`] with the grown path as witness, which doubles as a
/// refutation of P_t-freeness.
pub fn gyarfas_separator<W: Weight>(
    g: &Graph,
    v0: usize,
    w: &WeightMap<W>,
    t: usize,
    delta: usize,
) -> Result<SeparatorResult<W>> {
    if v0 >= g.num_vertices() {
        return Err(Error::InvalidVertex {
            vertex: v0,
            n: g.num_vertices(),
        });
    }
    if t < 2 {
        return Err(Error::InvalidInput(format!("t must be >= 2, got {t}")));
    }
    if w.len() != g.num_vertices() {
        return Err(Error::InvalidInput(
            "weight map does not match the graph".into(),
        ));
    }
    if g.max_degree() > delta {
        return Err(Error::InvalidInput(format!(
            "max degree {} exceeds the supplied bound {delta}",
            g.max_degree()
        )));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }

    let total = w.total()?;
    let mut path = vec![v0];

    // A component is big if 2*w(C) > w(V); at most one can exist.
    // If G - {v0} has no big component we can stop before growing at all.
    let a0 = VertexSet::singleton(v0);
    let comps = weighted_components(g, &a0, w)?;
    let mut big = pick_big(&comps, total)?;
    if big.is_none() {
        return Ok(SeparatorResult {
            x: a0,
            components: comps,
            grown_path: path,
        });
    }
    let mut b_current: VertexSet = comps[big.unwrap()].0.clone();

    loop {
        // A_{i+1} = N[v_0 .. v_i].
        let a = g.closed_neighborhood(&path);
        let comps = weighted_components(g, &a, w)?;
        big = pick_big(&comps, total)?;
        let Some(big_idx) = big else {
            debug_assert!(a.len() <= (t - 1) * delta + 1);
            return Ok(SeparatorResult {
                x: a,
                components: comps,
                grown_path: path,
            });
        };
        let b_next = comps[big_idx].0.clone();

        // v_{i+1} in B_i ∩ N(B_{i+1}) ∩ N(v_i), lowest index. The big
        // component of G - A_{i+1} sits inside B_i minus N(v_i), so a
        // boundary vertex of it inside B_i is automatically a neighbor
        // of v_i.
        let vi = *path.last().unwrap();
        let next = g
            .neighbors(vi)
            .iter()
            .copied()
            .filter(|&u| b_current.contains(u))
            .find(|&u| g.neighbors(u).iter().any(|&z| b_next.contains(z)))
            .expect("growth step exists while a big component remains");
        path.push(next);
        if path.len() == t {
            return Err(Error::NotPtFree { witness: path });
        }
        b_current = b_next;
    }
}

/// Connected components of `G - removed` with their weight sums, ordered by
/// smallest member.
fn weighted_components<W: Weight>(
    g: &Graph,
    removed: &VertexSet,
    w: &WeightMap<W>,
) -> Result<Vec<(VertexSet, W)>> {
    let keep: Vec<usize> = (0..g.num_vertices())
        .filter(|&v| !removed.contains(v))
        .collect();
    let (sub, map) = g.induced_subgraph(&VertexSet::from_sorted(keep))?;
    sub.connected_components()
        .into_iter()
        .map(|c| {
            let lifted = map.lift_set(&c);
            let weight = w.sum_over(lifted.iter().copied())?;
            Ok((lifted, weight))
        })
        .collect()
}

/// Index of the big component, if any; at most one can exist.
fn pick_big<W: Weight>(comps: &[(VertexSet, W)], total: W) -> Result<Option<usize>> {
    let mut big = None;
    for (i, (_, cw)) in comps.iter().enumerate() {
        if twice_gt(*cw, total)? {
            assert!(big.is_none(), "two big components cannot coexist");
            big = Some(i);
        }
    }
    Ok(big)
}
