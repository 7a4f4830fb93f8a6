//! Brute-force ground-truth solvers and freeness certifiers. These stay
//! deliberately simple: exhaustive subset scans over bit-parallel conflict
//! masks, trusted because there is nothing clever to get wrong.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::pattern::{contains_induced, contains_induced_path};
use crate::weight::{Weight, WeightMap};

/// Size caps for the exhaustive scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimit {
    pub max_n_mis: usize,
    pub max_n_scattered: usize,
}

impl Default for OracleLimit {
    fn default() -> Self {
        OracleLimit {
            max_n_mis: 22,
            max_n_scattered: 16,
        }
    }
}

impl OracleLimit {
    pub fn with_caps(max_n_mis: usize, max_n_scattered: usize) -> Self {
        assert!(max_n_mis > 0 && max_n_scattered > 0);
        OracleLimit {
            max_n_mis,
            max_n_scattered,
        }
    }
}

/// Exact maximum-weight independent set by exhaustive subset scan.
pub fn oracle_mwis<W: Weight>(
    g: &Graph,
    w: &WeightMap<W>,
    limits: &OracleLimit,
) -> Result<(W, VertexSet)> {
    let n = g.num_vertices();
    if n > limits.max_n_mis {
        return Err(Error::Capacity {
            what: "oracle MWIS instance size",
            got: n,
            limit: limits.max_n_mis,
        });
    }
    if w.len() != n {
        return Err(Error::InvalidInput(
            "weight map does not match the graph".into(),
        ));
    }
    let conflict = adjacency_masks(g);
    best_feasible_mask(&conflict, |mask| w.sum_over(mask_vertices(mask)))
}

/// Exact maximum independent set (unit weights).
pub fn oracle_mis(g: &Graph, limits: &OracleLimit) -> Result<(usize, VertexSet)> {
    let unit: WeightMap<usize> = WeightMap::unit(g);
    oracle_mwis(g, &unit, limits)
}

/// Exact maximum d-scattered set: all-pairs BFS once, then the same scan
/// with "within distance d-1" as the conflict relation.
pub fn oracle_scattered(g: &Graph, d: usize, limits: &OracleLimit) -> Result<(usize, VertexSet)> {
    if d < 2 {
        return Err(Error::InvalidInput(format!("d must be >= 2, got {d}")));
    }
    let n = g.num_vertices();
    if n > limits.max_n_scattered {
        return Err(Error::Capacity {
            what: "oracle scattered instance size",
            got: n,
            limit: limits.max_n_scattered,
        });
    }
    let mut conflict = vec![0u64; n];
    for (u, cu) in conflict.iter_mut().enumerate() {
        let dist = g.bfs_distances(u)?;
        for (v, dv) in dist.iter().enumerate() {
            if v != u && dv.is_some_and(|x| x < d) {
                *cu |= 1 << v;
            }
        }
    }
    best_feasible_mask(&conflict, |mask| Ok(mask.count_ones() as usize))
}

fn adjacency_masks(g: &Graph) -> Vec<u64> {
    (0..g.num_vertices())
        .map(|v| {
            let mut mask = 0u64;
            for &u in g.neighbors(v) {
                mask |= 1 << u;
            }
            mask
        })
        .collect()
}

fn mask_vertices(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&v| mask & (1 << v) != 0)
}

/// Scan all subsets in ascending mask order; a subset is feasible when no
/// member conflicts with another. Feasibility extends incrementally from
/// the subset minus its lowest bit. Strict improvement keeps the first
/// maximizer, so results are deterministic.
fn best_feasible_mask<V: PartialOrd + Copy, F: Fn(u64) -> Result<V>>(
    conflict: &[u64],
    value_of: F,
) -> Result<(V, VertexSet)> {
    let n = conflict.len();
    let mut feasible = vec![false; 1usize << n];
    feasible[0] = true;
    let mut best_mask = 0u64;
    let mut best_value = value_of(0)?;
    for mask in 1..(1u64 << n) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let ok = feasible[rest as usize] && conflict[low] & rest == 0;
        feasible[mask as usize] = ok;
        if ok {
            let value = value_of(mask)?;
            if value > best_value {
                best_value = value;
                best_mask = mask;
            }
        }
    }
    Ok((best_value, VertexSet::from_iter(mask_vertices(best_mask))))
}

/// Named pattern graphs for freeness certification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pattern {
    /// Induced path on t vertices.
    Path(usize),
    /// Induced cycle on t >= 3 vertices.
    Cycle(usize),
    /// The star K_{1,3}.
    Claw,
    /// Broom B_{d,t}.
    Broom { d: usize, t: usize },
}

impl Pattern {
    pub fn graph(&self) -> Result<Graph> {
        match *self {
            Pattern::Path(t) => {
                if t == 0 {
                    return Err(Error::InvalidInput("path pattern needs t >= 1".into()));
                }
                Ok(Graph::path(t))
            }
            Pattern::Cycle(t) => {
                if t < 3 {
                    return Err(Error::InvalidInput("cycle pattern needs t >= 3".into()));
                }
                Ok(Graph::cycle(t))
            }
            Pattern::Claw => Ok(Graph::star(3)),
            Pattern::Broom { d, t } => Graph::broom(d, t),
        }
    }
}

impl std::fmt::Display for Pattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Pattern::Path(t) => write!(f, "path:{t}"),
            Pattern::Cycle(t) => write!(f, "cycle:{t}"),
            Pattern::Claw => write!(f, "claw"),
            Pattern::Broom { d, t } => write!(f, "broom:{d},{t}"),
        }
    }
}

/// `Ok(None)` when `g` is pattern-free, otherwise the induced witness: a
/// path sequence for [`Pattern::Path`], an embedding (pattern vertex ->
/// graph vertex) for the rest.
pub fn certify_free(g: &Graph, pattern: &Pattern) -> Result<Option<Vec<usize>>> {
    match *pattern {
        Pattern::Path(t) => {
            if t == 0 {
                return Err(Error::InvalidInput("path pattern needs t >= 1".into()));
            }
            Ok(contains_induced_path(g, t))
        }
        _ => contains_induced(g, &pattern.graph()?),
    }
}
