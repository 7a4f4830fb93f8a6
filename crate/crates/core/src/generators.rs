//! Instance generators: the reduction constructions with machine-checkable
//! structural promises and α-identities, plus samplers for free classes.
//!
//! Labeling convention throughout: original vertices keep their indices,
//! new vertices follow in edge-index (or vertex-index) order, so witnesses
//! stay readable and runs reproduce exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::{certify_free, Pattern};

/// A testable identity attached to a generated instance:
/// α_d(g') = α(g) + offset, with d = 2 meaning the plain independence
/// number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReductionPromise {
    /// Distance parameter of the left-hand side.
    pub scattered_d: usize,
    /// Additive offset applied to α of the source graph.
    pub offset: usize,
    pub source_n: usize,
    pub source_m: usize,
}

impl ReductionPromise {
    /// The promised α_d of the generated graph, given α of the source.
    pub fn expected_value(&self, source_alpha: usize) -> usize {
        source_alpha + self.offset
    }
}

fn require_subcubic(g: &Graph) -> Result<()> {
    if g.max_degree() > 3 {
        return Err(Error::InvalidInput(format!(
            "source graph must have max degree 3, found {}",
            g.max_degree()
        )));
    }
    Ok(())
}

/// P_5-free instance with α_3(g') = α(g), for subcubic sources without
/// isolated vertices. One vertex per source vertex, one per source edge;
/// edge-vertices form a clique and attach to their two endpoints.
pub fn gen_p5free_scattered3(g: &Graph) -> Result<(Graph, ReductionPromise)> {
    require_subcubic(g)?;
    if (0..g.num_vertices()).any(|v| g.degree(v) == 0) {
        return Err(Error::InvalidInput(
            "source graph must have no isolated vertices".into(),
        ));
    }
    let n = g.num_vertices();
    let edges_of_g = g.edges();
    let m = edges_of_g.len();
    let mut edges = Vec::new();
    for (i, &(u, v)) in edges_of_g.iter().enumerate() {
        edges.push((n + i, u));
        edges.push((n + i, v));
        for j in (i + 1)..m {
            edges.push((n + i, n + j));
        }
    }
    let gp = Graph::from_edges(n + m, &edges)?;
    Ok((
        gp,
        ReductionPromise {
            scattered_d: 3,
            offset: 0,
            source_n: n,
            source_m: m,
        },
    ))
}

/// Line graph of `g`, plus the edge list indexing its vertices: vertex i of
/// the result is edge i of `g`, adjacency is sharing an endpoint. Line
/// graphs are claw-free.
pub fn line_graph(g: &Graph) -> (Graph, Vec<(usize, usize)>) {
    let edges_of_g = g.edges();
    let m = edges_of_g.len();
    let mut edges = Vec::new();
    for i in 0..m {
        let (a, b) = edges_of_g[i];
        for (j, &(c, d)) in edges_of_g.iter().enumerate().skip(i + 1) {
            if a == c || a == d || b == c || b == d {
                edges.push((i, j));
            }
        }
    }
    let lg = Graph::from_edges(m, &edges).expect("line graph construction");
    (lg, edges_of_g)
}

/// Subdivide every edge of `g` with `per_edge` internal vertices. New
/// vertices are numbered n + e*per_edge + j, in order along the path from
/// the smaller endpoint of edge e.
pub fn subdivide(g: &Graph, per_edge: usize) -> Graph {
    let n = g.num_vertices();
    let edges_of_g = g.edges();
    if per_edge == 0 {
        return g.clone();
    }
    let mut edges = Vec::new();
    for (e, &(u, v)) in edges_of_g.iter().enumerate() {
        let base = n + e * per_edge;
        edges.push((u, base));
        for j in 1..per_edge {
            edges.push((base + j - 1, base + j));
        }
        edges.push((base + per_edge - 1, v));
    }
    Graph::from_edges(n + edges_of_g.len() * per_edge, &edges).expect("subdivision")
}

/// Claw-free instance with α_d(g') = α(g) for subcubic sources and d >= 3.
///
/// Odd d: attach a path of (d-1)/2 edges to every vertex and take the line
/// graph. Even d: subdivide every edge once first and attach paths of
/// d/2 - 1 edges to the original vertices. The result has max degree 6.
pub fn gen_clawfree_scattered(g: &Graph, d: usize) -> Result<(Graph, ReductionPromise)> {
    require_subcubic(g)?;
    if d < 3 {
        return Err(Error::InvalidInput(format!("d must be >= 3, got {d}")));
    }
    let n = g.num_vertices();
    let m = g.num_edges();
    let g_plus = if d % 2 == 1 {
        let ell = (d - 1) / 2;
        attach_tails(g, ell)
    } else {
        let ell = d / 2 - 1;
        let subdivided = subdivide(g, 1);
        attach_tails_to_first(&subdivided, n, ell)
    };
    let (gp, _) = line_graph(&g_plus);
    debug_assert!(gp.max_degree() <= 6);
    Ok((
        gp,
        ReductionPromise {
            scattered_d: d,
            offset: 0,
            source_n: n,
            source_m: m,
        },
    ))
}

/// Attach a path of `ell` edges to every vertex of `g`; tails for vertex v
/// occupy indices n + v*ell .. n + (v+1)*ell - 1 outward.
fn attach_tails(g: &Graph, ell: usize) -> Graph {
    attach_tails_to_first(g, g.num_vertices(), ell)
}

/// Attach a path of `ell` edges to each of the first `count` vertices.
fn attach_tails_to_first(g: &Graph, count: usize, ell: usize) -> Graph {
    if ell == 0 {
        return g.clone();
    }
    let n = g.num_vertices();
    let mut edges = g.edges();
    for v in 0..count {
        let base = n + v * ell;
        edges.push((v, base));
        for j in 1..ell {
            edges.push((base + j - 1, base + j));
        }
    }
    Graph::from_edges(n + count * ell, &edges).expect("tail attachment")
}

/// Subdivision instance: α(g') = α(g) + gsub·m after subdividing each edge
/// with 2·gsub vertices; the girth grows by the factor 2·gsub + 1.
pub fn gen_subdivision(g: &Graph, gsub: usize) -> Result<(Graph, ReductionPromise)> {
    if gsub == 0 {
        return Err(Error::InvalidInput("gsub must be >= 1".into()));
    }
    let m = g.num_edges();
    let gp = subdivide(g, 2 * gsub);
    Ok((
        gp,
        ReductionPromise {
            scattered_d: 2,
            offset: gsub * m,
            source_n: g.num_vertices(),
            source_m: m,
        },
    ))
}

/// C_t-free instance with α_d(g') = α(g) + m(d-2), for subcubic sources of
/// girth above t: subdivide each edge with d-2 vertices, then hang a path of
/// d-1 edges on every subdivision vertex. Max degree stays 3 and the girth
/// multiplies by d-1. Degenerate at d = 2: the graph is returned unchanged.
pub fn gen_ctfree_scattered(g: &Graph, d: usize, t: usize) -> Result<(Graph, ReductionPromise)> {
    require_subcubic(g)?;
    if d < 2 {
        return Err(Error::InvalidInput(format!("d must be >= 2, got {d}")));
    }
    if t < 3 {
        return Err(Error::InvalidInput(format!("t must be >= 3, got {t}")));
    }
    if let Some(girth) = g.girth() {
        if girth <= t {
            return Err(Error::InvalidInput(format!(
                "source girth {girth} must exceed t = {t}"
            )));
        }
    }
    let n = g.num_vertices();
    let m = g.num_edges();
    if d == 2 {
        return Ok((
            g.clone(),
            ReductionPromise {
                scattered_d: 2,
                offset: 0,
                source_n: n,
                source_m: m,
            },
        ));
    }
    let subdivided = subdivide(g, d - 2);
    // Subdivision vertices are n .. n + m(d-2) - 1; every one of them gets a
    // tail of d-1 edges.
    let total_sub = m * (d - 2);
    let mut edges = subdivided.edges();
    let base0 = subdivided.num_vertices();
    for (i, v) in (n..n + total_sub).enumerate() {
        let base = base0 + i * (d - 1);
        edges.push((v, base));
        for j in 1..(d - 1) {
            edges.push((base + j - 1, base + j));
        }
    }
    let gp = Graph::from_edges(base0 + total_sub * (d - 1), &edges)?;
    debug_assert!(gp.max_degree() <= 3);
    Ok((
        gp,
        ReductionPromise {
            scattered_d: d,
            offset: m * (d - 2),
            source_n: n,
            source_m: m,
        },
    ))
}

/// Rejection budget for [`sample_free_graph`].
const SAMPLE_BUDGET: usize = 400;

/// Random pattern-free graph: draw G(n, edge_prob) seeded by `seed`, reject
/// until the certifier confirms freeness. Deterministic in the seed.
pub fn sample_free_graph(n: usize, pattern: &Pattern, edge_prob: f64, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be >= 1".into()));
    }
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(Error::InvalidInput(format!(
            "edge_prob {edge_prob} out of [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLE_BUDGET {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.random_bool(edge_prob) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, &edges)?;
        if certify_free(&g, pattern)?.is_none() {
            return Ok(g);
        }
    }
    Err(Error::Sampling(format!(
        "no {pattern}-free sample within {SAMPLE_BUDGET} draws at n={n}, p={edge_prob}; lower edge_prob"
    )))
}

/// Chain of cliques linked by single edges: clique i spans consecutive
/// indices, the last vertex of clique i touches the first of clique i+1.
/// With k cliques the longest induced path has 2k vertices, so chains make
/// rich P_{2k+1}-free families.
pub fn clique_chain(sizes: &[usize]) -> Result<Graph> {
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(Error::InvalidInput("clique sizes must be positive".into()));
    }
    let n: usize = sizes.iter().sum();
    let mut edges = Vec::new();
    let mut base = 0;
    let mut prev_last: Option<usize> = None;
    for &s in sizes {
        for u in 0..s {
            for v in (u + 1)..s {
                edges.push((base + u, base + v));
            }
        }
        if let Some(p) = prev_last {
            edges.push((p, base));
        }
        prev_last = Some(base + s - 1);
        base += s;
    }
    Graph::from_edges(n, &edges)
}

/// Cliques sharing a single apex vertex (index 0); P_4-free and connected.
pub fn windmill(blades: usize, blade_size: usize) -> Result<Graph> {
    if blades == 0 || blade_size == 0 {
        return Err(Error::InvalidInput(
            "windmill needs positive blade count and size".into(),
        ));
    }
    let mut edges = Vec::new();
    let mut base = 1;
    for _ in 0..blades {
        for u in 0..blade_size {
            edges.push((0, base + u));
            for v in (u + 1)..blade_size {
                edges.push((base + u, base + v));
            }
        }
        base += blade_size;
    }
    Graph::from_edges(1 + blades * blade_size, &edges)
}

/// Random connected subcubic graph: a random tree with degree cap 3 plus a
/// few extra degree-respecting edges. Source material for the reductions.
pub fn sample_subcubic_connected(n: usize, extra_edges: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'retry: for _ in 0..SAMPLE_BUDGET {
        let mut degree = vec![0usize; n];
        let mut edges = Vec::new();
        for v in 1..n {
            let candidates: Vec<usize> = (0..v).filter(|&u| degree[u] < 3).collect();
            if candidates.is_empty() {
                continue 'retry;
            }
            let u = candidates[rng.random_range(0..candidates.len())];
            edges.push((u, v));
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut added = 0;
        let mut tries = 0;
        while added < extra_edges && tries < 50 {
            tries += 1;
            if n < 2 {
                break;
            }
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u == v || degree[u] >= 3 || degree[v] >= 3 {
                continue;
            }
            let (a, b) = (u.min(v), u.max(v));
            if edges.contains(&(a, b)) {
                continue;
            }
            edges.push((a, b));
            degree[a] += 1;
            degree[b] += 1;
            added += 1;
        }
        return Graph::from_edges(n, &edges);
    }
    Err(Error::Sampling(
        "subcubic sampler exhausted its budget".into(),
    ))
}
