//! Tree decompositions of P_t-free graphs: a validator, the bounded-degree
//! builder (width at most 4(t-1)Δ + 4), and the degree-peeling builder
//! (width O(t√m)).

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::separator::gyarfas_separator;
use crate::weight::WeightMap;

/// Tree of bags over vertex subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    /// Number of vertices of the decomposed graph.
    pub n: usize,
    pub bags: Vec<VertexSet>,
    /// Unordered bag-index pairs forming a tree.
    pub tree_edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Single bag holding every vertex; valid for any graph.
    pub fn single_bag(g: &Graph) -> Self {
        TreeDecomposition {
            n: g.num_vertices(),
            bags: vec![VertexSet::from_iter(0..g.num_vertices())],
            tree_edges: Vec::new(),
        }
    }

    pub fn max_bag_size(&self) -> usize {
        self.bags.iter().map(VertexSet::len).max().unwrap_or(0)
    }

    /// Width = max bag size - 1 (0 for the empty decomposition).
    pub fn width(&self) -> usize {
        self.max_bag_size().saturating_sub(1)
    }

    /// Tree adjacency over bag indices.
    pub(crate) fn bag_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.tree_edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }
}

/// First violated tree-decomposition axiom, in checking order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TdViolation {
    /// A bag mentions a vertex outside 0..n-1.
    BagOutOfRange { bag: usize, vertex: usize },
    /// Tree edges do not form a tree over the bags.
    NotATree(String),
    /// (T1) some vertex is in no bag.
    VertexNotCovered(usize),
    /// (T2) some edge has no bag containing both endpoints.
    EdgeNotCovered(usize, usize),
    /// (T3) the bags containing some vertex are not connected in the tree.
    BagsNotConnected(usize),
}

impl std::fmt::Display for TdViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TdViolation::BagOutOfRange { bag, vertex } => {
                write!(f, "bag {bag} mentions out-of-range vertex {vertex}")
            }
            TdViolation::NotATree(why) => write!(f, "bag graph is not a tree: {why}"),
            TdViolation::VertexNotCovered(v) => write!(f, "vertex {v} is in no bag"),
            TdViolation::EdgeNotCovered(u, v) => write!(f, "edge {{{u},{v}}} is in no bag"),
            TdViolation::BagsNotConnected(v) => {
                write!(f, "bags containing vertex {v} are not connected")
            }
        }
    }
}

/// Check the tree property and axioms (T1), (T2), (T3); `Err` carries the
/// first violation found.
pub fn validate_decomposition(
    g: &Graph,
    td: &TreeDecomposition,
) -> std::result::Result<(), TdViolation> {
    let n = g.num_vertices();
    let b = td.bags.len();

    for (i, bag) in td.bags.iter().enumerate() {
        for &v in bag.iter() {
            if v >= n {
                return Err(TdViolation::BagOutOfRange { bag: i, vertex: v });
            }
        }
    }

    // Tree over bag indices: the empty decomposition is admitted only for
    // the empty graph.
    if b == 0 {
        if n == 0 {
            return Ok(());
        }
        return Err(TdViolation::VertexNotCovered(0));
    }
    if td.tree_edges.len() != b - 1 {
        return Err(TdViolation::NotATree(format!(
            "{} bags need {} tree edges, found {}",
            b,
            b - 1,
            td.tree_edges.len()
        )));
    }
    for &(x, y) in &td.tree_edges {
        if x >= b || y >= b {
            return Err(TdViolation::NotATree(format!(
                "tree edge ({x},{y}) out of range"
            )));
        }
        if x == y {
            return Err(TdViolation::NotATree(format!("self-loop at bag {x}")));
        }
    }
    let adj = td.bag_adjacency();
    let mut seen = vec![false; b];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut reached = 0;
    while let Some(x) = stack.pop() {
        reached += 1;
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    if reached != b {
        return Err(TdViolation::NotATree("bag graph disconnected".into()));
    }

    // (T1)
    let mut covered = vec![false; n];
    for bag in &td.bags {
        for &v in bag.iter() {
            covered[v] = true;
        }
    }
    if let Some(v) = covered.iter().position(|&c| !c) {
        return Err(TdViolation::VertexNotCovered(v));
    }

    // (T2)
    for (u, v) in g.edges() {
        if !td.bags.iter().any(|bag| bag.contains(u) && bag.contains(v)) {
            return Err(TdViolation::EdgeNotCovered(u, v));
        }
    }

    // (T3): BFS within the bags containing each vertex.
    for v in 0..n {
        let holding: Vec<usize> = (0..b).filter(|&i| td.bags[i].contains(v)).collect();
        let mut seen = vec![false; b];
        let start = holding[0];
        seen[start] = true;
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] && td.bags[y].contains(v) {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        if count != holding.len() {
            return Err(TdViolation::BagsNotConnected(v));
        }
    }

    Ok(())
}

/// Tree decomposition of a P_t-free graph of width at most 4k + 4 where
/// k = (t-1)·Δ(g).
///
/// The recursion maintains a connected region `W` with boundary `S` (at most
/// 3k+4 vertices, exactly the outside neighborhood of `W \ S`). While the
/// boundary is small it grows by one arbitrary vertex; once it reaches 3k+4
/// the balanced separator of the 0/1-weighted region splits it. A surfaced
/// induced P_t aborts the construction and is reported with its witness.
pub fn decompose_bounded_degree(g: &Graph, t: usize) -> Result<TreeDecomposition> {
    if t < 2 {
        return Err(Error::InvalidInput(format!("t must be >= 2, got {t}")));
    }
    let n = g.num_vertices();
    if n == 0 {
        return Ok(TreeDecomposition {
            n: 0,
            bags: Vec::new(),
            tree_edges: Vec::new(),
        });
    }
    let delta = g.max_degree();
    let k = (t - 1) * delta;

    let mut builder = Builder {
        g,
        t,
        delta,
        k,
        bags: Vec::new(),
        tree_edges: Vec::new(),
    };
    let mut component_roots = Vec::new();
    for comp in g.connected_components() {
        let root = builder.decompose(comp, VertexSet::new())?;
        component_roots.push(root);
    }
    // Disconnected inputs: chain the component roots arbitrarily.
    for pair in component_roots.windows(2) {
        builder.tree_edges.push((pair[0], pair[1]));
    }
    let td = TreeDecomposition {
        n,
        bags: builder.bags,
        tree_edges: builder.tree_edges,
    };
    debug_assert!(td.width() <= 4 * k + 4);
    Ok(td)
}

struct Builder<'a> {
    g: &'a Graph,
    t: usize,
    delta: usize,
    k: usize,
    bags: Vec<VertexSet>,
    tree_edges: Vec<(usize, usize)>,
}

impl Builder<'_> {
    fn push_bag(&mut self, bag: VertexSet) -> usize {
        self.bags.push(bag);
        self.bags.len() - 1
    }

    /// Decompose the region `w` with boundary `s`; returns the root bag
    /// index. Invariants: s ⊆ w, |s| <= 3k+4, w \ s nonempty, G[w] and
    /// G[w \ s] connected, s = N(w \ s).
    fn decompose(&mut self, w: VertexSet, s: VertexSet) -> Result<usize> {
        debug_assert!(!w.difference(&s).is_empty());
        debug_assert!(s.len() <= 3 * self.k + 4);

        if w.len() <= 4 * self.k + 5 {
            return Ok(self.push_bag(w));
        }

        let s_hat = if s.len() < 3 * self.k + 4 {
            // Extend the boundary by the lowest-index interior vertex.
            let v = *w.difference(&s).iter().next().unwrap();
            let mut grown = s.clone();
            grown.insert(v);
            grown
        } else {
            // Balanced 0/1 separator of the region, weight 1 on s.
            let (sub, map) = self.g.induced_subgraph(&w)?;
            let weights: Vec<u64> = (0..sub.num_vertices())
                .map(|v| u64::from(s.contains(map.to_host(v))))
                .collect();
            let wmap = WeightMap::new(&sub, weights)?;
            let sep =
                gyarfas_separator(&sub, 0, &wmap, self.t, self.delta).map_err(|e| match e {
                    Error::NotPtFree { witness } => Error::NotPtFree {
                        witness: map.lift_seq(&witness),
                    },
                    other => other,
                })?;
            let x = map.lift_set(&sep.x);
            let grown = s.union(&x);
            // The separator cannot sit entirely inside s, otherwise some
            // component of the connected interior would keep more than
            // (3k/2+2) + (k+1) boundary vertices.
            assert!(
                grown.len() > s.len(),
                "separator failed to grow the boundary"
            );
            grown
        };

        let root = self.push_bag(s_hat.clone());
        let remainder = w.difference(&s_hat);
        for comp in components_within(self.g, &remainder) {
            let boundary = self.g.open_neighborhood(&comp);
            debug_assert!(boundary.iter().all(|&v| s_hat.contains(v)));
            debug_assert!(boundary.len() <= 3 * self.k + 4);
            let child_w = comp.union(&boundary);
            let child = self.decompose(child_w, boundary)?;
            self.tree_edges.push((root, child));
        }
        Ok(root)
    }
}

/// Connected components of the subgraph induced by `allowed`, as host-index
/// vertex sets ordered by smallest member.
pub(crate) fn components_within(g: &Graph, allowed: &VertexSet) -> Vec<VertexSet> {
    let mut inside = vec![false; g.num_vertices()];
    for &v in allowed.iter() {
        inside[v] = true;
    }
    let mut seen = vec![false; g.num_vertices()];
    let mut comps = Vec::new();
    for &start in allowed.iter() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &v in g.neighbors(u) {
                if inside[v] && !seen[v] {
                    seen[v] = true;
                    comp.push(v);
                    stack.push(v);
                }
            }
        }
        comp.sort_unstable();
        comps.push(VertexSet::from_sorted(comp));
    }
    comps
}

/// Tree decomposition of width O(t√m): peel off the vertices of degree at
/// least ⌈√m⌉ (at most 2√m of them), decompose the bounded-degree remainder,
/// and put the peeled set into every bag.
pub fn decompose_peeled(g: &Graph, t: usize) -> Result<TreeDecomposition> {
    if t < 2 {
        return Err(Error::InvalidInput(format!("t must be >= 2, got {t}")));
    }
    let n = g.num_vertices();
    if n == 0 {
        return Ok(TreeDecomposition {
            n: 0,
            bags: Vec::new(),
            tree_edges: Vec::new(),
        });
    }
    let m = g.num_edges();
    let threshold = ceil_sqrt(m).max(1);
    let x = VertexSet::from_iter((0..n).filter(|&v| g.degree(v) >= threshold));
    debug_assert!(threshold * x.len() <= 2 * m || m == 0);

    let (rest, map) = g.remove_vertices(&x)?;
    if rest.num_vertices() == 0 {
        return Ok(TreeDecomposition {
            n,
            bags: vec![x],
            tree_edges: Vec::new(),
        });
    }
    let inner = decompose_bounded_degree(&rest, t).map_err(|e| match e {
        Error::NotPtFree { witness } => Error::NotPtFree {
            witness: map.lift_seq(&witness),
        },
        other => other,
    })?;
    let bags = inner
        .bags
        .iter()
        .map(|bag| map.lift_set(bag).union(&x))
        .collect();
    Ok(TreeDecomposition {
        n,
        bags,
        tree_edges: inner.tree_edges,
    })
}

/// Smallest s with s*s >= m.
fn ceil_sqrt(m: usize) -> usize {
    let r = m.isqrt();
    if r * r == m {
        r
    } else {
        r + 1
    }
}
