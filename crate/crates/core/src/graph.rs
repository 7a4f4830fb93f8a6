//! Simple undirected graphs over dense 0-based vertex indices.
//!
//! Graphs are immutable after construction; deletion-style operations return
//! a new graph together with an index mapping, which keeps rollback in the
//! branching solvers trivial.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Undirected simple graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            m: 0,
            adj: vec![Vec::new(); n],
        }
    }

    /// Build from an edge list. Self-loops are rejected; duplicate edges are
    /// collapsed.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::InvalidVertex { vertex: u, n });
            }
            if v >= n {
                return Err(Error::InvalidVertex { vertex: v, n });
            }
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut m = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        Ok(Graph { n, m: m / 2, adj })
    }

    /// Path on `n` vertices: 0 - 1 - ... - n-1.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path construction")
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges).expect("cycle construction")
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).expect("complete construction")
    }

    /// Star with `k` leaves; vertex 0 is the center.
    pub fn star(k: usize) -> Self {
        let edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
        Graph::from_edges(k + 1, &edges).expect("star construction")
    }

    /// Broom B_{d,t}: an induced path on `t` vertices (indices 0..t-1 in path
    /// order) plus `d` pendant vertices (indices t..t+d-1), all adjacent to
    /// the path endpoint t-1.
    pub fn broom(d: usize, t: usize) -> Result<Self> {
        if d < 2 || t < 2 {
            return Err(Error::InvalidInput(format!(
                "broom requires d >= 2 and t >= 2, got d={d}, t={t}"
            )));
        }
        let mut edges: Vec<_> = (1..t).map(|i| (i - 1, i)).collect();
        for p in 0..d {
            edges.push((t - 1, t + p));
        }
        Graph::from_edges(t + d, &edges)
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        0..self.n
    }

    /// Edges as (u, v) pairs with u < v, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::InvalidVertex {
                vertex: v,
                n: self.n,
            });
        }
        Ok(())
    }

    /// BFS edge distances from `source`; `None` marks unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Result<Vec<Option<usize>>> {
        self.check_vertex(source)?;
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        Ok(dist)
    }

    /// Shortest-path distance between two vertices, if connected.
    pub fn distance(&self, u: usize, v: usize) -> Result<Option<usize>> {
        self.check_vertex(v)?;
        Ok(self.bfs_distances(u)?[v])
    }

    /// Connected components as sorted vertex sets, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([s]);
            seen[s] = true;
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(VertexSet::from_sorted(comp));
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.connected_components().len() == 1
    }

    /// Subgraph induced by `s`, plus the mapping between old and new indices.
    /// New indices follow the sorted order of `s`.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(Graph, SubgraphMap)> {
        for &v in s.iter() {
            self.check_vertex(v)?;
        }
        let old_of_new: Vec<usize> = s.iter().copied().collect();
        let mut new_of_old = vec![None; self.n];
        for (new, &old) in old_of_new.iter().enumerate() {
            new_of_old[old] = Some(new);
        }
        let mut adj = vec![Vec::new(); old_of_new.len()];
        let mut m = 0;
        for (new, &old) in old_of_new.iter().enumerate() {
            for &w in &self.adj[old] {
                if let Some(nw) = new_of_old[w] {
                    adj[new].push(nw);
                }
            }
            adj[new].sort_unstable();
            m += adj[new].len();
        }
        let g = Graph {
            n: old_of_new.len(),
            m: m / 2,
            adj,
        };
        Ok((
            g,
            SubgraphMap {
                old_of_new,
                new_of_old,
            },
        ))
    }

    /// `G - drop`: the subgraph induced by the complement of `drop`.
    pub fn remove_vertices(&self, drop: &VertexSet) -> Result<(Graph, SubgraphMap)> {
        let keep: Vec<usize> = (0..self.n).filter(|v| !drop.contains(*v)).collect();
        self.induced_subgraph(&VertexSet::from_sorted(keep))
    }

    /// Closed neighborhood N[vs] as a sorted set.
    pub fn closed_neighborhood(&self, vs: &[usize]) -> VertexSet {
        let mut out: Vec<usize> = vs.to_vec();
        for &v in vs {
            out.extend_from_slice(&self.adj[v]);
        }
        out.sort_unstable();
        out.dedup();
        VertexSet::from_sorted(out)
    }

    /// Open neighborhood N(vs): closed neighborhood minus the set itself.
    pub fn open_neighborhood(&self, vs: &VertexSet) -> VertexSet {
        let closed = self.closed_neighborhood(vs.as_slice());
        VertexSet::from_sorted(
            closed
                .iter()
                .copied()
                .filter(|v| !vs.contains(*v))
                .collect(),
        )
    }

    /// Girth: length of a shortest cycle, `None` for forests. BFS from every
    /// vertex; fine at generation-time scales.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        // Non-tree edge closes a cycle through s of length
                        // dist[u] + dist[v] + 1 (an upper bound attained for
                        // some start vertex s on a shortest cycle).
                        let len = dist[u] + dist[v] + 1;
                        if best.is_none_or(|b| len < b) {
                            best = Some(len);
                        }
                    }
                }
            }
        }
        best
    }

    /// The power graph G^k: same vertices, edges between distinct vertices at
    /// distance <= k in G. G^1 == G.
    pub fn power(&self, k: usize) -> Graph {
        assert!(k >= 1, "power exponent must be >= 1");
        let mut edges = Vec::new();
        for u in 0..self.n {
            let dist = self.bfs_distances(u).expect("valid source");
            for (v, dv) in dist.iter().enumerate().skip(u + 1) {
                if dv.is_some_and(|d| d <= k) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(self.n, &edges).expect("power construction")
    }

    /// Whether `set` is pairwise non-adjacent.
    pub fn is_independent_set(&self, set: &VertexSet) -> bool {
        let vs = set.as_slice();
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                if self.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether `set` has pairwise distance >= d (unreachable counts as far).
    pub fn is_scattered_set(&self, set: &VertexSet, d: usize) -> bool {
        let vs = set.as_slice();
        for (i, &u) in vs.iter().enumerate() {
            let dist = self.bfs_distances(u).expect("valid source");
            for &v in &vs[i + 1..] {
                if let Some(duv) = dist[v] {
                    if duv < d {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Sorted, deduplicated set of vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet {
    members: Vec<usize>,
}

impl VertexSet {
    pub fn new() -> Self {
        VertexSet::default()
    }

    /// From an already sorted, duplicate-free vector.
    pub fn from_sorted(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet { members }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet { members: vec![v] }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, usize> {
        self.members.iter()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.members
    }

    pub fn insert(&mut self, v: usize) {
        if let Err(pos) = self.members.binary_search(&v) {
            self.members.insert(pos, v);
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::from_iter(self.iter().chain(other.iter()).copied())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet::from_sorted(
            self.members
                .iter()
                .copied()
                .filter(|&v| other.contains(v))
                .collect(),
        )
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet::from_sorted(
            self.members
                .iter()
                .copied()
                .filter(|&v| !other.contains(v))
                .collect(),
        )
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut members: Vec<usize> = it.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        VertexSet { members }
    }
}

/// Bijection between subgraph indices and host-graph indices.
#[derive(Debug, Clone)]
pub struct SubgraphMap {
    old_of_new: Vec<usize>,
    new_of_old: Vec<Option<usize>>,
}

impl SubgraphMap {
    pub fn to_host(&self, new: usize) -> usize {
        self.old_of_new[new]
    }

    pub fn to_sub(&self, old: usize) -> Option<usize> {
        self.new_of_old[old]
    }

    pub fn host_indices(&self) -> &[usize] {
        &self.old_of_new
    }

    /// Lift a set of subgraph vertices back to host indices.
    pub fn lift_set(&self, s: &VertexSet) -> VertexSet {
        VertexSet::from_iter(s.iter().map(|&v| self.old_of_new[v]))
    }

    /// Lift a sequence (e.g. a path witness) back to host indices.
    pub fn lift_seq(&self, s: &[usize]) -> Vec<usize> {
        s.iter().map(|&v| self.old_of_new[v]).collect()
    }
}
