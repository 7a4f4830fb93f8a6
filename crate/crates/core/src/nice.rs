//! Nice tree decompositions: rooted, with leaf / introduce / forget / join
//! nodes, the scaffolding for the dynamic programs.

use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::treewidth::TreeDecomposition;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NiceKind {
    /// Empty bag, no children.
    Leaf,
    /// Bag = child's bag plus `vertex`.
    Introduce { child: usize, vertex: usize },
    /// Bag = child's bag minus `vertex`.
    Forget { child: usize, vertex: usize },
    /// Both children carry the same bag as this node.
    Join { left: usize, right: usize },
}

#[derive(Debug, Clone)]
pub struct NiceNode {
    /// Sorted bag contents.
    pub bag: Vec<usize>,
    pub kind: NiceKind,
}

/// Rooted binary-structured decomposition; the root bag is empty.
#[derive(Debug, Clone)]
pub struct NiceDecomposition {
    pub n: usize,
    pub nodes: Vec<NiceNode>,
    pub root: usize,
}

impl NiceDecomposition {
    pub fn width(&self) -> usize {
        self.nodes
            .iter()
            .map(|nd| nd.bag.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    /// View as a plain tree decomposition, for validation.
    pub fn to_decomposition(&self) -> TreeDecomposition {
        let bags = self
            .nodes
            .iter()
            .map(|nd| VertexSet::from_sorted(nd.bag.clone()))
            .collect();
        let mut tree_edges = Vec::new();
        for (i, nd) in self.nodes.iter().enumerate() {
            match nd.kind {
                NiceKind::Leaf => {}
                NiceKind::Introduce { child, .. } | NiceKind::Forget { child, .. } => {
                    tree_edges.push((i, child));
                }
                NiceKind::Join { left, right } => {
                    tree_edges.push((i, left));
                    tree_edges.push((i, right));
                }
            }
        }
        TreeDecomposition {
            n: self.n,
            bags,
            tree_edges,
        }
    }

    /// Node indices in post-order (children before parents).
    pub fn post_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(self.root, false)];
        while let Some((x, expanded)) = stack.pop() {
            if expanded {
                order.push(x);
                continue;
            }
            stack.push((x, true));
            match self.nodes[x].kind {
                NiceKind::Leaf => {}
                NiceKind::Introduce { child, .. } | NiceKind::Forget { child, .. } => {
                    stack.push((child, false));
                }
                NiceKind::Join { left, right } => {
                    stack.push((right, false));
                    stack.push((left, false));
                }
            }
        }
        order
    }

    /// Structural sanity: bag deltas match node kinds, join bags agree.
    /// Used by tests; the builders uphold this by construction.
    pub fn check_structure(&self) -> Result<()> {
        for (i, nd) in self.nodes.iter().enumerate() {
            if nd.bag.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidInput(format!("node {i}: bag not sorted")));
            }
            match nd.kind {
                NiceKind::Leaf => {
                    if !nd.bag.is_empty() {
                        return Err(Error::InvalidInput(format!("node {i}: leaf bag not empty")));
                    }
                }
                NiceKind::Introduce { child, vertex } => {
                    let mut expect = self.nodes[child].bag.clone();
                    expect.push(vertex);
                    expect.sort_unstable();
                    if expect != nd.bag || self.nodes[child].bag.contains(&vertex) {
                        return Err(Error::InvalidInput(format!(
                            "node {i}: introduce({vertex}) bag mismatch"
                        )));
                    }
                }
                NiceKind::Forget { child, vertex } => {
                    let expect: Vec<usize> = self.nodes[child]
                        .bag
                        .iter()
                        .copied()
                        .filter(|&v| v != vertex)
                        .collect();
                    if expect != nd.bag || !self.nodes[child].bag.contains(&vertex) {
                        return Err(Error::InvalidInput(format!(
                            "node {i}: forget({vertex}) bag mismatch"
                        )));
                    }
                }
                NiceKind::Join { left, right } => {
                    if self.nodes[left].bag != nd.bag || self.nodes[right].bag != nd.bag {
                        return Err(Error::InvalidInput(format!("node {i}: join bag mismatch")));
                    }
                }
            }
        }
        if !self.nodes[self.root].bag.is_empty() {
            return Err(Error::InvalidInput("root bag not empty".into()));
        }
        Ok(())
    }
}

/// Convert a valid tree decomposition into a nice one of the same width.
/// Structural validity (tree shape, every vertex covered) is checked here;
/// the graph axioms (T2), (T3) remain the caller's obligation.
pub fn make_nice(td: &TreeDecomposition) -> Result<NiceDecomposition> {
    if td.n == 0 {
        return Ok(NiceDecomposition {
            n: 0,
            nodes: vec![NiceNode {
                bag: Vec::new(),
                kind: NiceKind::Leaf,
            }],
            root: 0,
        });
    }
    let b = td.bags.len();
    if b == 0 {
        return Err(Error::InvalidInput("no bags for a nonempty graph".into()));
    }
    if td.tree_edges.len() != b - 1 {
        return Err(Error::InvalidInput("bag graph is not a tree".into()));
    }
    let mut covered = vec![false; td.n];
    for bag in &td.bags {
        for &v in bag.iter() {
            if v >= td.n {
                return Err(Error::InvalidInput(format!("bag vertex {v} out of range")));
            }
            covered[v] = true;
        }
    }
    if let Some(v) = covered.iter().position(|&c| !c) {
        return Err(Error::InvalidInput(format!("vertex {v} in no bag")));
    }

    let adj = td.bag_adjacency();
    // Orient the tree away from bag 0.
    let mut parent = vec![usize::MAX; b];
    let mut order = vec![0usize];
    let mut seen = vec![false; b];
    seen[0] = true;
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = x;
                order.push(y);
            }
        }
    }
    if order.len() != b {
        return Err(Error::InvalidInput("bag graph is not connected".into()));
    }

    let mut nodes: Vec<NiceNode> = Vec::new();
    // Build bottom-up following reverse BFS order; tops[x] holds the nice
    // node whose bag equals bag x.
    let mut tops: Vec<Option<usize>> = vec![None; b];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); b];
    for &x in order.iter().skip(1) {
        children[parent[x]].push(x);
    }

    for &x in order.iter().rev() {
        let bag: Vec<usize> = td.bags[x].iter().copied().collect();
        let mut towers: Vec<usize> = Vec::new();
        for &c in &children[x] {
            // Morph the child's bag into this bag: forget extras, then
            // introduce the missing ones.
            let mut cur = tops[c].expect("children built first");
            let mut cur_bag = nodes[cur].bag.clone();
            let child_bag = &td.bags[c];
            for &v in child_bag.iter() {
                if !td.bags[x].contains(v) {
                    cur_bag.retain(|&u| u != v);
                    nodes.push(NiceNode {
                        bag: cur_bag.clone(),
                        kind: NiceKind::Forget {
                            child: cur,
                            vertex: v,
                        },
                    });
                    cur = nodes.len() - 1;
                }
            }
            for &v in td.bags[x].iter() {
                if !child_bag.contains(v) {
                    cur_bag.push(v);
                    cur_bag.sort_unstable();
                    nodes.push(NiceNode {
                        bag: cur_bag.clone(),
                        kind: NiceKind::Introduce {
                            child: cur,
                            vertex: v,
                        },
                    });
                    cur = nodes.len() - 1;
                }
            }
            towers.push(cur);
        }
        let top = if towers.is_empty() {
            // Leaf bag: introduce everything above an empty leaf.
            nodes.push(NiceNode {
                bag: Vec::new(),
                kind: NiceKind::Leaf,
            });
            let mut cur = nodes.len() - 1;
            let mut cur_bag: Vec<usize> = Vec::new();
            for &v in &bag {
                cur_bag.push(v);
                cur_bag.sort_unstable();
                nodes.push(NiceNode {
                    bag: cur_bag.clone(),
                    kind: NiceKind::Introduce {
                        child: cur,
                        vertex: v,
                    },
                });
                cur = nodes.len() - 1;
            }
            cur
        } else {
            // Fold the towers with joins; all carry this node's bag.
            let mut acc = towers[0];
            for &next in &towers[1..] {
                nodes.push(NiceNode {
                    bag: bag.clone(),
                    kind: NiceKind::Join {
                        left: acc,
                        right: next,
                    },
                });
                acc = nodes.len() - 1;
            }
            acc
        };
        tops[x] = Some(top);
    }

    // Forget the root bag down to empty.
    let mut cur = tops[0].unwrap();
    let mut cur_bag = nodes[cur].bag.clone();
    let root_bag = cur_bag.clone();
    for v in root_bag {
        cur_bag.retain(|&u| u != v);
        nodes.push(NiceNode {
            bag: cur_bag.clone(),
            kind: NiceKind::Forget {
                child: cur,
                vertex: v,
            },
        });
        cur = nodes.len() - 1;
    }

    Ok(NiceDecomposition {
        n: td.n,
        nodes,
        root: cur,
    })
}
