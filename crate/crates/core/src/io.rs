//! Text formats: DIMACS-style graph files, vertex weight files, and
//! tree-decomposition files. Files carry 1-based labels; everything in
//! memory is 0-based, translated here at the boundary.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::treewidth::TreeDecomposition;
use crate::weight::{Weight, WeightMap};

/// Parse a DIMACS-style graph: header `p edge <n> <m>`, edge lines
/// `e <u> <v>` with 1-based endpoints, comment lines starting with `c`.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some("p") => {
                let _format = tok.next();
                let nv: usize = next_num(&mut tok, lineno, "vertex count")?;
                let _ne: usize = next_num(&mut tok, lineno, "edge count")?;
                n = Some(nv);
            }
            Some("e") => {
                let n = n.ok_or_else(|| {
                    Error::InvalidInput(format!("line {}: edge before header", lineno + 1))
                })?;
                let u: usize = next_num(&mut tok, lineno, "edge endpoint")?;
                let v: usize = next_num(&mut tok, lineno, "edge endpoint")?;
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(Error::InvalidInput(format!(
                        "line {}: endpoint out of range 1..={n}",
                        lineno + 1
                    )));
                }
                edges.push((u - 1, v - 1));
            }
            Some(other) => {
                return Err(Error::InvalidInput(format!(
                    "line {}: unrecognized record '{other}'",
                    lineno + 1
                )));
            }
            None => {}
        }
    }
    let n = n.ok_or_else(|| Error::InvalidInput("missing 'p edge <n> <m>' header".into()))?;
    Graph::from_edges(n, &edges)
}

fn next_num(tok: &mut std::str::SplitWhitespace<'_>, lineno: usize, what: &str) -> Result<usize> {
    tok.next()
        .ok_or_else(|| Error::InvalidInput(format!("line {}: missing {what}", lineno + 1)))?
        .parse()
        .map_err(|_| Error::InvalidInput(format!("line {}: malformed {what}", lineno + 1)))
}

pub fn format_graph(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p edge {} {}", g.num_vertices(), g.num_edges());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

/// Parse a weight file: one `<vertex> <weight>` line per vertex, 1-based
/// vertex labels, every vertex of the companion graph covered exactly once.
pub fn parse_weights<W: Weight + std::str::FromStr>(text: &str, g: &Graph) -> Result<WeightMap<W>> {
    let n = g.num_vertices();
    let mut values: Vec<Option<W>> = vec![None; n];
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut tok = line.split_whitespace();
        let v: usize = next_num(&mut tok, lineno, "vertex label")?;
        let w: W = tok
            .next()
            .ok_or_else(|| Error::InvalidInput(format!("line {}: missing weight", lineno + 1)))?
            .parse()
            .map_err(|_| Error::InvalidInput(format!("line {}: malformed weight", lineno + 1)))?;
        if v == 0 || v > n {
            return Err(Error::InvalidInput(format!(
                "line {}: vertex out of range 1..={n}",
                lineno + 1
            )));
        }
        if values[v - 1].replace(w).is_some() {
            return Err(Error::InvalidInput(format!(
                "line {}: duplicate weight for vertex {v}",
                lineno + 1
            )));
        }
    }
    let values: Vec<W> = values
        .into_iter()
        .enumerate()
        .map(|(v, w)| {
            w.ok_or_else(|| Error::InvalidInput(format!("no weight for vertex {}", v + 1)))
        })
        .collect::<Result<_>>()?;
    WeightMap::new(g, values)
}

pub fn format_weights<W: Weight>(w: &WeightMap<W>) -> String {
    let mut out = String::new();
    for (v, value) in w.values().iter().enumerate() {
        let _ = writeln!(out, "{} {}", v + 1, value);
    }
    out
}

/// Serialize a tree decomposition: `td <num_bags> <width+1> <n>`, bag lines
/// `b <bag_id> <v1> <v2> ...`, then one `<i> <j>` line per tree edge, all
/// labels 1-based.
pub fn format_decomposition(td: &TreeDecomposition) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "td {} {} {}", td.bags.len(), td.max_bag_size(), td.n);
    for (i, bag) in td.bags.iter().enumerate() {
        let _ = write!(out, "b {}", i + 1);
        for &v in bag.iter() {
            let _ = write!(out, " {}", v + 1);
        }
        let _ = writeln!(out);
    }
    for &(a, b) in &td.tree_edges {
        let _ = writeln!(out, "{} {}", a + 1, b + 1);
    }
    out
}

pub fn parse_decomposition(text: &str) -> Result<TreeDecomposition> {
    let mut header: Option<(usize, usize)> = None; // (num_bags, n)
    let mut bags: Vec<Option<crate::graph::VertexSet>> = Vec::new();
    let mut tree_edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut tok = line.split_whitespace();
        let first = tok.next().unwrap();
        match first {
            "td" => {
                let num_bags: usize = next_num(&mut tok, lineno, "bag count")?;
                let _width_plus_1: usize = next_num(&mut tok, lineno, "width")?;
                let n: usize = next_num(&mut tok, lineno, "vertex count")?;
                bags = vec![None; num_bags];
                header = Some((num_bags, n));
            }
            "b" => {
                let (num_bags, n) = header.ok_or_else(|| {
                    Error::InvalidInput(format!("line {}: bag before 'td' header", lineno + 1))
                })?;
                let id: usize = next_num(&mut tok, lineno, "bag id")?;
                if id == 0 || id > num_bags {
                    return Err(Error::InvalidInput(format!(
                        "line {}: bag id out of range",
                        lineno + 1
                    )));
                }
                let mut members = Vec::new();
                for t in tok {
                    let v: usize = t.parse().map_err(|_| {
                        Error::InvalidInput(format!("line {}: malformed bag member", lineno + 1))
                    })?;
                    if v == 0 || v > n {
                        return Err(Error::InvalidInput(format!(
                            "line {}: bag member out of range",
                            lineno + 1
                        )));
                    }
                    members.push(v - 1);
                }
                bags[id - 1] = Some(crate::graph::VertexSet::from_iter(members));
            }
            _ => {
                let (num_bags, _) = header.ok_or_else(|| {
                    Error::InvalidInput(format!("line {}: edge before 'td' header", lineno + 1))
                })?;
                let a: usize = first.parse().map_err(|_| {
                    Error::InvalidInput(format!("line {}: unrecognized record", lineno + 1))
                })?;
                let b: usize = next_num(&mut tok, lineno, "tree edge endpoint")?;
                if a == 0 || b == 0 || a > num_bags || b > num_bags {
                    return Err(Error::InvalidInput(format!(
                        "line {}: tree edge out of range",
                        lineno + 1
                    )));
                }
                tree_edges.push((a - 1, b - 1));
            }
        }
    }
    let (_, n) = header.ok_or_else(|| Error::InvalidInput("missing 'td' header".into()))?;
    let bags: Vec<_> = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| Error::InvalidInput(format!("bag {} undeclared", i + 1))))
        .collect::<Result<_>>()?;
    Ok(TreeDecomposition {
        n,
        bags,
        tree_edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip() {
        let g = Graph::cycle(5);
        let parsed = parse_graph(&format_graph(&g)).unwrap();
        assert_eq!(parsed, g);
    }

    #[test]
    fn parses_comments_and_one_based_labels() {
        let text = "c a triangle\np edge 3 3\ne 1 2\ne 2 3\ne 3 1\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.num_vertices(), 3);
        assert_eq!(g.num_edges(), 3);
        assert!(g.has_edge(0, 2));
    }

    #[test]
    fn rejects_out_of_range_edge() {
        assert!(parse_graph("p edge 2 1\ne 1 3\n").is_err());
    }

    #[test]
    fn rejects_missing_header() {
        assert!(parse_graph("e 1 2\n").is_err());
    }

    #[test]
    fn weight_round_trip() {
        let g = Graph::path(3);
        let w = WeightMap::<u64>::new(&g, vec![5, 0, 7]).unwrap();
        let parsed: WeightMap<u64> = parse_weights(&format_weights(&w), &g).unwrap();
        assert_eq!(parsed, w);
    }

    #[test]
    fn weights_must_cover_every_vertex() {
        let g = Graph::path(3);
        assert!(parse_weights::<u64>("1 4\n2 4\n", &g).is_err());
        assert!(parse_weights::<u64>("1 4\n1 5\n2 1\n3 1\n", &g).is_err());
    }

    #[test]
    fn decomposition_round_trip() {
        let td = TreeDecomposition {
            n: 3,
            bags: vec![
                crate::graph::VertexSet::from_iter([0, 1]),
                crate::graph::VertexSet::from_iter([1, 2]),
            ],
            tree_edges: vec![(0, 1)],
        };
        let parsed = parse_decomposition(&format_decomposition(&td)).unwrap();
        assert_eq!(parsed.n, 3);
        assert_eq!(parsed.bags, td.bags);
        assert_eq!(parsed.tree_edges, td.tree_edges);
    }
}
