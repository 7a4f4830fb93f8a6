//! Benchmark harness: runs solver suites described by a simple key-value
//! config, one instance family per line, and reports per-instance rows plus
//! a fitted runtime trend.
//!
//! Config lines look like:
//!
//! ```text
//! # kind=chain|windmill|sample, d present => scattered solve
//! kind=chain t=5 n=30 seeds=1..5 timeout_ms=5000
//! kind=sample t=5 n=14 p=0.7 seeds=1..10
//! kind=windmill t=6 n=25 d=3 seeds=2
//! ```

use std::fs;
use std::path::PathBuf;
use std::sync::mpsc;
use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use pathfree::dp::ScatteredParams;
use pathfree::generators;
use pathfree::oracle::{self, OracleLimit, Pattern};
use pathfree::solver::{solve_mwis_ptfree, solve_scattered_ptfree};
use pathfree::{Error, Graph, WeightMap64};

#[derive(Debug, Clone)]
struct Spec {
    kind: String,
    n: usize,
    t: usize,
    d: Option<usize>,
    p: f64,
    seed: u64,
    timeout_ms: u64,
}

#[derive(Debug)]
struct Row {
    id: usize,
    spec: Spec,
    m: usize,
    value: Option<u64>,
    branch_nodes: u64,
    tw_fallbacks: u64,
    wall_ms: f64,
    timed_out: bool,
    error: Option<String>,
    oracle_ok: Option<bool>,
}

pub fn run(
    config: &PathBuf,
    oracle_check: bool,
    workers: usize,
    pretty: bool,
) -> Result<i32, Error> {
    let text = fs::read_to_string(config)?;
    let specs = parse_config(&text)?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
    let rows: Vec<Row> = pool.install(|| {
        specs
            .par_iter()
            .enumerate()
            .map(|(id, spec)| run_one(id, spec, oracle_check))
            .collect()
    });

    if pretty {
        println!(
            "{:>3} {:>9} {:>4} {:>4} {:>3} {:>3} {:>7} {:>8} {:>6} {:>9}  status",
            "id", "kind", "n", "m", "t", "d", "value", "branches", "tw", "wall_ms"
        );
        for r in &rows {
            let status = if r.timed_out {
                "TIMEOUT".to_string()
            } else if let Some(e) = &r.error {
                format!("error: {e}")
            } else if r.oracle_ok == Some(false) {
                "ORACLE MISMATCH".to_string()
            } else {
                "ok".to_string()
            };
            println!(
                "{:>3} {:>9} {:>4} {:>4} {:>3} {:>3} {:>7} {:>8} {:>6} {:>9.2}  {status}",
                r.id,
                r.spec.kind,
                r.spec.n,
                r.m,
                r.spec.t,
                r.spec.d.map_or("-".into(), |d| d.to_string()),
                r.value.map_or("-".into(), |v| v.to_string()),
                r.branch_nodes,
                r.tw_fallbacks,
                r.wall_ms,
            );
        }
    } else {
        for r in &rows {
            println!(
                "{}",
                json!({
                    "id": r.id,
                    "kind": r.spec.kind,
                    "n": r.spec.n,
                    "m": r.m,
                    "t": r.spec.t,
                    "d": r.spec.d,
                    "seed": r.spec.seed,
                    "value": r.value,
                    "branch_nodes": r.branch_nodes,
                    "tw_fallbacks": r.tw_fallbacks,
                    "wall_ms": r.wall_ms,
                    "timed_out": r.timed_out,
                    "error": r.error,
                    "oracle_ok": r.oracle_ok,
                })
            );
        }
    }

    // Runtime trend: least-squares slope of log2(time) against
    // sqrt(n log2 n); documentation, not a gate.
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| !r.timed_out && r.error.is_none() && r.wall_ms > 0.0)
        .map(|r| {
            let n = r.spec.n as f64;
            ((n * n.log2()).sqrt(), (r.wall_ms / 1e3).log2())
        })
        .collect();
    if let Some((slope, intercept)) = least_squares(&pts) {
        if pretty {
            println!(
                "trend: log2(seconds) ~ {slope:.4} * sqrt(n log n) + {intercept:.2} over {} runs",
                pts.len()
            );
        } else {
            println!(
                "{}",
                json!({"trend": {"slope": slope, "intercept": intercept, "points": pts.len()}})
            );
        }
    }

    let mismatched = rows.iter().any(|r| r.oracle_ok == Some(false));
    Ok(if mismatched { 1 } else { 0 })
}

fn least_squares(pts: &[(f64, f64)]) -> Option<(f64, f64)> {
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-12 {
        return None;
    }
    let slope = (n * sxy - sx * sy) / denom;
    Some((slope, (sy - slope * sx) / n))
}

fn parse_config(text: &str) -> Result<Vec<Spec>, Error> {
    let mut specs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut kind = None;
        let mut n = None;
        let mut t = None;
        let mut d = None;
        let mut p = 0.2;
        let mut seeds = vec![1u64];
        let mut timeout_ms = 10_000u64;
        for tok in line.split_whitespace() {
            let (key, value) = tok.split_once('=').ok_or_else(|| {
                Error::InvalidInput(format!(
                    "line {}: expected key=value, got '{tok}'",
                    lineno + 1
                ))
            })?;
            let ctx = |what: &str| {
                Error::InvalidInput(format!("line {}: malformed {what} '{value}'", lineno + 1))
            };
            match key {
                "kind" => kind = Some(value.to_string()),
                "n" => n = Some(value.parse().map_err(|_| ctx("n"))?),
                "t" => t = Some(value.parse().map_err(|_| ctx("t"))?),
                "d" => d = Some(value.parse().map_err(|_| ctx("d"))?),
                "p" => p = value.parse().map_err(|_| ctx("p"))?,
                "timeout_ms" => timeout_ms = value.parse().map_err(|_| ctx("timeout_ms"))?,
                "seeds" => {
                    seeds = match value.split_once("..") {
                        Some((a, b)) => {
                            let a: u64 = a.parse().map_err(|_| ctx("seeds"))?;
                            let b: u64 = b.parse().map_err(|_| ctx("seeds"))?;
                            (a..=b).collect()
                        }
                        None => vec![value.parse().map_err(|_| ctx("seeds"))?],
                    }
                }
                other => {
                    return Err(Error::InvalidInput(format!(
                        "line {}: unknown key '{other}'",
                        lineno + 1
                    )))
                }
            }
        }
        let kind =
            kind.ok_or_else(|| Error::InvalidInput(format!("line {}: missing kind", lineno + 1)))?;
        let n = n.ok_or_else(|| Error::InvalidInput(format!("line {}: missing n", lineno + 1)))?;
        let t = t.ok_or_else(|| Error::InvalidInput(format!("line {}: missing t", lineno + 1)))?;
        for seed in seeds {
            specs.push(Spec {
                kind: kind.clone(),
                n,
                t,
                d,
                p,
                seed,
                timeout_ms,
            });
        }
    }
    Ok(specs)
}

/// Build the instance for a spec; deterministic in the seed.
fn build_instance(spec: &Spec) -> Result<Graph, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match spec.kind.as_str() {
        "chain" => {
            // As many cliques as P_t-freeness allows: a chain of k cliques
            // has induced paths on 2k vertices.
            let k = ((spec.t - 1) / 2).max(1);
            let mut sizes = vec![1usize; k];
            let mut left = spec.n.saturating_sub(k);
            while left > 0 {
                let i = rng.random_range(0..k);
                sizes[i] += 1;
                left -= 1;
            }
            let g = generators::clique_chain(&sizes)?;
            debug_assert!(oracle::certify_free(&g, &Pattern::Path(spec.t))
                .unwrap()
                .is_none());
            Ok(g)
        }
        "windmill" => {
            let blade = rng.random_range(2..=4usize);
            let blades = ((spec.n.saturating_sub(1)) / blade).max(1);
            generators::windmill(blades, blade)
        }
        "sample" => {
            generators::sample_free_graph(spec.n, &Pattern::Path(spec.t), spec.p, spec.seed)
        }
        other => Err(Error::InvalidInput(format!(
            "unknown family kind '{other}'"
        ))),
    }
}

fn run_one(id: usize, spec: &Spec, oracle_check: bool) -> Row {
    let mut row = Row {
        id,
        spec: spec.clone(),
        m: 0,
        value: None,
        branch_nodes: 0,
        tw_fallbacks: 0,
        wall_ms: 0.0,
        timed_out: false,
        error: None,
        oracle_ok: None,
    };
    let g = match build_instance(spec) {
        Ok(g) => g,
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    row.m = g.num_edges();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed ^ 0x9e3779b97f4a7c15);
    let weights: Vec<u64> = (0..g.num_vertices())
        .map(|_| rng.random_range(0..=100))
        .collect();

    let (tx, rx) = mpsc::channel();
    let spec_cl = spec.clone();
    let g_cl = g.clone();
    let weights_cl = weights.clone();
    std::thread::spawn(move || {
        let result = (|| -> Result<(u64, u64, u64, f64), Error> {
            match spec_cl.d {
                Some(d) => {
                    let report =
                        solve_scattered_ptfree(&g_cl, spec_cl.t, &ScatteredParams::new(d)?)?;
                    Ok((
                        report.value as u64,
                        report.stats.branch_nodes,
                        report.stats.tw_fallbacks,
                        report.stats.wall_time.as_secs_f64() * 1e3,
                    ))
                }
                None => {
                    let w = WeightMap64::new(&g_cl, weights_cl)?;
                    let report = solve_mwis_ptfree(&g_cl, &w, spec_cl.t)?;
                    Ok((
                        report.value,
                        report.stats.branch_nodes,
                        report.stats.tw_fallbacks,
                        report.stats.wall_time.as_secs_f64() * 1e3,
                    ))
                }
            }
        })();
        let _ = tx.send(result);
    });

    match rx.recv_timeout(Duration::from_millis(spec.timeout_ms)) {
        Ok(Ok((value, branches, tw, wall_ms))) => {
            row.value = Some(value);
            row.branch_nodes = branches;
            row.tw_fallbacks = tw;
            row.wall_ms = wall_ms;
        }
        Ok(Err(e)) => row.error = Some(e.to_string()),
        Err(_) => row.timed_out = true,
    }

    if oracle_check && row.value.is_some() {
        let limits = OracleLimit::default();
        row.oracle_ok = match spec.d {
            Some(d) if g.num_vertices() <= limits.max_n_scattered => {
                oracle::oracle_scattered(&g, d, &limits)
                    .ok()
                    .map(|(v, _)| v as u64 == row.value.unwrap())
            }
            None if g.num_vertices() <= limits.max_n_mis => {
                let w = WeightMap64::new(&g, weights).ok();
                w.and_then(|w| oracle::oracle_mwis(&g, &w, &limits).ok())
                    .map(|(v, _)| v == row.value.unwrap())
            }
            _ => None,
        };
    }
    row
}
