use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use pathfree::approx::{approx_mis_with_params, ApproxParams};
use pathfree::dp::ScatteredParams;
use pathfree::generators;
use pathfree::io;
use pathfree::oracle::{self, OracleLimit, Pattern};
use pathfree::separator::gyarfas_separator;
use pathfree::solver::{solve_mwis_ptfree, solve_scattered_ptfree};
use pathfree::treewidth::{decompose_bounded_degree, decompose_peeled, validate_decomposition};
use pathfree::{Error, Graph, VertexSet, WeightMap64};

mod bench;

/// Solvers for independent set problems on graphs without long induced
/// paths. Machine output is JSON; pass --pretty for human tables.
#[derive(Parser)]
#[command(name = "pathfree", version, about)]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Seed threaded to all randomized components.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact solvers for P_t-free graphs.
    Solve {
        #[command(subcommand)]
        which: SolveCmd,
    },
    /// Approximation algorithms.
    Approx {
        #[command(subcommand)]
        which: ApproxCmd,
    },
    /// Brute-force ground truth (small instances only).
    Oracle {
        #[command(subcommand)]
        which: OracleCmd,
    },
    /// Build a tree decomposition and print it in the td format.
    Treewidth {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value_t = TwMode::Degree)]
        mode: TwMode,
    },
    /// Balanced separator grown from a root vertex (1-based label).
    Separator {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        root: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        weights: Option<PathBuf>,
        /// Degree bound handed to the construction; defaults to the max degree.
        #[arg(long)]
        delta: Option<usize>,
    },
    /// Instance generators with promise sidecars.
    Generate {
        #[command(subcommand)]
        which: GenerateCmd,
    },
    /// Check pattern-freeness; exit 0 when free, 1 when a witness exists.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        /// path:<t>, cycle:<t>, claw, or broom:<d>,<t>
        #[arg(long)]
        pattern: String,
    },
    /// Run a benchmark suite from a config file.
    Bench {
        #[arg(long)]
        config: PathBuf,
        /// Cross-check values against the oracle where capacity allows.
        #[arg(long)]
        oracle_check: bool,
        #[arg(long, default_value_t = 4)]
        workers: usize,
    },
}

#[derive(Subcommand)]
enum SolveCmd {
    /// Maximum-weight independent set.
    Mwis {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(long)]
        t: usize,
        /// Check P_t-freeness upfront instead of relying on lazy detection.
        #[arg(long)]
        verify_free: bool,
    },
    /// Maximum d-scattered set.
    Scattered {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        verify_free: bool,
    },
}

#[derive(Subcommand)]
enum ApproxCmd {
    /// d-approximation for MIS on B_{d,t}-free graphs.
    Broom {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        t: usize,
        /// Override the brute-force size cap (test knob).
        #[arg(long)]
        brute_cap: Option<usize>,
        /// Scale the degree threshold (test knob).
        #[arg(long)]
        degree_scale: Option<f64>,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    Mis {
        #[arg(long)]
        graph: PathBuf,
    },
    Mwis {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    Scattered {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        d: usize,
    },
}

#[derive(Subcommand)]
enum GenerateCmd {
    /// P_5-free instance with alpha_3(out) = alpha(source).
    P5freeScattered3 {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Claw-free instance with alpha_d(out) = alpha(source).
    Clawfree {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Subdivide each edge with 2g vertices: alpha grows by exactly g*m.
    Subdivide {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        g: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// C_t-free instance with alpha_d(out) = alpha(source) + m(d-2).
    Ctfree {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rejection-sample a pattern-free random graph.
    Sample {
        #[arg(long)]
        n: usize,
        /// path:<t>, cycle:<t>, claw, or broom:<d>,<t>
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value_t = 0.2)]
        p: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TwMode {
    Degree,
    Peel,
}

fn main() {
    let cli = Cli::parse();
    let code = match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    };
    std::process::exit(code);
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Capacity { .. } => 3,
        Error::NotPtFree { .. } | Error::NotBroomFree { .. } => 1,
        _ => 2,
    }
}

/// Oracle caps, overridable through PATHFREE_ORACLE_CAP.
fn oracle_limits() -> OracleLimit {
    match std::env::var("PATHFREE_ORACLE_CAP")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
    {
        Some(cap) => OracleLimit::with_caps(cap, cap),
        None => OracleLimit::default(),
    }
}

fn read_graph(path: &PathBuf) -> Result<Graph, Error> {
    io::parse_graph(&fs::read_to_string(path)?)
}

fn read_weights(g: &Graph, path: &Option<PathBuf>) -> Result<WeightMap64, Error> {
    match path {
        Some(p) => io::parse_weights(&fs::read_to_string(p)?, g),
        None => Ok(WeightMap64::unit(g)),
    }
}

fn parse_pattern(s: &str) -> Result<Pattern, Error> {
    let bad = || Error::InvalidInput(format!("unrecognized pattern '{s}'"));
    if s == "claw" {
        return Ok(Pattern::Claw);
    }
    let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
    match kind {
        "path" => Ok(Pattern::Path(rest.parse().map_err(|_| bad())?)),
        "cycle" => Ok(Pattern::Cycle(rest.parse().map_err(|_| bad())?)),
        "broom" => {
            let (d, t) = rest.split_once(',').ok_or_else(bad)?;
            Ok(Pattern::Broom {
                d: d.parse().map_err(|_| bad())?,
                t: t.parse().map_err(|_| bad())?,
            })
        }
        _ => Err(bad()),
    }
}

fn witness_labels(w: &VertexSet) -> Vec<usize> {
    w.iter().map(|&v| v + 1).collect()
}

fn check_free_upfront(g: &Graph, t: usize) -> Result<(), Error> {
    if let Some(witness) = oracle::certify_free(g, &Pattern::Path(t))? {
        return Err(Error::NotPtFree { witness });
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<i32, Error> {
    match &cli.cmd {
        Cmd::Solve { which } => match which {
            SolveCmd::Mwis {
                graph,
                weights,
                t,
                verify_free,
            } => {
                let g = read_graph(graph)?;
                let w = read_weights(&g, weights)?;
                if *verify_free {
                    check_free_upfront(&g, *t)?;
                }
                let report = solve_mwis_ptfree(&g, &w, *t)?;
                if cli.pretty {
                    println!("mwis value: {}", report.value);
                    println!("witness (1-based): {:?}", witness_labels(&report.witness));
                    println!(
                        "branch nodes: {}, treewidth fallbacks: {}, max depth: {}",
                        report.stats.branch_nodes,
                        report.stats.tw_fallbacks,
                        report.stats.max_depth
                    );
                } else {
                    println!(
                        "{}",
                        json!({
                            "value": report.value,
                            "witness": witness_labels(&report.witness),
                            "stats": {
                                "branch_nodes": report.stats.branch_nodes,
                                "tw_fallbacks": report.stats.tw_fallbacks,
                                "max_depth": report.stats.max_depth,
                                "wall_ms": report.stats.wall_time.as_secs_f64() * 1e3,
                            },
                        })
                    );
                }
                Ok(0)
            }
            SolveCmd::Scattered {
                graph,
                t,
                d,
                verify_free,
            } => {
                let g = read_graph(graph)?;
                if *verify_free {
                    check_free_upfront(&g, *t)?;
                }
                let params = ScatteredParams::new(*d)?;
                let report = solve_scattered_ptfree(&g, *t, &params)?;
                if cli.pretty {
                    println!("scattered value (d = {d}): {}", report.value);
                    println!("witness (1-based): {:?}", witness_labels(&report.witness));
                } else {
                    println!(
                        "{}",
                        json!({
                            "value": report.value,
                            "witness": witness_labels(&report.witness),
                            "stats": {
                                "branch_nodes": report.stats.branch_nodes,
                                "tw_fallbacks": report.stats.tw_fallbacks,
                                "max_depth": report.stats.max_depth,
                                "wall_ms": report.stats.wall_time.as_secs_f64() * 1e3,
                            },
                        })
                    );
                }
                Ok(0)
            }
        },
        Cmd::Approx { which } => match which {
            ApproxCmd::Broom {
                graph,
                d,
                t,
                brute_cap,
                degree_scale,
            } => {
                let g = read_graph(graph)?;
                let mut params = ApproxParams::new(*d, *t)?;
                if let Some(cap) = brute_cap {
                    params = params.with_brute_cap(*cap);
                }
                if let Some(scale) = degree_scale {
                    params = params.with_degree_scale(*scale);
                }
                let report = approx_mis_with_params(&g, &params)?;
                let trace: Vec<String> = report.case_trace.iter().map(|c| c.to_string()).collect();
                if cli.pretty {
                    println!("approx value: {} (>= alpha/{d})", report.value);
                    println!("witness (1-based): {:?}", witness_labels(&report.witness));
                    println!("cases: {}", trace.join(", "));
                } else {
                    println!(
                        "{}",
                        json!({
                            "value": report.value,
                            "witness": witness_labels(&report.witness),
                            "case_trace": trace,
                        })
                    );
                }
                Ok(0)
            }
        },
        Cmd::Oracle { which } => {
            let limits = oracle_limits();
            let (value, witness, label) = match which {
                OracleCmd::Mis { graph } => {
                    let g = read_graph(graph)?;
                    let (v, w) = oracle::oracle_mis(&g, &limits)?;
                    (v as u64, w, "mis")
                }
                OracleCmd::Mwis { graph, weights } => {
                    let g = read_graph(graph)?;
                    let wm = read_weights(&g, weights)?;
                    let (v, w) = oracle::oracle_mwis(&g, &wm, &limits)?;
                    (v, w, "mwis")
                }
                OracleCmd::Scattered { graph, d } => {
                    let g = read_graph(graph)?;
                    let (v, w) = oracle::oracle_scattered(&g, *d, &limits)?;
                    (v as u64, w, "scattered")
                }
            };
            if cli.pretty {
                println!("oracle {label} value: {value}");
                println!("witness (1-based): {:?}", witness_labels(&witness));
            } else {
                println!(
                    "{}",
                    json!({"value": value, "witness": witness_labels(&witness)})
                );
            }
            Ok(0)
        }
        Cmd::Treewidth { graph, t, mode } => {
            let g = read_graph(graph)?;
            let td = match mode {
                TwMode::Degree => decompose_bounded_degree(&g, *t)?,
                TwMode::Peel => decompose_peeled(&g, *t)?,
            };
            if let Err(v) = validate_decomposition(&g, &td) {
                return Err(Error::InvalidInput(format!(
                    "internal: produced decomposition invalid: {v}"
                )));
            }
            print!("{}", io::format_decomposition(&td));
            if cli.pretty {
                println!("c width {}", td.width());
            }
            Ok(0)
        }
        Cmd::Separator {
            graph,
            root,
            t,
            weights,
            delta,
        } => {
            let g = read_graph(graph)?;
            let w = read_weights(&g, weights)?;
            if *root == 0 {
                return Err(Error::InvalidInput("root label is 1-based".into()));
            }
            let delta = delta.unwrap_or_else(|| g.max_degree());
            let sep = gyarfas_separator(&g, root - 1, &w, *t, delta)?;
            if cli.pretty {
                println!("separator (1-based): {:?}", witness_labels(&sep.x));
                for (c, cw) in &sep.components {
                    println!("  component {:?} weight {cw}", witness_labels(c));
                }
            } else {
                let comps: Vec<_> = sep
                    .components
                    .iter()
                    .map(|(c, cw)| json!({"vertices": witness_labels(c), "weight": cw}))
                    .collect();
                println!(
                    "{}",
                    json!({
                        "x": witness_labels(&sep.x),
                        "components": comps,
                        "grown_path": sep.grown_path.iter().map(|v| v + 1).collect::<Vec<_>>(),
                    })
                );
            }
            Ok(0)
        }
        Cmd::Generate { which } => run_generate(cli, which),
        Cmd::Verify { graph, pattern } => {
            let g = read_graph(graph)?;
            let pat = parse_pattern(pattern)?;
            match oracle::certify_free(&g, &pat)? {
                None => {
                    println!("{}", json!({"free": true, "pattern": pat.to_string()}));
                    Ok(0)
                }
                Some(witness) => {
                    let labels: Vec<usize> = witness.iter().map(|&v| v + 1).collect();
                    println!(
                        "{}",
                        json!({"free": false, "pattern": pat.to_string(), "witness": labels})
                    );
                    Ok(1)
                }
            }
        }
        Cmd::Bench {
            config,
            oracle_check,
            workers,
        } => bench::run(config, *oracle_check, *workers, cli.pretty),
    }
}

fn run_generate(cli: &Cli, which: &GenerateCmd) -> Result<i32, Error> {
    let (out_path, graph, sidecar) = match which {
        GenerateCmd::P5freeScattered3 { graph, out } => {
            let src = read_graph(graph)?;
            let (gp, promise) = generators::gen_p5free_scattered3(&src)?;
            let sidecar = promise_json("p5free-scattered3", &src, &gp, &promise, json!({}));
            (out.clone(), gp, sidecar)
        }
        GenerateCmd::Clawfree { graph, d, out } => {
            let src = read_graph(graph)?;
            let (gp, promise) = generators::gen_clawfree_scattered(&src, *d)?;
            let sidecar = promise_json("clawfree-scattered", &src, &gp, &promise, json!({"d": d}));
            (out.clone(), gp, sidecar)
        }
        GenerateCmd::Subdivide { graph, g, out } => {
            let src = read_graph(graph)?;
            let (gp, promise) = generators::gen_subdivision(&src, *g)?;
            let sidecar = promise_json("subdivide", &src, &gp, &promise, json!({"g": g}));
            (out.clone(), gp, sidecar)
        }
        GenerateCmd::Ctfree { graph, d, t, out } => {
            let src = read_graph(graph)?;
            let (gp, promise) = generators::gen_ctfree_scattered(&src, *d, *t)?;
            let sidecar = promise_json(
                "ctfree-scattered",
                &src,
                &gp,
                &promise,
                json!({"d": d, "t": t}),
            );
            (out.clone(), gp, sidecar)
        }
        GenerateCmd::Sample { n, pattern, p, out } => {
            let pat = parse_pattern(pattern)?;
            let g = generators::sample_free_graph(*n, &pat, *p, cli.seed)?;
            let sidecar = json!({
                "kind": "sample",
                "pattern": pat.to_string(),
                "n": n,
                "edge_prob": p,
                "seed": cli.seed,
                "certified_free": true,
            });
            (out.clone(), g, sidecar)
        }
    };
    fs::write(&out_path, io::format_graph(&graph))?;
    let mut sidecar_name = out_path.file_name().unwrap_or_default().to_os_string();
    sidecar_name.push(".json");
    let sidecar_path = out_path.with_file_name(sidecar_name);
    fs::write(
        &sidecar_path,
        serde_json::to_string_pretty(&sidecar).unwrap(),
    )?;
    if cli.pretty {
        println!(
            "wrote {} ({} vertices, {} edges) and {}",
            out_path.display(),
            graph.num_vertices(),
            graph.num_edges(),
            sidecar_path.display()
        );
    } else {
        println!(
            "{}",
            json!({"graph": out_path.display().to_string(),
                   "sidecar": sidecar_path.display().to_string(),
                   "n": graph.num_vertices(), "m": graph.num_edges()})
        );
    }
    Ok(0)
}

fn promise_json(
    kind: &str,
    src: &Graph,
    gp: &Graph,
    promise: &generators::ReductionPromise,
    params: serde_json::Value,
) -> serde_json::Value {
    let identity = if promise.scattered_d == 2 {
        format!("alpha(out) = alpha(source) + {}", promise.offset)
    } else {
        format!(
            "alpha_{}(out) = alpha(source) + {}",
            promise.scattered_d, promise.offset
        )
    };
    json!({
        "kind": kind,
        "identity": identity,
        "scattered_d": promise.scattered_d,
        "offset": promise.offset,
        "params": params,
        "source": {"n": src.num_vertices(), "m": src.num_edges(), "hash": graph_hash(src)},
        "output": {"n": gp.num_vertices(), "m": gp.num_edges()},
    })
}

/// FNV-1a over the canonical edge list; stable instance fingerprint.
fn graph_hash(g: &Graph) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    let mut eat = |x: u64| {
        h ^= x;
        h = h.wrapping_mul(0x100000001b3);
    };
    eat(g.num_vertices() as u64);
    for (u, v) in g.edges() {
        eat(u as u64 + 1);
        eat(v as u64 + 1);
    }
    format!("{h:016x}")
}
