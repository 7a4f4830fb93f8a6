//! End-to-end checks of the command-line surface: subcommands, file
//! formats, JSON shapes, and the exit-code contract (0 ok, 1 infeasible or
//! violated promise, 2 input error, 3 capacity).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pathfree"))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn tempdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pathfree-cli-{tag}-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout_json(out: &Output) -> serde_json::Value {
    let text = String::from_utf8_lossy(&out.stdout);
    let line = text
        .lines()
        .next()
        .unwrap_or_else(|| panic!("no output: {text}"));
    serde_json::from_str(line).unwrap_or_else(|e| panic!("bad JSON '{line}': {e}"))
}

const P4: &str = "p edge 4 3\ne 1 2\ne 2 3\ne 3 4\n";
const C5: &str = "c five cycle\np edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n";
const K3: &str = "p edge 3 3\ne 1 2\ne 2 3\ne 3 1\n";

#[test]
fn solve_mwis_p4_unit() {
    let dir = tempdir("mwis");
    let p4 = write(&dir, "p4.col", P4);
    let out = bin()
        .args(["solve", "mwis", "--graph"])
        .arg(&p4)
        .args(["--t", "6"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["value"], 2);
    assert_eq!(v["witness"].as_array().unwrap().len(), 2);
    assert!(v["stats"]["wall_ms"].as_f64().is_some());
}

#[test]
fn solve_mwis_with_weight_file() {
    let dir = tempdir("weights");
    let p4 = write(&dir, "p4.col", P4);
    let w = write(&dir, "p4.w", "1 1\n2 10\n3 1\n4 10\n");
    let out = bin()
        .args(["solve", "mwis", "--graph"])
        .arg(&p4)
        .args(["--weights"])
        .arg(&w)
        .args(["--t", "6"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["value"], 20);
}

#[test]
fn verify_c5_p5_free() {
    let dir = tempdir("verify");
    let c5 = write(&dir, "c5.col", C5);
    let out = bin()
        .args(["verify", "--graph"])
        .arg(&c5)
        .args(["--pattern", "path:5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["free"], true);

    let out = bin()
        .args(["verify", "--graph"])
        .arg(&c5)
        .args(["--pattern", "cycle:5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "witness found means exit 1");
    let v = stdout_json(&out);
    assert_eq!(v["free"], false);
    assert_eq!(v["witness"].as_array().unwrap().len(), 5);
}

#[test]
fn generate_subdivide_then_oracle() {
    let dir = tempdir("gen");
    let k3 = write(&dir, "k3.col", K3);
    let out_graph = dir.join("c9.col");
    let out = bin()
        .args(["generate", "subdivide", "--graph"])
        .arg(&k3)
        .args(["--g", "1", "--out"])
        .arg(&out_graph)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let sidecar: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("c9.col.json")).unwrap()).unwrap();
    assert_eq!(sidecar["offset"], 3);
    assert_eq!(sidecar["output"]["n"], 9);

    let out = bin()
        .args(["oracle", "mis", "--graph"])
        .arg(&out_graph)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["value"], 4);
}

#[test]
fn treewidth_output_round_trips() {
    let dir = tempdir("tw");
    let c5 = write(&dir, "c5.col", C5);
    for mode in ["degree", "peel"] {
        let out = bin()
            .args(["treewidth", "--graph"])
            .arg(&c5)
            .args(["--t", "6", "--mode", mode])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        let text = String::from_utf8_lossy(&out.stdout);
        let td = pathfree::io::parse_decomposition(&text).unwrap();
        let g = pathfree::io::parse_graph(C5).unwrap();
        assert!(pathfree::treewidth::validate_decomposition(&g, &td).is_ok());
    }
}

#[test]
fn separator_json_shape() {
    let dir = tempdir("sep");
    let c5 = write(&dir, "c5.col", C5);
    let out = bin()
        .args(["separator", "--graph"])
        .arg(&c5)
        .args(["--root", "1", "--t", "6"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert!(!v["x"].as_array().unwrap().is_empty());
    assert!(v["components"].is_array());
}

#[test]
fn scattered_and_approx() {
    let dir = tempdir("scat");
    let c5 = write(&dir, "c5.col", C5);
    let out = bin()
        .args(["solve", "scattered", "--graph"])
        .arg(&c5)
        .args(["--t", "6", "--d", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["value"], 2);

    let out = bin()
        .args(["approx", "broom", "--graph"])
        .arg(&c5)
        .args(["--d", "2", "--t", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["case_trace"][0], "brute-force");
    assert!(v["value"].as_u64().unwrap() >= 1);
}

#[test]
fn exit_codes() {
    let dir = tempdir("exit");

    // Unknown flag: usage error, exit 2 (clap's convention).
    let out = bin()
        .args(["solve", "mwis", "--nonsense"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Malformed graph file: input error, exit 2.
    let bad = write(&dir, "bad.col", "p edge 2 1\ne 1 5\n");
    let out = bin()
        .args(["oracle", "mis", "--graph"])
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Oracle capacity: exit 3.
    let mut big = String::from("p edge 40 0\n");
    big.push_str("");
    let bigf = write(&dir, "big.col", &big);
    let out = bin()
        .args(["oracle", "mis", "--graph"])
        .arg(&bigf)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));

    // Upfront freeness check rejects a P_4 when t = 3: exit 1.
    let p4 = write(&dir, "p4.col", P4);
    let out = bin()
        .args(["solve", "mwis", "--graph"])
        .arg(&p4)
        .args(["--t", "3", "--verify-free"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn oracle_cap_env_override() {
    let dir = tempdir("cap");
    let mut text = String::from("p edge 24 0\n");
    text.push_str("");
    let f = write(&dir, "edgeless.col", &text);
    // Default cap (22) refuses n = 24; a raised cap accepts it.
    let out = bin()
        .args(["oracle", "mis", "--graph"])
        .arg(&f)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = bin()
        .env("PATHFREE_ORACLE_CAP", "25")
        .args(["oracle", "mis", "--graph"])
        .arg(&f)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["value"], 24);
}

#[test]
fn bench_empty_and_timeout() {
    let dir = tempdir("bench");

    let empty = write(&dir, "empty.conf", "# nothing but comments\n");
    let out = bin()
        .args(["bench", "--config"])
        .arg(&empty)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).trim().is_empty());

    // A 0 ms budget times out even trivial instances.
    let conf = write(
        &dir,
        "t.conf",
        "kind=chain t=5 n=40 seeds=1..2 timeout_ms=0\n",
    );
    let out = bin()
        .args(["bench", "--config"])
        .arg(&conf)
        .args(["--workers", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let rows: Vec<serde_json::Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), 2);
    for row in &rows {
        assert_eq!(row["timed_out"], true);
    }
}

#[test]
fn bench_oracle_check_rows() {
    let dir = tempdir("bench2");
    let conf = write(
        &dir,
        "suite.conf",
        "kind=sample t=5 n=12 p=0.7 seeds=1..3 timeout_ms=20000\nkind=windmill t=5 n=15 seeds=4 timeout_ms=20000\n",
    );
    let out = bin()
        .args(["bench", "--config"])
        .arg(&conf)
        .args(["--oracle-check", "--workers", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let rows: Vec<serde_json::Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    // 4 instance rows in id order, plus the trend record.
    assert_eq!(rows.len(), 5);
    for (i, row) in rows[..4].iter().enumerate() {
        assert_eq!(row["id"], i as u64);
        assert_eq!(row["timed_out"], false);
        assert_eq!(row["oracle_ok"], true);
    }
    assert!(rows[4]["trend"]["slope"].as_f64().is_some());
}
