use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nodeprice"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

/// Two source nodes (1 and 7), so a virtual root is added.
const SMALL: &str = "# test graph\n1 2\n1 3\n2 4\n3 4\n4 5\n5 6\n7 5\n6 2\n";

fn generated(dir: &Path, n: usize, m: usize, seed: u64) -> PathBuf {
    let path = dir.join(format!("g_{n}_{m}_{seed}.txt"));
    let out = run(&[
        "gen", "--nodes", &n.to_string(), "--edges", &m.to_string(), "--seed", &seed.to_string(),
        "--output", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    path
}

#[test]
fn price_emits_one_row_per_real_node() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "g.txt", SMALL);
    let text = stdout(&run(&["price", "--input", input.to_str().unwrap(), "--similarity", "exact"]));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("node_label,criticality,mean_similarity,substitutability,price"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 7);
    let labels: Vec<&str> = rows.iter().map(|r| r[0]).collect();
    assert_eq!(labels, ["1", "2", "3", "4", "5", "6", "7"]);
    let total: f64 = rows.iter().map(|r| r[4].parse::<f64>().unwrap()).sum();
    assert!((total - 1.0).abs() < 1e-9);
}

#[test]
fn approx_price_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let input = generated(dir.path(), 300, 1500, 4);
    let args = ["price", "--input", input.to_str().unwrap(), "--similarity", "minhash-lsh", "--seed", "42"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let threaded = run(&[&args[..], &["--threads", "3"]].concat());
    assert_eq!(first.stdout, threaded.stdout);
}

#[test]
fn json_report_carries_config_and_timings() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "g.txt", SMALL);
    let report = dir.path().join("report.json");
    let out = run(&[
        "price", "--input", input.to_str().unwrap(), "--criticality", "shortest-path",
        "--report", report.to_str().unwrap(),
    ]);
    stdout(&out);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(v["config"]["criticality_mode"], "shortest_path");
    assert_eq!(v["virtual_root_added"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 7);
    assert!(v["timings"]["total_ms"].as_f64().unwrap() >= 0.0);
}

#[test]
fn config_file_sets_pipeline_and_flags_override() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "g.txt", SMALL);
    let config = write(dir.path(), "c.json", r#"{"similarity_mode": "minhash_lsh", "num_perm": 64, "seed": 3}"#);
    let out = run(&[
        "--format", "json", "price", "--input", input.to_str().unwrap(), "--config", config.to_str().unwrap(),
        "--seed", "9",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["config"]["similarity_mode"], "minhash_lsh");
    assert_eq!(v["config"]["num_perm"], 64);
    assert_eq!(v["config"]["seed"], 9);
}

#[test]
fn usage_and_input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "g.txt", SMALL);
    let bad = write(dir.path(), "bad.txt", "1 2\n2 oops\n");
    let config = write(dir.path(), "c.json", r#"{"no_such_field": 1}"#);
    let missing = dir.path().join("missing.txt");
    let cases: Vec<Vec<&str>> = vec![
        vec!["price", "--input", missing.to_str().unwrap()],
        vec!["price", "--input", bad.to_str().unwrap()],
        vec!["price"],
        vec!["price", "--input", input.to_str().unwrap(), "--config", config.to_str().unwrap()],
        vec!["price", "--input", input.to_str().unwrap(), "--threshold", "1.5", "--similarity", "minhash-lsh"],
        vec!["price", "--input", input.to_str().unwrap(), "--root", "99"],
        vec!["compare", "--input", input.to_str().unwrap(), "--methods", "degree,nonsense"],
        vec!["baseline", "--input", input.to_str().unwrap(), "--method", "pagerank"],
        vec!["bench", "--mode", "exact", "--sizes", "8000", "--seeds", "1"],
        vec!["no-such-command"],
    ];
    for args in cases {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn pipeline_failure_exits_3() {
    let dir = TempDir::new().unwrap();
    let input = generated(dir.path(), 50, 200, 1);
    let out = run(&["baseline", "--input", input.to_str().unwrap(), "--method", "eigenvector", "--max-iter", "1"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn similarity_and_domtree_outputs() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "g.txt", SMALL);
    let text = stdout(&run(&["similarity", "--input", input.to_str().unwrap(), "--similarity", "minhash-lsh"]));
    assert_eq!(text.lines().next(), Some("node_label,mode,score"));
    assert_eq!(text.lines().skip(1).filter(|l| l.split(',').nth(1) == Some("approx")).count(), 7);

    let text = stdout(&run(&["domtree", "--input", input.to_str().unwrap()]));
    let pairs: Vec<&str> = text.lines().collect();
    assert_eq!(pairs.len(), 7);
    for expected in ["1 *", "7 *", "4 *", "5 *", "2 *", "3 1", "6 5"] {
        assert!(pairs.contains(&expected), "missing {expected} in {pairs:?}");
    }
    let text = stdout(&run(&["domtree", "--input", input.to_str().unwrap(), "--root", "1"]));
    assert!(text.lines().any(|l| l == "5 4"));
}

#[test]
fn baseline_shares_price_schema() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "g.txt", SMALL);
    for method in ["shapley", "entropy", "degree", "eigenvector"] {
        let text = stdout(&run(&["baseline", "--input", input.to_str().unwrap(), "--method", method]));
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("node_label,criticality,mean_similarity,substitutability,price"));
        let rows: Vec<&str> = lines.collect();
        assert_eq!(rows.len(), 7, "{method}");
        assert!(rows.iter().all(|r| r.split(',').filter(|c| c.is_empty()).count() == 3));
    }
}

#[test]
fn compare_long_format_and_summary() {
    let dir = TempDir::new().unwrap();
    let with_attrs = "1 2 a\n1 3 a\n2 4 a\n3 4 a\n4 5 a\n5 6 a\n7 5 a\n";
    let input = write(dir.path(), "g.txt", with_attrs);
    let summary = dir.path().join("summary.csv");
    let text = stdout(&run(&[
        "compare", "--input", input.to_str().unwrap(), "--summary", summary.to_str().unwrap(),
    ]));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("node,method,price"));
    let mut counts = std::collections::BTreeMap::new();
    for line in lines {
        *counts.entry(line.split(',').nth(1).unwrap().to_string()).or_insert(0) += 1;
    }
    assert_eq!(counts.len(), 5);
    assert!(counts.values().all(|&c| c == 7), "{counts:?}");

    let summary = fs::read_to_string(summary).unwrap();
    let entropy = summary.lines().find(|l| l.starts_with("entropy,")).unwrap();
    let std_dev: f64 = entropy.split(',').nth(3).unwrap().parse().unwrap();
    assert!(std_dev < 1e-15, "{entropy}");
}

#[test]
fn compare_sparse_more_dispersed_than_dense() {
    let dir = TempDir::new().unwrap();
    let std_of = |path: &Path| -> f64 {
        let summary = dir.path().join("s.csv");
        stdout(&run(&[
            "compare", "--input", path.to_str().unwrap(), "--methods", "substitutability",
            "--summary", summary.to_str().unwrap(),
        ]));
        let text = fs::read_to_string(&summary).unwrap();
        text.lines().nth(1).unwrap().split(',').nth(3).unwrap().parse().unwrap()
    };
    let sparse = generated(dir.path(), 500, 1000, 2);
    let dense = generated(dir.path(), 500, 20000, 2);
    assert!(std_of(&sparse) > std_of(&dense));
}

#[test]
fn bench_record_count() {
    let dir = TempDir::new().unwrap();
    let ratios = dir.path().join("ratios.csv");
    let text = stdout(&run(&[
        "bench", "--sizes", "100,200", "--seeds", "3", "--mode", "both", "--repeats", "1",
        "--ratios", ratios.to_str().unwrap(),
    ]));
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 2 * 2 * 3);
    let ratio_rows = fs::read_to_string(ratios).unwrap();
    assert_eq!(ratio_rows.lines().count(), 1 + 2);
}

#[test]
fn gen_is_seeded() {
    let a = stdout(&run(&["gen", "--nodes", "50", "--edges", "120", "--seed", "8"]));
    let b = stdout(&run(&["gen", "--nodes", "50", "--edges", "120", "--seed", "8"]));
    let c = stdout(&run(&["gen", "--nodes", "50", "--edges", "120", "--seed", "9"]));
    assert_eq!(a, b);
    assert_ne!(a, c);
    assert_eq!(a.lines().filter(|l| !l.starts_with('#')).count(), 120);
}
