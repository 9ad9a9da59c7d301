mod common;

use std::path::Path;
use std::process::{Command, Output};

use inpath::graph::read_edge_list;

fn inpath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_inpath")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_then_oracle_reports_a_valid_witness() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    let o = inpath(&["--seed", "3", "gen", "--n", "12", "--p", "0.3", "--out", arg(&graph)]);
    assert_eq!(o.status.code(), Some(0));
    let g = read_edge_list(std::io::BufReader::new(std::fs::File::open(&graph).unwrap())).unwrap();
    assert_eq!(g.vertex_count(), 12);

    let o = inpath(&["--format", "json", "oracle", "induced-path", "--input", arg(&graph)]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let witness: Vec<usize> = serde_json::from_value(v["witness"].clone()).unwrap();
    assert_eq!(v["edge_length"].as_u64().unwrap() as usize + 1, witness.len());
    assert!(common::matrix_is_induced_path(&g, &witness));
}

#[test]
fn pipeline_json_is_certified_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    let args = ["--seed", "9", "--format", "json", "pipeline", "--n", "2000", "--d", "16", "--emit-graph", arg(&graph)];
    let a = inpath(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&inpath(&args)));
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["certified"], true);
    let path: Vec<usize> = serde_json::from_value(v["path"].clone()).unwrap();
    let g = read_edge_list(std::io::BufReader::new(std::fs::File::open(&graph).unwrap())).unwrap();
    assert!(common::hashset_is_induced_path(&g, &path));
}

#[test]
fn experiment_and_regress_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let rows = dir.path().join("rows.csv");
    let summary = dir.path().join("sum.csv");
    let o = inpath(&[
        "--seed", "5", "experiment", "--n", "1500", "--d", "8,12", "--seeds", "3",
        "--out", arg(&rows), "--summary-out", arg(&summary),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&rows).unwrap();
    assert!(text.starts_with("schema_version,seed,n,d,eps,mode,L,m,N_components,"));
    assert_eq!(text.lines().count(), 7);

    let o = inpath(&["regress", "--report", arg(&rows), "--baseline", arg(&summary)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS"));

    // Double the first baseline mean: the report now sits 50% below it.
    let sum = std::fs::read_to_string(&summary).unwrap();
    let mut lines: Vec<String> = sum.lines().map(String::from).collect();
    let mut fields: Vec<String> = lines[1].split(',').map(String::from).collect();
    fields[7] = (fields[7].parse::<f64>().unwrap() * 2.0).to_string();
    lines[1] = fields.join(",");
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, lines.join("\n") + "\n").unwrap();
    let o = inpath(&["regress", "--report", arg(&rows), "--baseline", arg(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL"));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["pipeline", "--n", "10", "--d", "16"][..],
        &["pipeline", "--n", "1000", "--d", "8", "--eps", "1.5"],
        &["gen", "--n", "5"],
        &["moments", "compatible-bound", "--k", "3", "--s", "4", "--c", "1", "--delta", "2", "--n", "9"],
        &["no-such-command"],
    ] {
        assert_eq!(inpath(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn moments_text_output() {
    let o = inpath(&["moments", "subtree-bound", "--delta", "3", "--s", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let value: f64 = out.lines().find_map(|l| l.strip_prefix("value\t")).unwrap().parse().unwrap();
    assert!((value - (3.0 * std::f64::consts::E).powi(3)).abs() < 1e-9);
}
