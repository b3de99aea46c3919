use std::process::{Command, Output};

use serde_json::Value;

fn hexapauli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hexapauli"))
        .args(args)
        .env_remove("HEXAPAULI_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = hexapauli(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let v: Value = serde_json::from_str(&stdout(args)).unwrap();
    assert_eq!(v["schema"], "hexapauli/1");
    v
}

fn golden(name: &str) -> String {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn table_csvs_match_golden() {
    assert_eq!(stdout(&["table", "1"]), golden("table1.csv"));
    assert_eq!(stdout(&["table", "2"]), golden("table2.csv"));
}

#[test]
fn table_cells() {
    let t1 = stdout(&["table", "1"]);
    let rows: Vec<&str> = t1.lines().collect();
    assert_eq!(rows.len(), 8);
    assert!(rows[1].starts_with("IIX,\"ZZX,symmetric\""));
    let t2 = stdout(&["table", "2"]);
    assert!(t2.lines().nth(1).unwrap().starts_with("i1,a1"));
}

#[test]
fn table_json() {
    let v = json(&["table", "1", "--format", "json"]);
    assert_eq!(v["rows"][0]["cells"][0]["entry"], "ZZX");
    assert_eq!(v["rows"][0]["cells"][0]["symmetric"], true);
    let v = json(&["table", "2", "--format", "json"]);
    assert_eq!(v["rows"][0]["cells"][0], "a1");
}

#[test]
fn unknown_table_fails() {
    let out = hexapauli(&["table", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown table id 3"));
}

#[test]
fn graphs_match_golden() {
    for g in ["heawood", "coxeter", "oriented_fano"] {
        assert_eq!(
            stdout(&["export-graph", g]),
            golden(&format!("{g}.dot")),
            "{g}"
        );
    }
}

fn counts(dot: &str, edge: &str) -> (usize, usize) {
    let nodes = dot
        .lines()
        .filter(|l| l.contains("[label=") && !l.contains(edge))
        .count();
    let edges = dot.lines().filter(|l| l.contains(edge)).count();
    (nodes, edges)
}

#[test]
fn graph_sizes() {
    assert_eq!(
        counts(&stdout(&["export-graph", "coxeter"]), " -- "),
        (28, 42)
    );
    assert_eq!(
        counts(&stdout(&["export-graph", "heawood"]), " -- "),
        (14, 21)
    );
    assert_eq!(
        counts(&stdout(&["export-graph", "hexagon"]), " -- "),
        (63, 189)
    );
    assert_eq!(
        counts(&stdout(&["export-graph", "fano_incidence"]), " -- "),
        (14, 21)
    );
    let (n, e) = counts(&stdout(&["export-graph", "oriented_fano"]), " -> ");
    assert_eq!((n, e), (7, 21));
}

#[test]
fn graph_rejects_other_formats() {
    assert_eq!(
        hexapauli(&["export-graph", "hexagon", "--format", "json"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn entropy_four_charge() {
    let v = json(&[
        "entropy",
        r#"{"charges": {"a1": 1, "a2": 1, "a4": 1, "a7": -1}}"#,
    ]);
    assert_eq!(v["j4_cartan"]["numerator"], "4");
    assert_eq!(v["j4_cremmer"]["re"]["numerator"], "4");
    assert_eq!(v["forms_agree"], true);
    assert_eq!(v["classification"], "BPS");
    assert_eq!(v["entropy"], "6.283185307180");
}

#[test]
fn entropy_zero_and_ghz() {
    let v = json(&["entropy", r#"{"charges": {}}"#]);
    assert_eq!(v["entropy"], "0.000000000000");
    let v = json(&["entropy", r#"{"charges": {"a0": 1, "a7": 1}}"#]);
    assert_eq!(v["j4_cartan"]["numerator"], "-1");
    assert_eq!(v["classification"], "non-BPS");
}

#[test]
fn entropy_from_matrix_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("charges.json");
    let zero = vec![vec![0; 8]; 8];
    std::fs::write(
        &path,
        serde_json::json!({ "x": zero, "y": zero }).to_string(),
    )
    .unwrap();
    let v = json(&["entropy", path.to_str().unwrap()]);
    assert_eq!(v["j4_cartan"]["numerator"], "0");
}

#[test]
fn entropy_rejects_bad_input() {
    let mut x = vec![vec![0; 8]; 8];
    x[0][1] = 1;
    let doc = serde_json::json!({ "x": x, "y": vec![vec![0; 8]; 8] }).to_string();
    let out = hexapauli(&["entropy", &doc]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("antisymmetric"));
    assert_eq!(hexapauli(&["entropy", "{not json"]).status.code(), Some(2));
}

#[test]
fn certify_scopes() {
    let text = stdout(&["certify", "hexagon"]);
    assert!(text.contains("girth=12"));
    assert!(text.contains("aut_order=12096"));
    let text = stdout(&["certify", "mub"]);
    assert!(text.contains("bases=9, unbiased_pairs=36"));
    let v = json(&["certify", "fano", "--format", "json"]);
    assert_eq!(v["passed"], true);
    assert!(hexapauli(&["certify", "nothing"]).status.code() != Some(0));
}

#[test]
fn certify_all_with_threads() {
    let out = Command::new(env!("CARGO_BIN_EXE_hexapauli"))
        .args(["certify", "all", "--trials", "50", "--format", "json"])
        .env("HEXAPAULI_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["trials"], 50);
    assert_eq!(v["seed"], 20080911);
}

#[test]
fn bad_thread_count() {
    let out = Command::new(env!("CARGO_BIN_EXE_hexapauli"))
        .args(["table", "1"])
        .env("HEXAPAULI_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn orbits_json() {
    let v = json(&["orbits"]);
    let orbits = v["orbits"].as_array().unwrap();
    assert_eq!(orbits.len(), 9);
    assert!(orbits
        .iter()
        .all(|o| o["members"].as_array().unwrap().len() == 7));
    assert!(stdout(&["orbits", "--format", "text"]).lines().count() == 9);
}

#[test]
fn mub_report_json() {
    let v = json(&["mub-report"]);
    assert_eq!(v["bases"], 9);
    assert_eq!(v["unbiased_pairs"], 36);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let out = hexapauli(&["table", "1", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(path).unwrap(), golden("table1.csv"));
}

#[test]
fn output_is_deterministic() {
    assert_eq!(
        stdout(&["export-graph", "hexagon"]),
        stdout(&["export-graph", "hexagon"])
    );
    assert_eq!(stdout(&["mub-report"]), stdout(&["mub-report"]));
}
