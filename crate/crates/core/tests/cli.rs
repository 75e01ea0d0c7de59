//! Exercises the binary surface: subcommand routing, exit codes, and
//! output shapes.

use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn ybg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ybg")).args(args).output().unwrap()
}

#[test]
fn validate_exit_codes() {
    let out = ybg(&["validate", &fixture("trivial3.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");

    let dir = tempdir();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{ "n": 2, "sigma": [[1,1],[1,2]] }"#).unwrap();
    let out = ybg(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a bijection"));
}

#[test]
fn usage_error_is_exit_2() {
    let out = ybg(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn guard_exceeded_is_exit_3() {
    let out = ybg(&["germ", &fixture("p3.json"), "--max-germ", "10"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn dim_prints_paper_numbers() {
    let out = ybg(&["dim", &fixture("example15.json")]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("dimension = 10 (bound 12)"), "{stdout}");
}

#[test]
fn germ_list_has_one_line_per_simple() {
    let out = ybg(&["germ", &fixture("p3.json"), "--list"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 27);
}

#[test]
fn germ_json_is_sorted_by_vector() {
    let out = ybg(&["germ", &fixture("example15.json"), "--json"]);
    let entries: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let vectors: Vec<Vec<i64>> = entries
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            e["vector"].as_array().unwrap().iter().map(|v| v.as_i64().unwrap()).collect()
        })
        .collect();
    assert_eq!(vectors.len(), 16);
    let mut sorted = vectors.clone();
    sorted.sort();
    assert_eq!(vectors, sorted);
}

#[test]
fn brace_check_passes_on_fixtures() {
    for name in ["example15.json", "p3.json", "trivial2.json"] {
        let out = ybg(&["brace-check", &fixture(name)]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert!(String::from_utf8_lossy(&out.stdout).starts_with("pass"));
    }
}

#[test]
fn rep_writes_report_file() {
    let dir = tempdir();
    let path = dir.join("rep.json");
    let out = ybg(&["rep", &fixture("p3.json"), "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["dimension"], 6);
    assert_eq!(report["spanning"].as_array().unwrap().len(), 6);
    assert_eq!(report["basis_indices"].as_array().unwrap().len(), 6);
}

#[test]
fn oracle_passes_on_example15() {
    let out = ybg(&["oracle", &fixture("example15.json"), "--radius", "4", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["span_agrees_with_dimension"], true);
    assert_eq!(report["injectivity"]["passed"], true);
    assert_eq!(report["counts"]["passed"], true);
}

#[test]
fn element_prints_decomposition() {
    let out = ybg(&["element", &fixture("example15.json"), "--word", "1 1 2"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("pi = [2, 1, 0, 0]"), "{stdout}");
    assert!(stdout.contains("simple part = [0, 1, 0, 0]"), "{stdout}");
    assert!(stdout.contains("exponents = [1, 0, 0, 0]"), "{stdout}");
}

#[test]
fn info_json_roundtrips() {
    let out = ybg(&["info", &fixture("example15.json"), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["class_m"], 2);
    assert_eq!(v["multipermutation_level"], "irretractable");
    assert_eq!(v["d_table"], serde_json::json!([1, 4, 3, 2]));
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("ybg-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
