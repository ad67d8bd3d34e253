use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iwcontract"))
        .args(args)
        .env("IWCONTRACT_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("iwcontract-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn verify_a2_all_suites_passes() {
    let out = run(&["verify", "--family", "A", "--rank", "2", "--suites", "all", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let checks = report["checks"].as_array().unwrap();
    assert!(checks.len() > 20);
    assert!(checks.iter().all(|c| c["status"] == "pass"));
    assert_eq!(report["seed"], 7);
    assert_eq!(report["mode"], "symbolic");
}

#[test]
fn d2_is_a_usage_error() {
    let out = run(&["build", "--family", "D", "--rank", "2"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("usage:"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn c2_invariants_file() {
    let path = tmp("inv.json");
    let out = run(&["invariants", "--family", "C", "--rank", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let gens = doc["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 2);
    let bideg: Vec<Value> = gens.iter().map(|g| g["bidegree"].clone()).collect();
    assert_eq!(bideg, vec![serde_json::json!([1, 1]), serde_json::json!([3, 1])]);
}

#[test]
fn output_is_byte_deterministic() {
    let args = ["verify", "--family", "B", "--rank", "2", "--mode", "sampled", "--samples", "5", "--seed", "3"];
    let a = run(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_iwcontract")).args(args).env("IWCONTRACT_THREADS", "1").output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn build_schema() {
    let out = run(&["build", "--family", "B", "--rank", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["dim"], 10);
    assert_eq!(doc["matrix_dim"], 5);
    assert_eq!(doc["labels"].as_array().unwrap().len(), 10);
    assert_eq!(doc["labels"][0], "t1");
    assert_eq!(doc["matrices"][0].as_array().unwrap().len(), 5);
    assert_eq!(doc["roots"]["coxeter"], 4);
    assert_eq!(doc["roots"]["theta"], serde_json::json!([1, 2]));
}

#[test]
fn index_command() {
    let out = run(&["index", "--family", "C", "--rank", "3", "--samples", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["estimate"]["index"], 3);
    assert_eq!(doc["estimate"]["conclusive"], true);
}

#[test]
fn usage_errors_exit_3() {
    for args in [
        vec!["verify", "--family", "C", "--rank", "2", "--suites", "nullcone"],
        vec!["verify", "--family", "A", "--rank", "2", "--suites", "structure,bogus"],
        vec!["verify", "--family", "Q", "--rank", "2"],
        vec!["verify", "--family", "A"],
        vec![],
    ] {
        assert_eq!(run(&args).status.code(), Some(3), "{args:?}");
    }
    let bad_threads = Command::new(env!("CARGO_BIN_EXE_iwcontract"))
        .args(["verify", "--family", "A", "--rank", "1"])
        .env("IWCONTRACT_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad_threads.status.code(), Some(3));
}
