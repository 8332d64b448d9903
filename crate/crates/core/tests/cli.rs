// SPDX-License-Identifier: MIT

use std::process::{Command, Output};

use serde_json::Value;

fn run(cache: &std::path::Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_poisson-inv")).args(args).env("POISSON_INV_CACHE", cache).output().expect("binary runs")
}

#[test]
fn dims_json_and_warm_cache_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--quiet", "dims", "--kind", "inv", "--n", "4", "--d", "1"];
    let cold = run(dir.path(), &args);
    assert_eq!(cold.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&cold.stdout).unwrap();
    assert_eq!(v["kind"], "inv");
    let dims: Vec<u64> = v["dims"].as_array().unwrap().iter().map(|e| e["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![1, 6, 10, 6, 1]);
    let warm = run(dir.path(), &args);
    assert_eq!(cold.stdout, warm.stdout);
}

#[test]
fn quant_dims_for_two_slots() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["--quiet", "--format", "csv", "dims", "--kind", "quant", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "kind,n,d,m,dim\nquant,2,1,0,1\nquant,2,1,1,1\n");
}

#[test]
fn decompose_reports_sign_in_order_eight() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["--quiet", "decompose", "--kind", "inv", "--n", "5", "--m", "4", "--group", "n+1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let sign = v["entries"].as_array().unwrap().iter().find(|e| e["lambda"] == "1,1,1,1,1").expect("sign present");
    assert_eq!(sign["multiplicity"], 1);
    assert_eq!(sign["full_lambda"], "1,1,1,1,1,1");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), &["dims", "--kind", "bogus", "--n", "3"]).status.code(), Some(2));
    assert_eq!(
        run(dir.path(), &["--quiet", "dims", "--kind", "inv", "--n", "3", "--d", "2", "--method", "harmonic", "--m-max", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(dir.path(), &["--quiet", "decompose", "--kind", "inv", "--n", "6", "--m", "4"]).status.code(), Some(2));
    let file = dir.path().join("occupied");
    std::fs::write(&file, b"").unwrap();
    assert_eq!(run(&file, &["--quiet", "dims", "--kind", "inv", "--n", "2"]).status.code(), Some(3));
}

#[test]
fn kw_suite_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["--quiet", "verify", "--suite", "kw"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["checks"].as_array().unwrap().len(), 3);
}
