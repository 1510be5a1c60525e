mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::*;

fn eqdac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eqdac")).args(args).output().unwrap()
}

fn fixture_path(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).to_string_lossy().into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn check_reports_a_witness() {
    let o = eqdac(&["check", &fixture_path("flow_oid.dc"), &fixture_path("flow_iid.dc"), "--json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["outcome"], "not_equivalent");
    assert_eq!(v["stage"], "divergence");
    assert!(v["witness"].is_object());
}

#[test]
fn check_plain_output() {
    let o = eqdac(&["check", &fixture_path("balance_direct.dc"), &fixture_path("balance_temp.dc")]);
    assert_eq!(code(&o), 0);
    let out = String::from_utf8_lossy(&o.stdout);
    assert!(out.starts_with("equivalent (stage: isomorphism)"), "{out}");
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(code(&eqdac(&[])), 1);
    assert_eq!(code(&eqdac(&["check", "only-one.dc"])), 1);
    assert_eq!(code(&eqdac(&["check", "missing-a.dc", "missing-b.dc"])), 1);
    let all_off = eqdac(&[
        "check",
        &fixture_path("flow_oid.dc"),
        &fixture_path("flow_iid.dc"),
        "--no-divergence",
        "--no-isomorphism",
        "--no-smt",
    ]);
    assert_eq!(code(&all_off), 1);
    assert!(!all_off.stderr.is_empty());
    assert_eq!(code(&eqdac(&["--help"])), 0);
}

#[test]
fn parse_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.dc");
    std::fs::write(&bad, "int t.a; assert(t.a >").unwrap();
    let o = eqdac(&["check", bad.to_str().unwrap(), &fixture_path("flow_oid.dc")]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.dc"));
}

#[test]
fn missing_solver_exits_with_two() {
    let o = eqdac(&[
        "check",
        &fixture_path("accounts_oid_first.dc"),
        &fixture_path("accounts_iid_first.dc"),
        "--solver-cmd",
        "/nonexistent/solver -in",
        "--json",
    ]);
    assert_eq!(code(&o), 2);
    assert_eq!(json(&o)["outcome"], "unknown");
}

#[test]
fn gen_cluster_and_search_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus");
    let c = corpus.to_str().unwrap();
    let o = eqdac(&["gen", "--seed", "4", "--bases", "4", "--variants", "2", "--out", c]);
    assert_eq!(code(&o), 0);
    let labels: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(corpus.join("labels.json")).unwrap()).unwrap();
    assert!(labels.is_object() || labels.is_array());

    let report = dir.path().join("report.json");
    let mut args = vec!["cluster", c, "--out", report.to_str().unwrap(), "--jobs", "1"];
    if !solver_available() {
        args.push("--no-smt");
    }
    assert_eq!(code(&eqdac(&args)), 0);
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["total"], 8);
    assert!(r["clusters"].as_array().unwrap().iter().all(|c| c.as_array().unwrap().len() >= 2));

    let query = corpus.join("b000v0.dc");
    let mut args = vec!["search", query.to_str().unwrap(), c, "--json"];
    if !solver_available() {
        args.push("--no-smt");
    }
    let o = eqdac(&args);
    assert_eq!(code(&o), 0);
    let s = json(&o);
    let ids: Vec<&str> = s["matches"].as_array().unwrap().iter().map(|m| m["id"].as_str().unwrap()).collect();
    assert!(ids.contains(&"b000v0"));
    assert!(ids.contains(&"b000v1"));
    assert_eq!(s["candidates"], 8);
}
