use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unipotent")).args(args).output().expect("binary runs")
}

fn stderr_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).expect("error JSON on stderr")
}

fn construct_as2(dir: &Path) -> String {
    let out = dir.join("as2.json").to_string_lossy().into_owned();
    let o = run(&["construct", "artin-schreier", "--q", "2", "--a", "1/t", "--b", "1/(t+1)", "--c", "t", "--out", &out]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    out
}

#[test]
fn construct_and_verify_as_p2() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct_as2(dir.path());
    let trace: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(trace["schemaVersion"], 1);
    assert_eq!(trace["generators"].as_array().unwrap().len(), 6);
    let o = run(&["--json", "verify", &path]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["pass"], true);
    let order = report["checks"].as_array().unwrap().iter().find(|c| c["name"] == "group order p^6").unwrap();
    assert_eq!(order["witness"], "64");
}

#[test]
fn kummer_search_over_q() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k.json");
    let out = out.to_str().unwrap();
    let o = run(&["construct", "kummer", "--base", "Q", "--p", "2", "--search", "5", "--out", out]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(run(&["verify", out]).status.code(), Some(0));
}

#[test]
fn malformed_expression_exits_2() {
    let o = run(&["construct", "artin-schreier", "--q", "2", "--a", "1/(t", "--b", "1", "--c", "t"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"]["kind"], "parse");
}

#[test]
fn precondition_failure_exits_2() {
    // b = a makes the triple dependent
    let o = run(&["construct", "artin-schreier", "--q", "2", "--a", "1/t", "--b", "1/t", "--c", "t"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"]["kind"], "precondition");
}

#[test]
fn corrupted_trace_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct_as2(dir.path());
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    // rhs of the generator for A: change one numerator coefficient
    let c = &mut v["generators"][3]["rhs"][0]["num"][0];
    *c = Value::from(1 - c.as_u64().unwrap());
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, serde_json::to_string(&v).unwrap()).unwrap();
    let o = run(&["verify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL"));
}

#[test]
fn empty_trace_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("empty.json");
    std::fs::write(&p, "").unwrap();
    let o = run(&["verify", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"]["kind"], "parse");
}

#[test]
fn catalog_listing() {
    let o = run(&["catalog"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.lines().count() >= 4);
    let o = run(&["catalog", "--kind", "kummer", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let recs = v["records"].as_array().unwrap();
    assert!(!recs.is_empty());
    assert!(recs.iter().all(|r| r["kind"] == "kummer"));
    assert_eq!(v["schemaVersion"], 1);
}

#[test]
fn catalog_written_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("catalog.json");
    assert!(run(&["--json", "--out", p.to_str().unwrap(), "catalog"]).status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert!(v["records"].as_array().unwrap().len() >= 4);
    // no temporary files left behind
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn massey_report_for_as_p2() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct_as2(dir.path());
    let rep = dir.path().join("massey.json");
    let o = run(&["--seed", "3", "massey", "--trace", &path, "--report", rep.to_str().unwrap(), "--cases", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&rep).unwrap()).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["groupOrder"], 64);
    assert_eq!(v["witnesses"]["witness"].as_array().unwrap().len(), 64);
}

#[test]
fn unknown_command_exits_2() {
    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"]["kind"], "usage");
}
