use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_constella");

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("CONSTELLA_MAX_SIZE")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const MONOID_01A: &str = r#"{"size":3,"mul":[[0,0,0],[0,1,2],[0,2,0]],"labels":["0","1","a"],"zero":0}"#;

#[test]
fn build_export_import_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    for family in [
        &["ttransf", "2", "--adjoin-zero"][..],
        &["ptransf", "2"],
        &["rel", "2", "--composition", "demonic"],
        &["trel", "2", "--adjoin-zero"],
        &["lt-partition", "2"],
    ] {
        let first = dir.path().join("first.json");
        let mut args = vec!["build"];
        args.extend_from_slice(family);
        args.extend(["-o", s(&first)]);
        assert_eq!(code(&run(&args)), 0, "{family:?}");
        let again = run(&["build", "table", s(&first)]);
        assert_eq!(code(&again), 0);
        assert_eq!(again.stdout, std::fs::read(&first).unwrap(), "{family:?}");
    }
}

#[test]
fn build_sizes() {
    let t2 = stdout_json(&run(&["build", "ttransf", "2", "--adjoin-zero"]));
    assert_eq!(t2["size"], 5);
    let rel = stdout_json(&run(&["build", "rel", "2", "--composition", "demonic"]));
    assert_eq!(rel["size"], 16);
}

#[test]
fn usage_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&run(&["build", "ttransf", "two"])), 2);
    assert_eq!(code(&run(&["build", "ptransf", "2", "--adjoin-zero"])), 2);
    assert_eq!(code(&run(&["build", "ttransf", "2", "--composition", "demonic"])), 2);
    assert_eq!(code(&run(&["build", "table", "/nonexistent/table.json"])), 2);
    let junk = write(&dir, "junk.json", "not json");
    assert_eq!(code(&run(&["analyze", s(&junk)])), 2);
    let ragged = write(&dir, "ragged.json", r#"{"size":2,"mul":[[0,1],[1]]}"#);
    assert_eq!(code(&run(&["build", "table", s(&ragged)])), 2);
    assert_eq!(code(&run(&["reproduce", "no-such-example"])), 2);
}

#[test]
fn cap_exits_3() {
    let out = Command::new(BIN)
        .args(["build", "ttransf", "3"])
        .env("CONSTELLA_MAX_SIZE", "10")
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
    assert_eq!(code(&run(&["--max-size", "10", "build", "rel", "2"])), 3);
}

#[test]
fn broken_table_fails_with_witness() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", r#"{"size":2,"mul":[[0,0],[1,0]]}"#);
    let out = run(&["build", "table", s(&bad)]);
    assert_eq!(code(&out), 1);
    let v = stdout_json(&out);
    assert_eq!(v["pass"], false);
    assert_eq!(v["witness"].as_array().unwrap().len(), 3);
}

#[test]
fn ordinary_relations_fail_r4() {
    let dir = TempDir::new().unwrap();
    let rel = dir.path().join("rel.json");
    run(&["build", "rel", "2", "-o", s(&rel)]);
    let out = run(&["verify", s(&rel), "--laws", "left-restriction"]);
    assert_eq!(code(&out), 1);
    let v = stdout_json(&out);
    assert_eq!(v["pass"], false);
    let r4 = v["laws"].as_array().unwrap().iter().find(|l| l["law"] == "R4").unwrap();
    assert_eq!(r4["status"], "fail");
    assert!(r4["witness"].is_array());

    let demonic = dir.path().join("demonic.json");
    run(&["build", "rel", "2", "--composition", "demonic", "-o", s(&demonic)]);
    assert_eq!(code(&run(&["verify", s(&demonic), "--laws", "left-restriction"])), 0);
}

#[test]
fn partial_transformations_pass_left_restriction() {
    let dir = TempDir::new().unwrap();
    let pt = dir.path().join("pt.json");
    run(&["build", "ptransf", "2", "-o", s(&pt)]);
    assert_eq!(code(&run(&["verify", s(&pt), "--laws", "left-restriction"])), 0);
    assert_eq!(code(&run(&["verify", s(&pt), "--laws", "constellation"])), 0);
}

#[test]
fn analyze_01a_is_not_protomodal() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.json", MONOID_01A);
    let out = run(&["analyze", s(&m)]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["protomodal"]["protomodal"], false);
    let first = &v["protomodal"]["failures"][0];
    assert_eq!(first["s"], "a");
    assert_eq!(first["e"], "0");
    assert_eq!(first["equalizer"], serde_json::json!(["0", "a"]));
}

#[test]
fn analyze_trivial_monoid() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "trivial.json", r#"{"size":1,"mul":[[0]]}"#);
    let v = stdout_json(&run(&["analyze", s(&m)]));
    assert_eq!(v["e_set"].as_array().unwrap().len(), 1);
    assert_eq!(v["inductive"], true);
}

#[test]
fn complete_rest0_sizes() {
    let dir = TempDir::new().unwrap();
    let t2 = dir.path().join("t2.json");
    run(&["build", "ttransf", "2", "--adjoin-zero", "-o", s(&t2)]);
    let v = stdout_json(&run(&["complete", s(&t2), "--variant", "rest0"]));
    assert_eq!(v["size"], 9);
    let trel = dir.path().join("trel.json");
    run(&["build", "trel", "2", "--adjoin-zero", "-o", s(&trel)]);
    let e = "0;{(0,0),(1,1)};{(0,0),(1,0)};{(0,1),(1,1)}";
    let v = stdout_json(&run(&["complete", s(&trel), "--e-set", e, "--variant", "rest0"]));
    assert_eq!(v["size"], 16);
}

#[test]
fn complete_with_identity_copies_input() {
    let dir = TempDir::new().unwrap();
    let t2 = dir.path().join("t2.json");
    run(&["build", "ttransf", "2", "--adjoin-zero", "-o", s(&t2)]);
    let input: Value = serde_json::from_str(&std::fs::read_to_string(&t2).unwrap()).unwrap();
    let v = stdout_json(&run(&["complete", s(&t2), "--e-set", "one", "--variant", "rest"]));
    assert_eq!(v["size"], input["size"]);
    assert_eq!(v["mul"], input["mul"]);
    let one = input["one"].clone();
    assert!(v["unary"]["map"].as_array().unwrap().iter().all(|d| *d == one));
}

#[test]
fn completions_verify_as_constellations() {
    let dir = TempDir::new().unwrap();
    let t2 = dir.path().join("t2.json");
    run(&["build", "ttransf", "2", "--adjoin-zero", "-o", s(&t2)]);
    for variant in ["c", "c0"] {
        let out = dir.path().join(format!("{variant}.json"));
        assert_eq!(code(&run(&["complete", s(&t2), "--variant", variant, "-o", s(&out)])), 0);
        assert_eq!(code(&run(&["verify", s(&out), "--laws", "constellation"])), 0, "{variant}");
    }
    assert_eq!(code(&run(&["verify", s(&t2), "--laws", "modal"])), 0);
    assert_eq!(code(&run(&["verify", s(&t2), "--laws", "zs"])), 0);
}

#[test]
fn tsv_and_dot_formats() {
    let dir = TempDir::new().unwrap();
    let t2 = dir.path().join("t2.json");
    run(&["build", "ttransf", "2", "--adjoin-zero", "-o", s(&t2)]);
    let tsv = run(&["build", "ttransf", "2", "--adjoin-zero", "--format", "tsv"]);
    assert_eq!(code(&tsv), 0);
    assert_eq!(String::from_utf8(tsv.stdout).unwrap().lines().count(), 6);
    let dot = run(&["complete", s(&t2), "--variant", "c0", "--format", "dot"]);
    assert_eq!(code(&dot), 0);
    assert!(String::from_utf8(dot.stdout).unwrap().starts_with("digraph"));
    assert_eq!(code(&run(&["build", "ttransf", "2", "--format", "dot"])), 2);
}

#[test]
fn every_example_reproduces() {
    for id in [
        "band-0ef1",
        "monoid-01a",
        "small-5elt",
        "ptx-n2",
        "demonic-n2",
        "partition-fig1",
        "pltx-n2",
    ] {
        let out = run(&["reproduce", id]);
        assert_eq!(code(&out), 0, "{id}: {}", String::from_utf8_lossy(&out.stdout));
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.ends_with(&format!("PASS {id}\n")), "{id}");

        let v = stdout_json(&run(&["reproduce", id, "--format", "json"]));
        assert_eq!(v["pass"], true);
        assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    }
}

#[test]
fn reports_are_deterministic() {
    let a = run(&["reproduce", "demonic-n2", "--format", "json"]);
    let b = run(&["reproduce", "demonic-n2", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}
