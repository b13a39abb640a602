use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn hahnchain(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hahnchain"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn design(dir: &TempDir, name: &str, parity: &str, n: &str, m1: &str, m2: &str) -> String {
    let out = path(dir, name);
    let o = hahnchain(&["design", "--parity", parity, "--N", n, "--M1", m1, "--M2", m2, "--out", &out]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    out
}

fn json(file: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(file).unwrap()).unwrap()
}

#[test]
fn design_then_certify_round_trips() {
    let dir = TempDir::new().unwrap();
    let chain = design(&dir, "c.json", "odd", "7", "1", "2");
    let doc = json(&chain);
    assert_eq!(doc["N"], 7);
    assert_eq!(doc["parity"], "odd");
    assert_eq!(doc["certificate"]["passed"], true);
    assert_eq!(doc["certificate"]["T_over_pi"], serde_json::json!({"num": 1, "den": 4}));

    let o = hahnchain(&["certify", &chain]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let cert: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(cert, doc["certificate"]);
}

#[test]
fn certify_from_flags_reports_mirror_violation() {
    let o = hahnchain(&["certify", "--N", "3", "--alpha", "2", "--beta", "4"]);
    assert_eq!(o.status.code(), Some(1));
    let cert: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(cert["passed"], false);
    assert_eq!(cert["mirror"], false);
    assert_eq!(cert["failureReason"], "mirror-violation");
}

#[test]
fn certify_reports_spacing_violation() {
    let o = hahnchain(&["certify", "--N", "3", "--alpha", "1/2", "--beta", "1/2"]);
    assert_eq!(o.status.code(), Some(1));
    let cert: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(cert["failureReason"], "spacing-violation");
}

#[test]
fn evolve_two_site_chain() {
    let dir = TempDir::new().unwrap();
    let chain = design(&dir, "two.json", "odd", "1", "1", "2");
    let doc = json(&chain);
    assert_eq!(doc["alpha"], serde_json::json!({"num": 2, "den": 1}));
    assert_eq!(doc["certificate"]["T_over_pi"], serde_json::json!({"num": 1, "den": 12}));

    let o = hahnchain(&["evolve", &chain, "--t-max-over-pi", "1/6", "--samples", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,reA,imA,absA"));
    let abs: Vec<f64> = lines
        .map(|l| l.split(',').nth(3).unwrap().parse().unwrap())
        .collect();
    assert_eq!(abs.len(), 3);
    for (got, want) in abs.iter().zip([0.0, 1.0, 0.0]) {
        assert!((got - want).abs() < 1e-12, "{abs:?}");
    }
}

#[test]
fn invalid_design_is_a_usage_error() {
    let o = hahnchain(&["design", "--parity", "odd", "--N", "3", "--M1", "2", "--M2", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let msg = stderr(&o);
    assert!(msg.contains("M2 even") && msg.contains("M1 odd"), "{msg}");
    assert!(o.stdout.is_empty());
}

#[test]
fn bad_arguments_are_usage_errors() {
    assert_eq!(hahnchain(&["design", "--parity", "sideways"]).status.code(), Some(2));
    assert_eq!(hahnchain(&["certify", "--N", "2", "--alpha", "1", "--beta", "1"]).status.code(), Some(2));
    assert_eq!(hahnchain(&["certify", "--N", "3", "--alpha", "x", "--beta", "1"]).status.code(), Some(2));
}

#[test]
fn missing_file_is_an_io_error() {
    let o = hahnchain(&["certify", "/nonexistent/chain.json"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("cannot read"));
}

#[test]
fn malformed_document_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let bad = path(&dir, "bad.json");
    std::fs::write(&bad, "{\"schemaVersion\": 1}").unwrap();
    assert_eq!(hahnchain(&["certify", &bad]).status.code(), Some(2));

    let chain = design(&dir, "c.json", "even", "4", "1", "1");
    let mut doc = json(&chain);
    doc["b"][0] = serde_json::json!({"num": 5, "den": 1});
    let tampered = path(&dir, "tampered.json");
    std::fs::write(&tampered, doc.to_string()).unwrap();
    let o = hahnchain(&["certify", &tampered]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("inconsistent"));
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = design(&dir, "a.json", "even", "10", "3", "1");
    let b = design(&dir, "b.json", "even", "10", "3", "1");
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let args = ["evolve", a.as_str(), "--t-max", "2.5", "--samples", "64"];
    assert_eq!(hahnchain(&args).stdout, hahnchain(&args).stdout);
}

#[test]
fn sweep_writes_an_array() {
    let o = hahnchain(&["design", "--parity", "odd", "--sweep", "3,7,15", "--M1", "3", "--M2", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let docs: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let docs = docs.as_array().unwrap();
    assert_eq!(docs.len(), 3);
    for (doc, n) in docs.iter().zip([3, 7, 15]) {
        assert_eq!(doc["N"], n);
        assert_eq!(doc["certificate"]["passed"], true);
        assert_eq!(doc["certificate"]["T_over_pi"], serde_json::json!({"num": 3, "den": 4}));
    }
}

#[test]
fn transform_removes_top_level() {
    let dir = TempDir::new().unwrap();
    let chain = design(&dir, "c.json", "odd", "5", "1", "2");
    let o = hahnchain(&["transform", &chain]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let t: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(t["N"], 4);
    assert_eq!(t["couplings"].as_array().unwrap().len(), 4);
    let zero = serde_json::json!({"num": 0, "den": 1});
    assert_eq!(t["link"]["residual"], zero);
    assert_eq!(t["link"]["closedFormResidual"], zero);

    let o = hahnchain(&["transform", &chain, "--remove", "bottom"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let t: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(t.get("link").is_none());
}

#[test]
fn reconstruct_recovers_the_chain() {
    let dir = TempDir::new().unwrap();
    let chain = design(&dir, "c.json", "even", "10", "1", "3");
    let o = hahnchain(&["reconstruct", &chain]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["withinTolerance"], true);
    assert!(r["maxRelativeDeviation"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn weights_distinguish_mirror_chains() {
    let o = hahnchain(&["weights", "--N", "5", "--alpha", "2", "--beta", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let w: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(w["mirrorWeights"], true);
    assert_eq!(w["grid"].as_array().unwrap().len(), 6);

    let o = hahnchain(&["weights", "--N", "5", "--alpha", "2", "--beta", "5/2"]);
    let w: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(w["mirrorWeights"], false);
}

#[test]
fn out_to_unwritable_path_is_an_io_error() {
    let o = hahnchain(&["certify", "--N", "3", "--alpha", "2", "--beta", "2", "--out", "/nonexistent/dir/c.json"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!Path::new("/nonexistent/dir/c.json").exists());
}
