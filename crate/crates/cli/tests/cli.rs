use std::process::{Command, Output};

use serde_json::Value;

fn philab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_philab"))
        .args(args)
        .env("PHILAB_WORKERS", "2")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn classify_prints_a_report() {
    let out = philab(&["classify", "Zn:8"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "phi-lab-report/1");
    assert_eq!(v["report"]["properties"]["phi_prufer"]["verdict"], "true");
    assert_eq!(v["report"]["properties"]["phi_chained"]["verdict"], "true");
}

#[test]
fn classify_markdown_mentions_the_ring() {
    let out = philab(&["classify", "divext:quad:-1:2", "--format", "markdown"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("divext:quad:-1:2"));
}

#[test]
fn bad_ringspec_is_a_usage_error() {
    assert_eq!(philab(&["classify", "Zn:1"]).status.code(), Some(3));
    assert_eq!(philab(&["classify", "frob:3"]).status.code(), Some(3));
}

#[test]
fn unknown_suite_or_flag_is_a_usage_error() {
    assert_eq!(philab(&["check", "--suite", "t99"]).status.code(), Some(3));
    assert_eq!(philab(&["check", "--bogus"]).status.code(), Some(3));
    assert_eq!(
        philab(&["search", "--property", "nope"]).status.code(),
        Some(3)
    );
    assert_eq!(philab(&["corpus"]).status.code(), Some(3));
}

#[test]
fn bad_worker_count_is_a_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_philab"))
        .args(["corpus", "--default"])
        .env("PHILAB_WORKERS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn corpus_lists_default_rings() {
    let out = philab(&["corpus", "--default"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let specs: Vec<&str> = v["corpus"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["spec"].as_str().unwrap())
        .collect();
    assert!(specs.contains(&"divext:quad:-1:2"));
    assert!(specs.contains(&"trunc:2:2,2"));
}

#[test]
fn passing_suite_exits_zero() {
    let out = philab(&["check", "--suite", "t1,t4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for (id, s) in v["suites"].as_object().unwrap() {
        assert_eq!(s["status"], "pass", "{id}");
    }
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("suites: 2/2 pass"));
}

#[test]
fn weakened_distributivity_is_reported_as_a_violation() {
    let out = philab(&[
        "check",
        "--suite",
        "cor0",
        "--mutant",
        "weak-distributivity",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["suites"]["cor0"]["status"], "fail");
}

#[test]
fn search_finds_non_prufer_divided_extension() {
    let out = philab(&["search", "--property", "phi_prufer", "--negate"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rings: Vec<&str> = v["matches"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m["ring"].as_str().unwrap())
        .collect();
    assert!(rings.contains(&"divext:quad:-1:2"), "{rings:?}");
    assert!(!rings.contains(&"divext:Z"));
}

#[test]
fn corpus_file_is_read() {
    let dir = std::env::temp_dir().join(format!("philab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("corpus.txt");
    std::fs::write(&path, "# small\nZn:4\ndivext:Z  # domain\n").unwrap();
    let out = philab(&["check", "--suite", "t1", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["corpus"].as_array().unwrap().len(), 2);
    std::fs::remove_dir_all(&dir).unwrap();
}
