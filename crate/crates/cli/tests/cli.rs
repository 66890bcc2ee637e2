use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const P3: &str = r#"{"a": 2, "b": 1, "edges": [[0, 0], [1, 0]]}"#;
const CHAIN: &str = r#"{"a": 2, "b": 2, "edges": [[0, 0], [1, 1], [0, 1]]}"#;

fn dmb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dmb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn decompose_p3() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "p3.json", P3);
    let out = dmb(&["decompose", arg(&input)]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["schema_version"], "1");
    assert_eq!(doc["max_size"], 1);
    assert_eq!(doc["components"].as_array().unwrap().len(), 1);
    assert_eq!(doc["components"][0]["kind"], "loose_hooked_a");
    assert_eq!(doc["D_set"], serde_json::json!(["a0", "a1"]));
}

#[test]
fn decompose_chain_with_reduced_dot() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "chain.json", CHAIN);
    let dot = dir.path().join("chain.dot");
    let out = dmb(&["decompose", arg(&input), "--dot", arg(&dot), "--reduce"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["components"].as_array().unwrap().len(), 4);
    let dot = fs::read_to_string(dot).unwrap();
    assert_eq!(dot.matches(" -> ").count(), 3);
    assert!(dot.contains("C0[consistent]"));
}

#[test]
fn decompose_output_is_byte_stable() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "chain.json", CHAIN);
    let first = dmb(&["decompose", arg(&input)]);
    let second = dmb(&["decompose", arg(&input)]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn malformed_input_exits_2() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "bad.json", "{\"a\": 1,");
    let out = dmb(&["decompose", arg(&input)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid JSON"));

    let input = write(&dir, "neg.json", r#"{"a": 1, "b": 1, "cap": {"a0": -2}}"#);
    assert_eq!(dmb(&["classify", arg(&input)]).status.code(), Some(2));
    assert_eq!(
        dmb(&["decompose", "/nonexistent.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn check_random_batch() {
    let out = dmb(&["check", "--random", "500", "--seed", "7"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
}

#[test]
fn check_input_file() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "p3.json", P3);
    assert_eq!(
        dmb(&["check", "--input", arg(&input)]).status.code(),
        Some(0)
    );
}

#[test]
fn check_rejects_oversize_and_bad_flags() {
    let out = dmb(&[
        "check", "--random", "1", "--seed", "1", "--max-a", "9", "--max-b", "9",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(dmb(&["check"]).status.code(), Some(2));
    assert_eq!(
        dmb(&["check", "--random", "1", "--edge-prob", "1.5"])
            .status
            .code(),
        Some(2)
    );

    let dir = TempDir::new().unwrap();
    let edges: Vec<String> = (0..5)
        .flat_map(|i| (0..4).map(move |j| format!("[{i},{j}]")))
        .collect();
    let big = write(
        &dir,
        "big.json",
        &format!(r#"{{"a": 5, "b": 4, "edges": [{}]}}"#, edges.join(",")),
    );
    assert_eq!(dmb(&["check", "--input", arg(&big)]).status.code(), Some(2));
}

#[test]
fn classify_chain() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "chain.json", CHAIN);
    let out = dmb(&["classify", arg(&input)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_json(&out),
        serde_json::json!({"a0-b0": "inevitable", "a1-b1": "inevitable", "a0-b1": "forbidden"})
    );
}

#[test]
fn enumerate_and_check_verifying() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "chain.json", CHAIN);
    let out = dmb(&["enumerate-verifying", arg(&input), "--cap", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let listing = stdout_json(&out);
    assert_eq!(listing["sets"].as_array().unwrap().len(), 5);
    assert_eq!(listing["truncated"], false);

    let out = dmb(&["enumerate-verifying", arg(&input), "--cap", "2"]);
    assert_eq!(stdout_json(&out)["truncated"], true);
    assert_eq!(
        dmb(&["enumerate-verifying", arg(&input), "--cap", "0"])
            .status
            .code(),
        Some(2)
    );

    let out = dmb(&["check-verifying", arg(&input), "--set", "a0,a1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["verifying"], true);
    let out = dmb(&["check-verifying", arg(&input), "--set", "b0"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(
        dmb(&["check-verifying", arg(&input), "--set", "c7"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn bench_rows() {
    let out = dmb(&["bench", "--sizes", "0,2000", "--reps", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text
        .lines()
        .nth(2)
        .unwrap()
        .trim_start()
        .starts_with("2000"));
}
