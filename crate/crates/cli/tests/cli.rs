use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperdelta"))
        .args(args)
        .current_dir(dir)
        .env("HYPERDELTA_CACHE_DIR", dir.join("cache"))
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn setup() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("three.json"), r#"{"ambient": 1, "family": ["x0", "x1", "x0 + x1"]}"#).unwrap();
    std::fs::write(
        dir.path().join("lines.json"),
        r#"{"ambient": 2, "family": ["x1", "x2", "x1 + x2", "x0"]}"#,
    )
    .unwrap();
    dir
}

#[test]
fn delta_of_three_points_on_the_line() {
    let dir = setup();
    let out = run(dir.path(), &["delta", "--config", "three.json"]);
    assert_eq!(out.status.code(), Some(0));
    let j = json(&out);
    assert_eq!(j["command"], "delta");
    assert_eq!(j["result"]["delta"], "1/1");
    assert_eq!(j["result"]["witness"], serde_json::json!([1]));
    assert!(j.get("timing_ms").is_none());
}

#[test]
fn concurrent_lines_need_two_steps_for_the_last_drop() {
    let dir = setup();
    let j = json(&run(dir.path(), &["profile", "--config", "lines.json"]));
    assert_eq!(j["result"]["t_values"], serde_json::json!([0, 1, 3]));
    let j = json(&run(dir.path(), &["delta", "--config", "lines.json"]));
    assert_eq!(j["result"]["delta"], "3/2");
    let j = json(&run(dir.path(), &["replace", "--config", "lines.json"]));
    assert_eq!(j["result"]["verdict"]["ok"], true);
}

#[test]
fn m0_example() {
    let dir = setup();
    let args = ["m0", "--n", "1", "--d", "1", "--degv", "1", "--delta", "1/1", "--q", "3", "--eps", "6/1"];
    let j = json(&run(dir.path(), &args));
    assert_eq!(j["result"]["m0"], 32);
}

#[test]
fn exit_codes() {
    let dir = setup();
    assert_eq!(run(dir.path(), &["pfcheck", "--x", "6/1"]).status.code(), Some(0));
    let zero = run(dir.path(), &["pfcheck", "--x", "0"]);
    assert_eq!(zero.status.code(), Some(2));
    assert_eq!(json(&zero)["error"]["name"], "ZeroInput");
    assert_eq!(run(dir.path(), &["pfcheck"]).status.code(), Some(1));
    assert_eq!(run(dir.path(), &["delta", "--config", "missing.json"]).status.code(), Some(1));
    assert_eq!(run(dir.path(), &["--help"]).status.code(), Some(0));
}

#[test]
fn timing_only_on_request() {
    let dir = setup();
    let j = json(&run(dir.path(), &["--timing", "schedule", "--t", "1,3,4"]));
    assert!(j["timing_ms"].is_number());
    assert_eq!(j["result"]["m_values"], serde_json::json!(["2/1", "1/1", "2/1"]));
}

#[test]
fn cache_is_populated_and_reused() {
    let dir = setup();
    std::fs::write(dir.path().join("conic.json"), r#"{"ambient": 2, "variety": ["x0*x2 - x1^2"], "family": ["x0", "x2"]}"#)
        .unwrap();
    let args = ["hilbert", "--config", "conic.json"];
    let cold = run(dir.path(), &args);
    let entries = std::fs::read_dir(dir.path().join("cache")).unwrap().count();
    assert!(entries >= 1);
    let warm = run(dir.path(), &args);
    assert_eq!(cold.stdout, warm.stdout);
    let mut no_cache = args.to_vec();
    no_cache.insert(0, "--no-cache");
    let plain = run(dir.path(), &no_cache);
    assert_eq!(json(&plain)["result"], json(&cold)["result"]);
    assert_eq!(json(&cold)["result"]["degree"], 2);
}

#[test]
fn sequential_flag_gives_identical_results() {
    let dir = setup();
    let a = run(dir.path(), &["delta", "--config", "lines.json", "--table"]);
    let b = run(dir.path(), &["--sequential", "delta", "--config", "lines.json", "--table"]);
    assert_eq!(json(&a)["result"], json(&b)["result"]);
}
