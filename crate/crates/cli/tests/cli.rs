use std::process::Command;

use logsyn_cli::{run, EXIT_MISMATCH, EXIT_PASS, EXIT_PRECISION, EXIT_USAGE};
use serde_json::Value;

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["logsyn"];
    full.extend_from_slice(args);
    let out = run(full);
    let value = serde_json::from_str(&out.output).unwrap_or_else(|e| panic!("{e}: {}", out.output));
    (out.code, value)
}

fn text(args: &[&str]) -> (i32, String) {
    let mut full = vec!["logsyn", "--format", "text"];
    full.extend_from_slice(args);
    let out = run(full);
    (out.code, out.output)
}

#[test]
fn syntomic_example() {
    let (code, v) = json(&["syntomic", "--p", "2", "--e", "2", "--i", "1"]);
    assert_eq!(code, EXIT_PASS);
    for key in ["command", "p", "e", "i", "precision", "result", "pass"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["pass"], true);
    assert_eq!(v["rendered"][1], serde_json::json!(["Z/2", "W"]));
    assert_eq!(v["rendered"][2], serde_json::json!(["W"]));
    assert_eq!(
        v["result"][1],
        serde_json::json!([{"type": "torsion", "exp": 1}, {"type": "free-at-cap"}])
    );
    assert_eq!(v["result"][2], serde_json::json!([{"type": "free-at-cap"}]));
    assert_eq!(v["precision"], 4);
    assert_eq!(v["orbit_bound"], 4);
}

#[test]
fn forced_precision_failure() {
    let (code, _) = json(&["syntomic", "--p", "2", "--e", "2", "--i", "1", "--precision", "1"]);
    assert_eq!(code, EXIT_PRECISION);
}

#[test]
fn witt_decompose_example() {
    let (code, v) = json(&["witt", "decompose", "--p", "2", "--m", "5"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["result"], serde_json::json!([[1, 3], [3, 1], [5, 1]]));
    let (_, t) = text(&["witt", "decompose", "--p", "2", "--m", "5"]);
    assert!(t.contains("{(1,3),(3,1),(5,1)}"));
}

#[test]
fn text_rendering() {
    let (code, t) = text(&["syntomic", "--p", "2", "--e", "2", "--i", "3"]);
    assert_eq!(code, EXIT_PASS);
    assert!(t.contains("bW_5 (Z/2^3 + Z/2 + Z/2)"), "{t}");
    let (_, t) = text(&["logtc", "--p", "2", "--e", "2", "--range", "-2..3"]);
    assert!(t.contains("bW_3 (Z/2^2 + Z/2)"), "{t}");
    assert!(t.lines().any(|l| l.trim_start().starts_with("pi_-1") && l.contains('W')));
}

#[test]
fn other_commands_pass() {
    for args in [
        vec!["logtc", "--p", "3", "--e", "2", "--range", "-2..9"],
        vec!["descent", "--p", "2", "--i", "1"],
        vec!["nilinv", "--p", "2", "--e", "3", "--i", "1"],
        vec!["axes", "--p", "5", "--i", "2"],
        vec!["fan", "verify-axes"],
        vec!["perfection", "--p", "3", "--k", "2", "--b", "10"],
    ] {
        let (code, v) = json(&args);
        assert_eq!(code, EXIT_PASS, "{args:?}");
        assert_eq!(v["pass"], true);
    }
}

#[test]
fn perturbed_fan_is_a_mismatch() {
    let (code, v) = json(&["fan", "verify-axes", "--v", "1,1"]);
    assert_eq!(code, EXIT_MISMATCH);
    assert_eq!(v["result"][6]["pass"], false);
}

#[test]
fn usage_errors() {
    for args in [
        vec!["logsyn"],
        vec!["logsyn", "syntomic", "--p", "2"],
        vec!["logsyn", "syntomic", "--p", "4", "--i", "1"],
        vec!["logsyn", "syntomic", "--p", "2", "--e", "0", "--i", "1"],
        vec!["logsyn", "logtc", "--p", "2", "--e", "1", "--range", "5..1"],
        vec!["logsyn", "bogus"],
        vec!["logsyn", "--format", "xml", "witt", "decompose", "--p", "2", "--m", "3"],
    ] {
        assert_eq!(run(args.clone()).code, EXIT_USAGE, "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["logsyn", "syntomic", "--p", "3", "--e", "3", "--i", "4"];
    let first = run(args);
    for _ in 0..3 {
        assert_eq!(run(args), first);
    }
}

#[test]
fn binary_exit_codes_and_thread_cap() {
    let bin = env!("CARGO_BIN_EXE_logsyn");
    let run_bin = |threads: &str, args: &[&str]| {
        Command::new(bin)
            .args(args)
            .env("LOGSYN_THREADS", threads)
            .output()
            .unwrap()
    };
    let args = ["syntomic", "--p", "2", "--e", "4", "--i", "3"];
    let one = run_bin("1", &args);
    let four = run_bin("4", &args);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let bad = run_bin("2", &["syntomic", "--p", "2", "--e", "2", "--i", "1", "--precision", "1"]);
    assert_eq!(bad.status.code(), Some(3));
    let usage = run_bin("2", &["syntomic"]);
    assert_eq!(usage.status.code(), Some(1));
    assert!(!usage.stderr.is_empty());
}
