//! End-to-end checks of the binary: exit codes, report artifacts,
//! determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_intcomb"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("intcomb-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn asm_count_passes_with_artifacts() {
    let json = tmp("count.json");
    let csv = tmp("count.csv");
    let out = run(&[
        "asm-count",
        "--size",
        "5",
        "--json",
        json.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let arr = report.as_array().unwrap();
    assert_eq!(arr[0]["experiment"], "asm-count");
    assert_eq!(arr[0]["status"], "pass");
    assert!(arr[0]["params"].is_object());
    assert!(!arr[0]["details"].is_null());
    let table = std::fs::read_to_string(&csv).unwrap();
    let mut lines = table.lines();
    assert_eq!(lines.next(), Some("n,asm_count"));
    assert_eq!(lines.next(), Some("1,1"));
    assert_eq!(table.lines().last(), Some("5,429"));
    let _ = std::fs::remove_file(json);
    let _ = std::fs::remove_file(csv);
}

#[test]
fn json_reports_are_byte_identical() {
    let j1 = tmp("det1.json");
    let j2 = tmp("det2.json");
    for j in [&j1, &j2] {
        let out = run(&[
            "lorentzian-genfun",
            "--order",
            "6",
            "--json",
            j.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let b1 = std::fs::read(&j1).unwrap();
    let b2 = std::fs::read(&j2).unwrap();
    assert_eq!(b1, b2);
    let _ = std::fs::remove_file(j1);
    let _ = std::fs::remove_file(j2);
}

#[test]
fn json_to_stdout_is_pure() {
    // with --json - the whole stdout is one parseable JSON document
    let out = run(&["asm-count", "--size", "3", "--json", "-"]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed[0]["experiment"], "asm-count");
}

#[test]
fn seed_changes_random_draws() {
    let out1 = run(&[
        "lorentzian-genfun",
        "--order",
        "4",
        "--seed",
        "1",
        "--json",
        "-",
    ]);
    let out2 = run(&[
        "lorentzian-genfun",
        "--order",
        "4",
        "--seed",
        "2",
        "--json",
        "-",
    ]);
    assert!(out1.status.success() && out2.status.success());
    assert_ne!(out1.stdout, out2.stdout);
}

#[test]
fn verification_failure_exits_one() {
    // explicit non-conjugate second pair
    let out = run(&[
        "lorentzian-commute",
        "--g",
        "1/10",
        "--a",
        "1/2",
        "--a2",
        "2/3",
        "--g2",
        "1/10",
        "--size",
        "16",
        "--window",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["no-such-experiment"],
        vec!["asm-count", "--size", "12"],
        vec![
            "lorentzian-commute",
            "--g",
            "zebra",
            "--a",
            "1/2",
            "--a2",
            "2/3",
        ],
        vec![
            "whittaker-verify",
            "--rank",
            "2",
            "--depth",
            "3",
            "--lambda",
            "1/2",
            "--mu",
            "1,1",
        ],
        vec!["qsystem-graded-char", "--spec", "not json"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "args: {args:?}");
    }
}

#[test]
fn whittaker_cli_roundtrip() {
    let out = run(&[
        "whittaker-verify",
        "--type",
        "A",
        "--rank",
        "2",
        "--depth",
        "3",
        "--lambda",
        "5/7,3/2",
        "--mu",
        "1,1",
        "--json",
        "-",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("whittaker-verify"));
    assert!(text.contains("\"status\": \"pass\""));
}

#[test]
fn quick_suite_passes() {
    let out = run(&["run-all", "--suite", "quick"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    // registration order is stable: the first line is the genfun experiment
    assert!(text
        .lines()
        .next()
        .unwrap()
        .starts_with("lorentzian-genfun"));
    assert!(text.lines().all(|l| !l.contains(" fail ")));
}
