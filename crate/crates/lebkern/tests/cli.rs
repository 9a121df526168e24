//! Golden-file checks of the `lebkern` binary: the full verify suite exits
//! zero, the canonical integrate task emits the certified value, output is
//! byte-identical across runs, and every printed value parses back.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lebkern"))
}

fn write_temp(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("lebkern-test-{name}-{}", std::process::id()));
    std::fs::write(&path, contents).expect("write temp task file");
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

#[test]
fn verify_full_suite_exits_zero_and_is_deterministic() {
    let first = run(&["verify", "--size", "3"]);
    assert!(
        first.status.success(),
        "verify failed:\n{}",
        String::from_utf8_lossy(&first.stdout)
    );
    let second = run(&["verify", "--size", "3"]);
    assert_eq!(first.stdout, second.stdout, "verify output must be byte-identical");
    let text = String::from_utf8(first.stdout).unwrap();
    assert!(text.contains("cases pass"));
    assert!(!text.contains("[FAIL]"));
    println!("PASS criterion 12a: verify full suite exits 0, byte-identical across runs");
}

#[test]
fn integrate_x_on_unit_interval_golden() {
    let task = write_temp(
        "integrate-x",
        r#"{"fn": {"kind": "pwl", "pieces": [{"interval": "[0,1]", "a": "1", "b": "0"}]},
            "measure": {"kind": "lebesgue"},
            "n_max": 10}"#,
    );
    let out = run(&["integrate", "--input", task.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let first_line = text.lines().next().unwrap();
    assert_eq!(first_line, "integral = 1/2 (+/- 1/2048)");
    // The stage table carries the exact dyadic lower sums.
    assert!(text.contains("stage n=10 integral = 1023/2048"));

    // Byte-identical across runs.
    let again = run(&["integrate", "--input", task.to_str().unwrap()]);
    assert_eq!(text, String::from_utf8(again.stdout).unwrap());
    std::fs::remove_file(task).ok();
    println!("PASS criterion 12b: integrate emits 1/2 with the declared 2^-11 bound");
}

#[test]
fn printed_values_parse_back() {
    let task = write_temp(
        "roundtrip",
        r#"{"measure": {"kind": "restricted", "base": {"kind": "lebesgue"}, "Y": ["[0,2]"]},
            "set": ["[1,5]", "(-inf,-3]"]}"#,
    );
    let out = run(&["measure", "--input", task.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("json report parses");
    let value = report["result"].as_str().unwrap();
    let parsed: lebkern::xreal::XReal = value.parse().expect("value parses back");
    assert_eq!(parsed.to_string(), value);
    std::fs::remove_file(task).ok();
    println!("PASS criterion 12c: printed values round-trip through the parser");
}

#[test]
fn sigma_gen_golden() {
    let task = write_temp(
        "sigma-gen",
        r#"{"universe": 3, "generators": [["e0"]]}"#,
    );
    let out = run(&["sigma-gen", "--input", task.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim(), r#"[[],["e0"],["e1","e2"],["e0","e1","e2"]]"#);
    std::fs::remove_file(task).ok();
}

#[test]
fn tonelli_json_report() {
    let task = write_temp(
        "tonelli",
        r#"{"fn": {"kind": "step2d", "xs": ["0","1","3"], "ys": ["0","2"],
                 "cells": [["1/2"], ["2"]]},
            "mu1": {"kind": "lebesgue"}, "mu2": {"kind": "lebesgue"}}"#,
    );
    let out = run(&["tonelli", "--input", task.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["result"]["direct"], "9");
    assert_eq!(report["result"]["iterated_axis1"], "9");
    assert_eq!(report["result"]["iterated_axis2"], "9");
    assert_eq!(report["result"]["equal"], true);
    std::fs::remove_file(task).ok();
}

#[test]
fn exit_codes_follow_the_contract() {
    // Exit 2: unreadable input.
    let out = run(&["integrate", "--input", "/no/such/file.json"]);
    assert_eq!(out.status.code(), Some(2));
    // Exit 2: malformed JSON.
    let bad = write_temp("badjson", "{not json");
    let out = run(&["measure", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(bad).ok();
    // Exit 3: precondition failure (set kind does not match the measure).
    let task = write_temp(
        "precondition",
        r#"{"measure": {"kind": "table", "weights": {"e0": "1"}}, "set": ["[0,1]"]}"#,
    );
    let out = run(&["measure", "--input", task.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    std::fs::remove_file(task).ok();
    // Exit 2: unknown flag (clap usage error).
    let out = run(&["verify", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    // Exit 3: unknown suite name.
    let out = run(&["verify", "--suite", "nonexistent"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn decimal_flag_marks_approximations() {
    let task = write_temp(
        "decimal",
        r#"{"measure": {"kind": "lebesgue"}, "set": ["[0,1/3]"]}"#,
    );
    let out = run(&["measure", "--input", task.to_str().unwrap(), "--decimal", "5"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim(), "measure = 1/3 ~ 0.33333");
    std::fs::remove_file(task).ok();
}

#[test]
fn verify_json_report_shape() {
    let out = run(&["verify", "--suite", "dynkin", "--size", "2", "--json"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["command"], "verify");
    assert_eq!(report["result"], "pass");
    let cases = report["cases"].as_array().unwrap();
    assert!(!cases.is_empty());
    for c in cases {
        assert_eq!(c["status"], "pass");
        assert!(c["name"].is_string());
    }
}
