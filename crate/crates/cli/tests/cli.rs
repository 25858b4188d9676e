//! End-to-end checks of the binary: output contents, exit codes, and
//! byte-determinism of the JSON output.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_specht-sym"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn decompose_d_cube_prints_both_bases() {
    let out = run(&["decompose", "-n", "10", "-p", "5", "-r", "3", "-m", "D"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("1[M 8,1,1] + 1[M 7,3] - 2[M 8,2]"), "{text}");
    assert!(text.contains("1[Y 8,1,1] + 1[Y 7,3]"), "{text}");
    assert!(text.contains("dimension: 120"), "{text}");
}

#[test]
fn decompose_s_square() {
    let out = run(&["decompose", "-n", "10", "-p", "5", "-r", "2", "-m", "S"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("1[M 8,2]"));
}

#[test]
fn decompose_rejects_out_of_range_power() {
    let out = run(&["decompose", "-n", "10", "-p", "5", "-r", "5", "-m", "S"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_gamma_passes() {
    let out = run(&["verify", "-n", "5", "-p", "5", "gamma"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("PASS gamma"));
}

#[test]
fn verify_chain_s_passes() {
    let out = run(&["verify", "-n", "10", "-p", "5", "chainS"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("2 verified retractions"));
}

#[test]
fn verify_zeta_needs_odd_p() {
    let out = run(&["verify", "-n", "4", "-p", "2", "zeta"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn vertex_report_json() {
    let out = run(&["vertex", "-n", "10", "-p", "5", "-m", "D", "-r", "3", "--json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let entries = value["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 2);
    assert_eq!(entries[0]["mu"], "8,1,1");
    assert_eq!(entries[0]["vertex_m"], 5);
    assert_eq!(entries[1]["mu"], "7,3");
    assert_eq!(entries[1]["vertex_m"], 0);
}

#[test]
fn kostka_reports_three_certificates() {
    let out = run(&["kostka", "-n", "10", "-p", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.matches(">= 1").count(), 3);
    let out = run(&["kostka", "-n", "9", "-p", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let args = ["decompose", "-n", "10", "-p", "5", "-r", "4", "-m", "D", "--json"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let args = ["vertex", "-n", "10", "-p", "5", "-m", "S", "-r", "4", "--json"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn accept_runs_clean_single_threaded() {
    let out = Command::new(env!("CARGO_BIN_EXE_specht-sym"))
        .args(["accept", "--json"])
        .env("SPECHT_SYM_THREADS", "2")
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["all_passed"], true);
    assert_eq!(value["criteria"].as_array().unwrap().len(), 10);
}
