//! Behaviour of the installed binary: exit codes, file handling and
//! byte-identical reruns.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_biased-cube"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

#[test]
fn fkn_exhaustive_sweep_is_clean() {
    let out = run(&["verify-fkn", "--n", "3", "--alpha", "0.25", "--c0", "0.01"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("256 instances"));
    assert!(text.contains("0 violations"));
}

#[test]
fn counterexample_prints_table_and_spectrum() {
    let out = run(&["example", "counterexample", "--alpha", "0.25"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("bool:1"));
    assert!(text.contains("spec: 0.125"));
    assert!(text.contains("0 violations"));
}

#[test]
fn missing_file_is_a_usage_error() {
    let out = run(&["transform", "definitely-not-here.txt"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("error"));
}

#[test]
fn unknown_subcommand_exits_two() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_alpha_exits_two() {
    let out = run(&["verify-fkn", "--n", "2", "--alpha", "0.75"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exhaustive_rejects_large_n() {
    let out = run(&["verify-fkn", "--n", "5", "--alpha", "0.25"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unsupported_witness_base_exits_two() {
    let out = run(&["verify-thm3", "--n", "4", "--samples", "5", "--base", "2.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn transform_round_trips_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("fn.txt");
    std::fs::write(&input, "n=2 alpha=0.25\nreal: 1 -0.5 0.25 0\n").unwrap();
    let csv = dir.path().join("spec.csv");
    let out = bin()
        .args(["transform"])
        .arg(&input)
        .arg("--out")
        .arg(&csv)
        .output()
        .unwrap();
    assert!(out.status.success());
    let written = std::fs::read_to_string(&csv).unwrap();
    assert!(written.starts_with("mask,popcount,coeff\n"));
    assert_eq!(written.lines().count(), 5);
}

fn csv_bytes(path: &Path, args: &[&str]) -> Vec<u8> {
    let out = bin()
        .args(args)
        .arg("--out")
        .arg(path)
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "{:?}", out);
    std::fs::read(path).unwrap()
}

#[test]
fn identical_configs_produce_identical_csv_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = [
        "verify-fkn",
        "--n",
        "10",
        "--alpha",
        "0.25",
        "--samples",
        "100",
        "--seed",
        "7",
    ];
    let first = csv_bytes(&a, &args);
    let second = csv_bytes(&b, &args);
    assert!(!first.is_empty());
    assert_eq!(first, second);
    // A different seed must alter the report.
    let c = dir.path().join("c.csv");
    let args_other = [
        "verify-fkn",
        "--n",
        "10",
        "--alpha",
        "0.25",
        "--samples",
        "100",
        "--seed",
        "8",
    ];
    let third = csv_bytes(&c, &args_other);
    assert_ne!(first, third);
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify-thm3", "--n", "6", "--samples", "60", "--seed", "11"];
    let mut outputs = Vec::new();
    for threads in ["1", "3"] {
        let path = dir.path().join(format!("t{threads}.csv"));
        let out = bin()
            .env("BIASED_CUBE_THREADS", threads)
            .args(args)
            .arg("--out")
            .arg(&path)
            .output()
            .unwrap();
        assert!(out.status.success());
        outputs.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn hk_accepts_coefficient_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("coeffs.txt");
    std::fs::write(&input, "0.5 -0.3 0.2 0.1\n").unwrap();
    let out = bin().arg("verify-hk").arg(&input).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("1 instances, 0 violations"));
    // Missing file is a usage error.
    let out = bin().args(["verify-hk", "nope.txt"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scan_produces_single_schema_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let out = bin()
        .args(["scan", "--samples", "20", "--seed", "3"])
        .arg("--out")
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("campaign,row\n"));
    assert!(text.contains("fkn-exhaustive-a0.25"));
    assert!(text.contains("thm3-random"));
    assert!(text.contains("hk-random"));
    assert!(text.contains("# summary check=scan"));
}
