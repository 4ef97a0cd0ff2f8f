//! Black-box tests of the binary: exit codes, output formats, and the
//! dump subcommands.

use std::path::PathBuf;
use std::process::{Command, Output};

fn exe() -> Command {
    Command::new(env!("CARGO_BIN_EXE_yso5"))
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).expect("tmp dir");
    dir.join(name)
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no exit code")
}

#[test]
fn passing_suite_exits_zero_with_a_markdown_summary() {
    let out = exe().args(["verify", "so5"]).output().unwrap();
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# Verification report"));
    assert!(text.contains("**0 fail**"));
}

#[test]
fn json_stdout_matches_the_written_report() {
    let path = tmp("so5.json");
    let out = exe()
        .args(["verify", "so5", "--format", "json", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let written = std::fs::read(&path).unwrap();
    assert_eq!(out.stdout, written);
    let parsed: serde_json::Value = serde_json::from_slice(&written).unwrap();
    assert_eq!(parsed["schema"], "yso5-report/1");
    assert_eq!(parsed["summary"]["total"], 90);
}

#[test]
fn unknown_suite_names_exit_two() {
    let out = exe().args(["verify", "everything"]).output().unwrap();
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown suite"));
}

#[test]
fn unknown_flags_exit_two_with_usage_text() {
    let out = exe().args(["verify", "so5", "--frobnicate"]).output().unwrap();
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("Usage") || err.contains("usage"), "{err}");
}

#[test]
fn malformed_scalars_exit_two() {
    let out = exe()
        .args(["verify", "ybe", "--x", "one-half"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn component_tables_need_the_lax_source() {
    let out = exe()
        .args(["verify", "drinfeld", "--source", "fock", "--tables", "33"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));
}

#[test]
fn oversized_chains_exit_three_with_a_budget_message() {
    let out = exe().args(["verify", "fock", "--L", "9"]).output().unwrap();
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn the_budget_env_var_overrides_the_ceiling() {
    let out = exe()
        .args(["verify", "fock"])
        .env("YSO5_MEM_BUDGET_MB", "1")
        .output()
        .unwrap();
    assert_eq!(code(&out), 3, "a one-MiB ceiling rejects even two sites");

    let out = exe()
        .args(["verify", "fock"])
        .env("YSO5_MEM_BUDGET_MB", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn dump_prints_generators_and_relations() {
    let out = exe().args(["dump", "gens"]).output().unwrap();
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("generators"));
    assert!(text.contains("I12 ="));

    let out = exe()
        .args(["dump", "relations", "--levels", "1,1"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("exchange relations"));
    assert!(text.contains("= 0"));

    let out = exe().args(["dump", "nonsense"]).output().unwrap();
    assert_eq!(code(&out), 2);
}
