use std::process::{Command, Output};

fn belnap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_belnap")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    belnap(args).status.code().expect("exit code")
}

#[test]
fn decide_reports_validity_in_the_exit_code() {
    assert_eq!(code(&["decide", "--logic", "BDNF", "T(x), NF(~x \\/ y) |- NF(y)"]), 0);
    assert_eq!(code(&["decide", "--logic", "BD", "T(x), T(y) |- x = y"]), 2);
    assert_eq!(code(&["decide", "--logic", "MC-ETL", "E(x \\/ y) |- E(~x \\/ ~y) | E(x) | E(y)"]), 0);
    assert_eq!(code(&["decide", "--logic", "K", "|- T(x \\/ ~x)"]), 1);
    assert_eq!(code(&["decide", "--logic", "BD"]), 2);
}

#[test]
fn derive_exit_codes() {
    assert_eq!(code(&["derive", "--system", "BDE", "--depth", "6", "E(x /\\ (~x \\/ y)) |- E(y)"]), 0);
    assert_eq!(code(&["derive", "--system", "BD-base", "T(x) |- T(~x)"]), 1);
    assert_eq!(code(&["derive", "--system", "TNE-bridge", "--depth", "0", "T(x), NF(x) |- E(x)"]), 3);
}

#[test]
fn derive_json_is_a_checkable_certificate() {
    let out = belnap(&["--format", "json", "derive", "--system", "TNE-bridge", "T(x), NF(x) |- E(x)"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["status"], "found");
    assert!(v["certificate"]["nodes"].as_array().is_some_and(|n| !n.is_empty()));
}

#[test]
fn verify_exit_codes() {
    assert_eq!(code(&["verify", "ledger"]), 0);
    assert_eq!(code(&["verify", "no-such-suite"]), 2);
    assert_eq!(code(&["verify", "soundness", "--system", "NOPE"]), 2);
    assert_eq!(code(&["verify", "soundness", "--system", "BDE"]), 0);
}

#[test]
fn identical_configs_give_identical_json() {
    let args = ["--format", "json", "--seed", "11", "verify", "roundtrip", "--samples", "500"];
    let a = belnap(&args);
    let b = belnap(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["config"]["seed"], 11);
    assert_eq!(v["bounds"]["samples"], 500);
}

#[test]
fn rule_files_are_decided_line_by_line() {
    let dir = std::env::temp_dir().join(format!("belnap-rules-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("etl.rules");
    std::fs::write(&file, "# exact truth\nE(x), E(~x \\/ y) |- E(y)\n\nE(x) |- E(x \\/ y)  # upward closure\n").unwrap();
    let out = belnap(&["decide", "--logic", "ETL", "--file", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 2);
    std::fs::remove_dir_all(&dir).unwrap();
}
