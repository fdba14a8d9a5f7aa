use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_heckedim"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

const ONE_MINUS_ST: &str = "basis group size 1x1 [ e - s*t ]";

#[test]
fn dim_examples() {
    let out = run(&["dim", "--qs", "1/2", "--qt", "1/3", "--json"], ONE_MINUS_ST);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["mode"], "dim");
    assert_eq!(v["params"]["q_s"], "1/2");
    assert_eq!(v["result"]["dim"]["num"], 5);
    assert_eq!(v["result"]["dim"]["den"], 12);
    assert_eq!(v["result"]["cert"], serde_json::json!([-1, 1, 1]));
    assert_eq!((v["result"]["a"].as_u64(), v["result"]["b"].as_u64(), v["result"]["c"].as_u64()), (Some(1), Some(0), Some(0)));
    assert_eq!(v["input_digest"].as_str().unwrap().len(), 64);

    let out = run(&["dim", "--qs", "1/1", "--qt", "1/1", "--json"], ONE_MINUS_ST);
    assert_eq!(json(&out)["result"]["dim"]["num"], 0);

    let out = run(&["dim", "--qs", "1/2", "--qt", "1/3"], ONE_MINUS_ST);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("dim: 5/12"), "{text}");
}

#[test]
fn dim_reads_files_and_inline_text() {
    let dir = std::env::temp_dir().join(format!("heckedim-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a_s.txt");
    std::fs::write(&path, "basis group size 1x1\n[ 1/2 + 1/2*s ]\n").unwrap();
    let out = run(&["dim", "--qs", "1/3", "--qt", "1/2", "--json", path.to_str().unwrap()], "");
    let v = json(&out);
    assert_eq!((v["result"]["dim"]["num"].as_i64(), v["result"]["dim"]["den"].as_i64()), (Some(1), Some(4)));

    let out = run(&["dim", "--qs", "1/3", "--qt", "1/2", "--json", "--matrix", "basis tau size 1x2 [ Ts , Tt - 2 ]"], "");
    assert_eq!(out.status.code(), Some(0));
    // same document, same digest; different document, different digest
    let a = json(&run(&["dim", "--qs", "2", "--qt", "3", "--json"], ONE_MINUS_ST))["input_digest"].clone();
    let b = json(&run(&["dim", "--qs", "1/2", "--qt", "1/3", "--json"], ONE_MINUS_ST))["input_digest"].clone();
    let c = json(&run(&["dim", "--qs", "2", "--qt", "3", "--json"], "basis group size 1x1 [ e + s*t ]"))["input_digest"].clone();
    assert_eq!(a, b);
    assert_ne!(a, c);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn piecewise_zero_is_constant_one() {
    let out = run(&["piecewise", "--json"], "basis group size 1x1 [ 0 ]");
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let regions = v["regions"].as_array().unwrap();
    assert_eq!(regions.len(), 9);
    for r in regions {
        for s in r["samples"].as_array().unwrap() {
            assert_eq!((s["dim"]["num"].as_i64(), s["dim"]["den"].as_i64()), (Some(1), Some(1)));
        }
    }
    assert!(v.get("params").is_none());
}

#[test]
fn piecewise_one_minus_st_changes_form() {
    let v = json(&run(&["piecewise", "--json"], ONE_MINUS_ST));
    let certs: Vec<Value> = v["regions"].as_array().unwrap().iter().filter(|r| r["open"] == true).map(|r| r["cert"].clone()).collect();
    assert_eq!(certs.len(), 4);
    assert_eq!(certs[0], serde_json::json!([-1, 1, 1]));
    assert_eq!(certs[2], serde_json::json!([1, -1, -1]));
}

#[test]
fn input_errors_exit_two() {
    for (args, input) in [
        (vec!["dim", "--qs", "0", "--qt", "1"], ONE_MINUS_ST),
        (vec!["dim", "--qs", "1/2", "--qt", "x"], ONE_MINUS_ST),
        (vec!["dim", "--qs", "1/2", "--qt", "1/3"], "basis group size 1x1 [ Ts ]"),
        (vec!["dim", "--qs", "1/2", "--qt", "1/3"], "basis group size 1x2 [ e ]"),
        (vec!["dim", "--qs", "1/2", "--qt", "1/3"], "basis group size 1x1 [ (e + s)^-1 ]"),
        (vec!["piecewise"], "basis tau size 1x1 [ Ts ]"),
        (vec!["verify", "--grid", "1/4"], ""),
        (vec!["dim", "--qt", "1/3"], ONE_MINUS_ST),
        (vec!["frobnicate"], ""),
    ] {
        let out = run(&args, input);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
        assert!(out.stdout.is_empty());
    }
    let out = run(&["dim", "--qs", "1/2", "--qt", "1/3"], "basis group size 1x1 [ e + ]");
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 1, column 28"));
}

#[test]
fn verify_small_grid() {
    let out = run(&["verify", "--depth", "6", "--grid", "1/4:4/9, 9/4:4/9", "--json"], "");
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() > 10);
    assert!(checks.iter().all(|c| c["passed"] == true));
    // non-square parameters run the float path without the exact recurrence checks
    let out = run(&["verify", "--depth", "6", "--grid", "1/2:1/3"], "");
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS st unitary at") && !text.contains("recurrence"));
}

#[test]
fn selftest_passes() {
    let out = run(&["selftest", "--json"], "");
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 10);
    assert!(checks.iter().all(|c| c["passed"] == true));
}
