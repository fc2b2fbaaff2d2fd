use std::process::{Command, Output};

use serde_json::Value;

fn lrb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lrb")).args(args).output().expect("the lrb binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn minpoly_prints_the_verdict() {
    let o = lrb(&["minpoly", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "X(X-1)(X-2)(X-3): minimal — PASS\n");
}

#[test]
fn spectrum_full_n2_lists_the_schur_images() {
    let o = lrb(&["spectrum", "--n", "2", "--space", "full", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v["eigenvalues"].as_array().unwrap();
    let schur: Vec<&str> = rows.iter().map(|r| r["schur"].as_str().unwrap()).collect();
    assert_eq!(schur, ["s(2)+s(1,1)", "s(2)+s(1,1)", "s(2)"]);
    let dims: Vec<i64> = rows.iter().map(|r| r["dim"].as_i64().unwrap()).collect();
    assert_eq!(dims, [2, 2, 1]);
    assert_eq!(v["monoid"], "words");
    assert_eq!(v["timestamp"], Value::Null);
}

#[test]
fn flag_spectrum_stratum() {
    let o = lrb(&["spectrum", "--n", "3", "--q", "2", "--space", "stratum:1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    // seven lines, each a block of F_1^(q): eigenvalue 0 once, eigenvalue 1 once
    assert_eq!(stdout(&o), "j,eigenvalue,dim,predicted,pass\n0,0,0,0,PASS\n1,1,7,7,PASS\n");
}

#[test]
fn identical_invocations_give_identical_bytes() {
    let args = ["verify", "--checks", "1,3,7", "--format", "json"];
    let (a, b) = (lrb(&args), lrb(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["all_pass"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 3);
    assert_eq!(v["invocation"][0], "verify");
}

#[test]
fn full_verify_passes() {
    let o = lrb(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("criterion")).count(), 11);
    assert!(text.ends_with("verify: PASS\n"));
}

#[test]
fn usage_errors() {
    for args in [
        &["spectrum"][..],
        &["spectrum", "--n", "x"],
        &["rtt", "--n", "3", "--format", "xml"],
        &["verify", "--checks", "12"],
    ] {
        let o = lrb(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    let o = lrb(&["spectrum", "--n", "5", "--q", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("limit 800"));
}

#[test]
fn rtt_summary() {
    let o = lrb(&["rtt", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("1/4         8"), "{text}");
    assert!(text.contains("24 orderings; column stochastic: true; uniform stationary distribution: true; PASS"));
}
