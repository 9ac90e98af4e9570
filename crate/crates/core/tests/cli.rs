use std::process::{Command, Output};

use serde_json::Value;

fn ltqft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ltqft")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = ltqft(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["rt5", "--link", "catalog:trefoil0"][..],
        &["jm-check", "--p", "5", "--k", "1", "--genus", "3", "--trials", "5", "--seed", "7"],
        &["complex-check", "--p", "5", "--k", "2", "--genus", "4"],
    ] {
        let a = ltqft(args);
        let b = ltqft(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let mut seq = args.to_vec();
        seq.insert(0, "--sequential");
        assert_eq!(a.stdout, ltqft(&seq).stdout, "{args:?} sequential");
    }
}

#[test]
fn json_shape() {
    let v = json(&["rt5", "--link", "catalog:lens3"]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["det_h1"], 3);
    let v = json(&["alexander", "--genus", "1", "--word", "catalog:trefoil-monodromy"]);
    assert_eq!(v["formulas_agree"], true);
    let v = json(&["cut-bound", "--link", "catalog:borromean", "--claimed-cut", "1"]);
    assert_eq!(v["order"], 1);
    assert_eq!(v["cut_bound_holds"], true);
}

#[test]
fn pretty_is_not_json() {
    let out = ltqft(&["--pretty", "dims", "--genus", "2"]);
    assert!(out.status.success());
    assert!(serde_json::from_slice::<Value>(&out.stdout).is_err());
}

#[test]
fn exit_codes() {
    assert_eq!(ltqft(&["rt5", "--link", "/nonexistent.pd"]).status.code(), Some(2));
    assert_eq!(ltqft(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(ltqft(&["--limits", "strands=4", "rt5", "--link", "catalog:borromean"]).status.code(), Some(3));
    assert_eq!(ltqft(&["dims", "--genus", "99"]).status.code(), Some(3));
    assert_eq!(ltqft(&["complex-check", "--p", "17", "--k", "1", "--genus", "2"]).status.code(), Some(3));
    assert_eq!(ltqft(&["rt5", "--link", "catalog:no-such-entry"]).status.code(), Some(2));
}
