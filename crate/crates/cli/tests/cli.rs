//! End-to-end checks of the `krw` binary: output text and exit codes.

use std::process::{Command, Output};

fn krw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_krw"))
        .args(args)
        .env_remove("KRW_NMAX")
        .output()
        .expect("krw runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .trim_end()
        .to_string()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn eval_prints_exact_value() {
    let out = krw(&["eval", "--n", "2", "--k", "1", "--N", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), r#""-1""#);
}

#[test]
fn pade_one_one() {
    let out = krw(&["pade", "--n", "1", "--m", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["numerator"], serde_json::json!(["1", "1/2"]));
    assert_eq!(v["denominator"], serde_json::json!(["1", "-1/2"]));
    assert_eq!(v["contact_order"], 2);
    assert_eq!(v["first_defect"], serde_json::json!([3, "-1/12"]));
}

#[test]
fn verify_orthogonality_passes() {
    let out = krw(&["verify", "orthogonality", "--N", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["identity"], "orthogonality");
    assert_eq!(v["status"], "pass");
}

#[test]
fn verify_reports_rejected_variants() {
    let out = krw(&["verify", "eig-rep", "--N", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["rejected_variants"][0]["form"], "(N+1-k)");
    assert_eq!(v["rejected_variants"][0]["counterexample"]["actual"], "-1");
}

#[test]
fn kummer_accepts_negative_a() {
    let out = krw(&["verify", "kummer", "--N", "4", "--a", "-2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["params"]["a"], "-2");
}

#[test]
fn unknown_identity_lists_names() {
    let out = krw(&["verify", "nonsense", "--N", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    for name in ["orthogonality", "form-2f1", "mirror-gen", "pade"] {
        assert!(err.contains(name), "{err}");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(krw(&["eval", "--n", "1"]).status.code(), Some(2));
    assert_eq!(
        krw(&["eval", "--n", "5", "--k", "0", "--N", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(krw(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(krw(&["pade", "--n", "0", "--m", "0"]).status.code(), Some(2));
    assert_eq!(krw(&["verify", "duality", "--N", "0"]).status.code(), Some(2));
    assert_eq!(
        krw(&["pade", "--n", "1", "--m", "1", "--format", "csv"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn table_csv() {
    let out = krw(&["table", "--N", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "n,k=0,k=1,k=2\n0,1,1,1\n1,1,0,-1\n2,1,-1,1");
}

#[test]
fn table_json() {
    let v = json(&krw(&["table", "--N", "1"]));
    assert_eq!(v["rows"], serde_json::json!([["1", "1"], ["1", "-1"]]));
}

#[test]
fn eigvec_direct_and_adjoint() {
    let v = json(&krw(&["eigvec", "--k", "1", "--N", "2"]));
    assert_eq!(v["coefficients"], serde_json::json!(["1", "0", "-1"]));
    assert_eq!(v["eigenvalue"], "0");
    let v = json(&krw(&["eigvec", "--k", "2", "--N", "2", "--adjoint"]));
    assert_eq!(v["coefficients"], serde_json::json!(["1", "-1", "1"]));
    assert_eq!(v["basis"], "tilde");
}

#[test]
fn model_truncations() {
    let v = json(&krw(&["model", "bg", "--N", "3"]));
    assert_eq!(v["truncations"]["jp"], serde_json::json!([3]));
    let v = json(&krw(&["model", "bargmann", "--N", "3", "--adjoint"]));
    assert_eq!(v["truncations"]["jp"], serde_json::json!([0]));
    assert_eq!(v["truncations"]["jm"], serde_json::json!([3]));
    let v = json(&krw(&["model", "fd", "--N", "1"]));
    assert_eq!(v["j0"], serde_json::json!([["-1/2", "0"], ["0", "1/2"]]));
    assert!(v.get("truncations").is_none());
}

#[test]
fn verify_all_counts_and_determinism() {
    let first = krw(&["verify-all", "--N", "4"]);
    assert_eq!(first.status.code(), Some(0));
    let reports = json(&first);
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 17 * 4);
    assert!(reports.iter().all(|r| r["status"] == "pass"));
    let second = krw(&["verify-all", "--N", "4"]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn verify_all_reads_nmax_from_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_krw"))
        .arg("verify-all")
        .env("KRW_NMAX", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out).as_array().unwrap().len(), 17 * 2);
    let bad = Command::new(env!("CARGO_BIN_EXE_krw"))
        .arg("verify-all")
        .env("KRW_NMAX", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
