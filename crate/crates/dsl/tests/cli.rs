use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn algebroid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_algebroid")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = algebroid(&all);
    let v = serde_json::from_slice(&out.stdout).expect("json on stdout");
    (v, out.status.code().unwrap())
}

#[test]
fn exit_codes() {
    let contact = fixture("contact.alg");
    let corrupted = fixture("corrupted.alg");
    assert_eq!(algebroid(&["validate", &contact]).status.code(), Some(0));
    assert_eq!(algebroid(&["validate", &corrupted]).status.code(), Some(1));
    assert_eq!(algebroid(&["check-pair", &contact, "nothing"]).status.code(), Some(2));
    assert_eq!(algebroid(&["validate", "/nonexistent/file.alg"]).status.code(), Some(2));
    assert_eq!(algebroid(&["validate", &contact, "--trials", "0"]).status.code(), Some(2));
    assert_eq!(algebroid(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn parse_errors_go_to_stderr_with_positions() {
    let bad = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/err02_caret_without_exponent.alg");
    let bad = bad.display().to_string();
    let out = algebroid(&["validate", &bad]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert_eq!(stderr, format!("{bad}:2:50: syntax error: expected an exponent after '^'\n"));
    let (v, code) = json(&["validate", &bad]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "syntax");
    assert_eq!(v["error"]["line"], 2);
    assert_eq!(v["error"]["column"], 50);
    assert_eq!(v["checks"].as_array().unwrap().len(), 0);
}

#[test]
fn json_report_schema() {
    let (v, code) = json(&["check-pair", &fixture("contact.alg"), "contact", "--seed", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "check-pair contact");
    assert_eq!(v["seed"], 5);
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        assert!(c["name"].is_string());
        assert!(c["paper_ref"].is_string());
        assert_eq!(c["status"], "pass");
        assert!(c.get("counterexample").is_none());
    }
}

#[test]
fn failing_checks_carry_counterexamples() {
    let (v, code) = json(&["morphism", &fixture("contact.alg"), "perturbed"]);
    assert_eq!(code, 1);
    let failed: Vec<&Value> = v["checks"].as_array().unwrap().iter().filter(|c| c["status"] == "fail").collect();
    assert!(!failed.is_empty());
    for c in failed {
        let cx = &c["counterexample"];
        assert!(cx["inputs"].is_object());
        let residual = cx["residual"].as_str().unwrap();
        assert!(!residual.is_empty() && residual != "0");
    }
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let contact = fixture("contact.alg");
    let plane = fixture("poisson_plane.alg");
    let lie = fixture("lie_algebras.alg");
    let runs: [Vec<&str>; 5] = [
        vec!["check-pair", &contact, "contact"],
        vec!["dualize", &contact, "contact"],
        vec!["morphism", &contact, "perturbed"],
        vec!["triangular", &plane, "T", "zero", "pi"],
        vec!["triangular", &lie, "so3", "zero3", "Q"],
    ];
    for args in runs {
        let mut all = args.clone();
        all.extend(["--format", "json"]);
        let a = algebroid(&all);
        let b = algebroid(&all);
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn text_report_summarizes() {
    let out = algebroid(&["induce", &fixture("contact.alg"), "contact"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("jacobi contact_induced"));
    assert!(text.lines().any(|l| l.starts_with("PASS  ")));
    assert!(text.trim_end().ends_with("0 failed"));
}
