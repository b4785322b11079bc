//! Runs the installed binary and checks exit codes and output shape.

use std::process::{Command, Output};

use serde_json::Value;

fn qtorus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtorus"))
        .args(args)
        .env_remove("QTORUS_MAX")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn element_prints_standard_form() {
    let o = qtorus(&["element", "b-alpha0", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "q^-2·x^-2·y^-1 + q^-2·x^2·y");
    let o = qtorus(&["element", "b-alpha0", "1", "--route", "closed"]);
    assert_eq!(stdout(&o).trim(), "q^-2·x^-2·y^-1 + q^-2·x^2·y");
    let o = qtorus(&["element", "b1r", "-3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn element_json_round_trips() {
    let o = qtorus(&["element", "theta", "3", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["family"], "THETA");
    let e = qtorus::Element::from_json(&v["element"]).unwrap();
    let mut b = qtorus::Builder::new();
    assert_eq!(e, b.theta(3, qtorus::Which::Plain));
}

#[test]
fn bad_input_is_a_usage_error() {
    for args in [
        vec!["element", "b-omega", "1"],
        vec!["element", "h", "0"],
        vec!["element", "theta", "two"],
        vec!["verify", "--suite", "everything"],
        vec!["verify", "--range", "3"],
        vec!["series", "sigma"],
    ] {
        let o = qtorus(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn verify_reports_pass_and_exit_zero() {
    let o = qtorus(&["verify", "--suite", "dolan-grady"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS dolan-grady"));
}

fn without_timing(mut v: Value) -> Value {
    for r in v["reports"].as_array_mut().unwrap() {
        r["elapsed_ms"] = Value::Null;
    }
    v
}

#[test]
fn json_reports_are_deterministic_and_sorted() {
    let args = [
        "verify",
        "--suite",
        "series",
        "--suite",
        "closed-forms",
        "--suite",
        "commutation",
        "--max",
        "3",
        "--jobs",
        "3",
        "--format",
        "json",
    ];
    let a: Value = serde_json::from_str(&stdout(&qtorus(&args))).unwrap();
    let b: Value = serde_json::from_str(&stdout(&qtorus(&args))).unwrap();
    assert_eq!(without_timing(a.clone()), without_timing(b));
    let names: Vec<&str> = a["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["suite"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["closed-forms", "commutation", "series"]);
    for r in a["reports"].as_array().unwrap() {
        for key in ["suite", "params", "status", "witness", "elapsed_ms"] {
            assert!(r.get(key).is_some(), "missing {key}");
        }
        assert_eq!(r["status"], "pass");
        assert!(r["witness"].is_null());
    }
}

#[test]
fn environment_default_is_echoed() {
    let o = Command::new(env!("CARGO_BIN_EXE_qtorus"))
        .args(["verify", "--suite", "commutation"])
        .env("QTORUS_MAX", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(
        text.lines().next().unwrap().contains("QTORUS_MAX=3"),
        "{text}"
    );
    assert!(text.contains("maxN=3"));
}

#[test]
fn ranges_accept_negative_bounds() {
    let o = qtorus(&[
        "verify", "--suite", "z-forms", "--max", "2", "--range", "-1..1",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("[-1, 1]"));
}
