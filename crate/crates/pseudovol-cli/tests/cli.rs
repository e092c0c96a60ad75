use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_pseudovol"));
    c.current_dir(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../.."));
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn classify_open_plane() {
    let out = run(&["classify", "--p", "2", "--q", "2", "--plane", "[[1,0,0,0],[0,0,1,0]]"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["label"], "(1,1,0)");
    assert_eq!(v["open"], true);
    assert!((v["cos2theta"].as_f64().unwrap() + 1.0).abs() < 1e-12);
}

#[test]
fn classify_light_cone_plane() {
    let out = run(&["classify", "--p", "2", "--q", "2", "--plane", "[[1,0,1,0],[0,1,0,1]]"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["label"], "(0,0,2)");
    assert_eq!(v["closed"], true);
}

#[test]
fn malformed_input_exits_2() {
    let out = run(&["classify", "--p", "2", "--q", "2", "--plane", "[[1,0,0,0],[0,0,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
    assert_eq!(run(&["classify", "--p", "2", "--q", "2", "--plane", "[[1,0,0]]"]).status.code(), Some(2));
    assert_eq!(run(&["evaluate", "--p", "1", "--q", "1", "--valuation", "nope", "--body", "triangle.json"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn evaluate_examples() {
    let out = run(&["evaluate", "--p", "2", "--q", "2", "--valuation", "phi_minus_crofton", "--body", "square12.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!((json(&out)["value"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-6);
    let out = run(&["evaluate", "--p", "1", "--q", "1", "--valuation", "phi_minus", "--body", "triangle.json"]);
    assert!((json(&out)["value"].as_f64().unwrap() + 1.0).abs() < 1e-12);
    let out = run(&["evaluate", "--p", "1", "--q", "1", "--valuation", "phi_minus", "--body", "fixtures/triangle_facets.json"]);
    assert!((json(&out)["value"].as_f64().unwrap() + 1.0).abs() < 1e-12);
    let out = run(&["evaluate", "--p", "1", "--q", "1", "--valuation", "phi_plus", "--body", "square.json"]);
    assert!((json(&out)["value"].as_f64().unwrap() - 4.0).abs() < 1e-12);
    let out = run(&["evaluate", "--p", "2", "--q", "2", "--valuation", "phi_00", "--body", "square12.json"]);
    assert!(json(&out)["value"].as_f64().unwrap().abs() < 1e-6);
}

#[test]
fn crofton_valuation_outside_r22_is_rejected() {
    let out = run(&["evaluate", "--p", "2", "--q", "1", "--valuation", "phi_plus_crofton", "--body", "cube.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn constants_default_run_passes() {
    let out = bin().args(["constants"]).env("PSEUDOVOL_THREADS", "2").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 21);
    assert!(rows.iter().all(|r| r["pass"] == true));
    for key in ["name", "computed", "expected", "abs_err", "rel_err"] {
        assert!(rows[0].get(key).is_some(), "{key}");
    }
}

#[test]
fn constants_over_tight_tolerance_exits_1() {
    let out = run(&["constants", "--tolerance", "1e-15"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL"));
}

#[test]
fn constants_csv_and_determinism() {
    let a = bin().args(["constants", "--format", "csv"]).env("PSEUDOVOL_THREADS", "1").output().unwrap();
    let b = bin().args(["constants", "--format", "csv"]).env("PSEUDOVOL_THREADS", "4").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    let mut r = csv::Reader::from_reader(a.stdout.as_slice());
    assert_eq!(r.headers().unwrap().iter().take(5).collect::<Vec<_>>(), ["name", "computed", "expected", "abs_err", "rel_err"]);
    assert_eq!(r.records().count(), 21);
    let bad = bin().args(["constants"]).env("PSEUDOVOL_THREADS", "0").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn dims_and_census() {
    let out = run(&["dims", "--p", "2", "--q", "2", "--k", "2", "--space-kind", "continuous"]);
    assert_eq!(json(&out)["dim"], 0);
    let out = run(&["dims", "--p", "1", "--q", "1", "--k", "1", "--space-kind", "continuous"]);
    assert_eq!(json(&out)["dim"], 4);
    let out = run(&["census", "--p", "2", "--q", "1"]);
    let v = json(&out);
    assert_eq!(v["projective"]["open_count"], 3);
    let out = run(&["census", "--p", "2", "--q", "2", "--k", "2"]);
    let orbits = json(&out)["orbits"].as_array().unwrap().clone();
    assert_eq!(orbits.iter().filter(|o| o["open"] == true).count(), 3);
    assert_eq!(run(&["census", "--p", "2", "--q", "2", "--k", "9"]).status.code(), Some(2));
}

#[test]
fn klain_check_exit_codes() {
    let out = run(&["klain-check", "fixtures/klain_admissible.json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["admissible"], true);
    assert_eq!(v["fourier"]["coeffs"], serde_json::json!([-1.0, 0.5, 1.0]));
    assert_eq!(run(&["klain-check", "fixtures/klain_inadmissible.json"]).status.code(), Some(1));
    assert_eq!(run(&["klain-check", "fixtures/missing.json"]).status.code(), Some(2));
}

#[test]
fn pretty_output_is_aligned() {
    let out = run(&["census", "--p", "2", "--q", "2", "--k", "1", "--format", "pretty"]);
    let s = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<_> = s.lines().collect();
    assert!(lines[0].starts_with("label"));
    assert!(lines[1].starts_with("---"));
}
