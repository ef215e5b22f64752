use std::path::{Path, PathBuf};
use std::process::Command;

use fockpair::cli::RunReport;
use serde_json::{json, Value};
use tempfile::TempDir;

fn matrix_file(dir: &Path, name: &str, role: &str, rows: &[&[(f64, f64)]]) -> PathBuf {
    let entries: Vec<Vec<Value>> = rows
        .iter()
        .map(|r| r.iter().map(|&(re, im)| json!({"re": re, "im": im})).collect())
        .collect();
    let path = dir.join(name);
    let body = json!({"dim": rows.len(), "role": role, "entries": entries});
    std::fs::write(&path, body.to_string()).unwrap();
    path
}

fn sigma(dir: &Path, sign: f64) -> PathBuf {
    let name = if sign > 0.0 { "sigma.json" } else { "minus_sigma.json" };
    matrix_file(dir, name, "antilinear_symmetric", &[&[(sign, 0.0), (0.0, 0.0)], &[(0.0, 0.0), (sign, 0.0)]])
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_fockpair")).args(args).output().unwrap();
    let code = out.status.code().unwrap();
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, report)
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn boundary_pair_by_method() {
    let dir = TempDir::new().unwrap();
    let (x, y) = (sigma(dir.path(), 1.0), sigma(dir.path(), -1.0));
    let (code, report) = run(&["pair", "--x", p(&x), "--y", p(&y), "--method", "series"]);
    assert_eq!(code, 2);
    assert_eq!(report["outcome"]["report"]["verdict"], "divergent");
    assert_eq!(report["exit_code"], 2);

    let (code, report) = run(&["pair", "--x", p(&x), "--y", p(&y), "--method", "abel"]);
    assert_eq!(code, 0);
    let re = report["outcome"]["report"]["value"][0].as_f64().unwrap();
    assert!((re - 0.5).abs() < 1e-4);

    let (code, report) = run(&["pair", "--x", p(&x), "--y", p(&y), "--method", "closed"]);
    assert_eq!(code, 0);
    assert!((report["outcome"]["value"][0].as_f64().unwrap() - 0.5).abs() < 1e-12);

    let (code, report) = run(&["pair", "--x", p(&x), "--y", p(&x), "--method", "closed"]);
    assert_eq!(code, 4);
    assert_eq!(report["outcome"]["kind"], "failure");
}

#[test]
fn norm_and_domain() {
    let dir = TempDir::new().unwrap();
    let z = matrix_file(dir.path(), "z.json", "antilinear_symmetric", &[&[(0.6, 0.0)]]);
    for method in ["closed", "series"] {
        let (code, report) = run(&["norm", "--z", p(&z), "--method", method]);
        assert_eq!(code, 0, "{method}");
        let value = report["outcome"]["value"].as_f64().or_else(|| report["outcome"]["series"]["value"][0].as_f64());
        assert!((value.unwrap() - 1.25).abs() < 1e-8, "{method}");
    }
    let s = sigma(dir.path(), 1.0);
    assert_eq!(run(&["norm", "--z", p(&s), "--method", "closed"]).0, 4);
    assert_eq!(run(&["norm", "--z", p(&s), "--method", "series"]).0, 2);
}

#[test]
fn matrix_commands() {
    let dir = TempDir::new().unwrap();
    let t = matrix_file(dir.path(), "t.json", "general", &[&[(2.0, 0.0), (0.0, 0.0)], &[(0.0, 0.0), (2.0, 0.0)]]);
    let (code, report) = run(&["detsqrt", "--matrix", p(&t)]);
    assert_eq!(code, 0);
    assert!((report["outcome"]["value"][0].as_f64().unwrap() - 2.0).abs() < 1e-12);

    let (code, report) = run(&["takagi", "--z", p(&sigma(dir.path(), 1.0))]);
    assert_eq!(code, 0);
    assert_eq!(report["outcome"]["values"], json!([1.0, 1.0]));

    let skew = matrix_file(dir.path(), "skew.json", "antilinear_symmetric", &[&[(0.0, 0.0), (1.0, 0.0)], &[(-1.0, 0.0), (0.0, 0.0)]]);
    assert_eq!(run(&["takagi", "--z", p(&skew)]).0, 1);
}

#[test]
fn input_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let one = matrix_file(dir.path(), "one.json", "antilinear_symmetric", &[&[(0.5, 0.0)]]);
    let two = sigma(dir.path(), 1.0);
    assert_eq!(run(&["pair", "--x", p(&one), "--y", p(&two), "--method", "closed"]).0, 1);
    assert_eq!(run(&["verify", "--suite", "nonsense"]).0, 1);
    assert_eq!(run(&["norm", "--z", "/nonexistent.json", "--method", "closed"]).0, 1);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"dim": 1, "role": "general", "entries": [[{"re": 1}]], "extra": 0}"#).unwrap();
    assert_eq!(run(&["detsqrt", "--matrix", p(&bad)]).0, 1);
}

#[test]
fn demos() {
    let (code, report) = run(&["demo", "sequence-noninvariance"]);
    assert_eq!(code, 0);
    let plain = report["outcome"]["plain"]["value"][0].as_f64().unwrap();
    let swapped = report["outcome"]["swapped"]["value"][0].as_f64().unwrap();
    assert!((plain - 0.5).abs() < 1e-6 && (swapped - 1.5).abs() < 1e-6);

    let (code, report) = run(&["demo", "divergence", "--dim", "4"]);
    assert_eq!(code, 0);
    assert!(report["outcome"]["max_relative_deviation"].as_f64().unwrap() < 1e-9);
}

#[test]
fn verify_is_deterministic_and_round_trips() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("wall_time_seconds");
        v
    };
    let (code, first) = run(&["verify", "--suite", "counterexamples", "--seed", "42"]);
    assert_eq!(code, 0);
    let (_, second) = run(&["verify", "--suite", "counterexamples", "--seed", "42"]);
    assert_eq!(strip(first.clone()), strip(second));

    let parsed: RunReport = serde_json::from_value(first.clone()).unwrap();
    assert_eq!(serde_json::to_value(&parsed).unwrap(), first);
}
