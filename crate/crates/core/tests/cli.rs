use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn dphase(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dphase")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn state_file(body: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(body.as_bytes()).unwrap();
    f
}

#[test]
fn decompose_examples() {
    let out = dphase(&["decompose", "--modulus", "5", "--matrix", "0,1,4,0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["word"], serde_json::json!([{"gen": "+", "exp": 1}, {"gen": "-", "exp": 4}, {"gen": "+", "exp": 1}]));
    assert_eq!(v["verified"], true);

    let v = json(&dphase(&["decompose", "--modulus", "7", "--matrix", "1,0,0,1"]));
    assert_eq!(v["word"], serde_json::json!([]));

    assert_eq!(dphase(&["decompose", "--modulus", "7", "--matrix", "1,1,1,1"]).status.code(), Some(2));

    let out = dphase(&["decompose", "--modulus", "5", "--matrix", "2,1,1,1", "--method", "bfs"]);
    assert_eq!(json(&out)["method"], "bfs");
    assert_eq!(json(&out)["verified"], true);
}

#[test]
fn rep_examples() {
    let v = json(&dphase(&["rep", "--dim", "2", "--parity", "even", "--matrix", "1,0,1,1"]));
    let u = &v["unitary"];
    let at = |i: usize, j: usize| (u[i][j][0].as_f64().unwrap(), u[i][j][1].as_f64().unwrap());
    let close = |(a, b): (f64, f64), (c, d): (f64, f64)| (a - c).abs() < 1e-12 && (b - d).abs() < 1e-12;
    assert!(close(at(0, 0), (1.0, 0.0)) && close(at(1, 1), (0.0, 1.0)));
    assert!(close(at(0, 1), (0.0, 0.0)) && close(at(1, 0), (0.0, 0.0)));

    let v = json(&dphase(&["rep", "--dim", "7", "--parity", "odd", "--matrix", "1,1,0,1"]));
    assert!(v["covariance_residual"].as_f64().unwrap() < 1e-10);
    assert_eq!(v["unitary"].as_array().unwrap().len(), 7);

    assert_eq!(dphase(&["rep", "--dim", "3", "--parity", "even", "--matrix", "1,0,0,1"]).status.code(), Some(2));
}

#[test]
fn wigner_csv() {
    let f = state_file(r#"{"dim": 3, "amplitudes": [[1, 0], [0, 0], [0, 0]]}"#);
    let out = dphase(&["wigner", "--state", f.path().to_str().unwrap(), "--parity", "odd"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "# parity=odd, modulus=3");
    let row0: Vec<f64> = lines[1].split(',').map(|x| x.parse().unwrap()).collect();
    assert!(row0.iter().all(|x| (x - 1.0 / 3.0).abs() < 1e-12));
    for line in &lines[2..4] {
        assert!(line.split(',').all(|x| x.parse::<f64>().unwrap().abs() < 1e-12));
    }
    let sum: f64 = lines[4].strip_prefix("# sum=").unwrap().parse().unwrap();
    assert!((sum - 1.0).abs() < 1e-10);

    let bad = state_file(r#"{"dim": 2, "amplitudes": [[1, 0], [1, 0]]}"#);
    let out = dphase(&["wigner", "--state", bad.path().to_str().unwrap(), "--parity", "even"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_examples() {
    let out = dphase(&["verify", "--dim", "5", "--parity", "odd", "--suite", "all"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["pass"], true);

    let out = dphase(&["verify", "--dim", "2", "--parity", "even", "--suite", "covariance"]);
    assert_eq!(out.status.code(), Some(0));

    assert_eq!(dphase(&["verify", "--dim", "4", "--parity", "odd"]).status.code(), Some(2));

    // a tolerance of zero cannot be met by floating-point residuals
    let out = dphase(&["--tol", "0", "verify", "--dim", "3", "--parity", "odd", "--suite", "covariance"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["pass"], false);
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--dim", "3", "--parity", "odd", "--suite", "projectivity"];
    assert_eq!(dphase(&args).stdout, dphase(&args).stdout);
}
