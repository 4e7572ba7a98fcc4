use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use fourier_pde::{parse_expr, Expr};
use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fourier-pde"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn same(rendered: &Value, expected: &str) -> bool {
    parse_expr(rendered.as_str().unwrap())
        .unwrap()
        .equivalent(&parse_expr(expected).unwrap())
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn csv_values(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

#[test]
fn cosine_square() {
    let v = json(&["fourier", "--kind", "cos", "--expr", "cos(x)^2", "--L", "pi"]);
    assert_eq!(v["general"]["a0"], "1/2");
    assert_eq!(v["general"]["an"], "0");
    assert_eq!(v["singular"][0]["n"], 2);
    assert_eq!(v["singular"][0]["a"], "1/2");
}

#[test]
fn trig_coefficients_with_singular_index() {
    let v = json(&["fourier", "--expr", "3*x^2*cos(7*x)", "--L", "pi"]);
    assert!(same(&v["general"]["a0"], "-6/49"));
    assert!(same(
        &v["general"]["an"],
        "12*(n^2+49)*(-1)^(n+1)/(n^4-98*n^2+2401)"
    ));
    assert_eq!(v["singular"][0]["n"], 7);
    assert!(same(&v["singular"][0]["a"], "(98*pi^2+3)/98"));
}

#[test]
fn zero_sine_coefficients() {
    let v = json(&["fourier", "--kind", "sin", "--expr", "0", "--L", "1"]);
    assert_eq!(v["general"]["bn"], "0");
    assert_eq!(v["singular"], Value::Array(vec![]));
}

#[test]
fn piecewise_from_file_and_inline() {
    let dir = TempDir::new().unwrap();
    let branches = r#"[{"interval": ["-pi", "0"], "expr": "0"}, {"interval": ["0", "pi"], "expr": "sin(3*x)"}]"#;
    let path = write(&dir, "f.json", branches);
    let a = json(&["fourier", "--kind", "complex", "--piecewise", &path, "--L", "pi"]);
    let b = json(&["fourier", "--kind", "complex", "--piecewise", branches, "--L", "pi"]);
    assert_eq!(a, b);
    assert!(same(&a["general"]["c0"], "1/(3*pi)"));
    assert_eq!(a["singular"][0]["n"], 3);
}

#[test]
fn quartic_series() {
    let v = json(&["series", "--expr", "x^4", "--L", "pi"]);
    assert!(same(&v["closed"], "pi^4/5"));
    assert!(same(&v["summand"], "8*(pi^2*n^2-6)*(-1)^n*cos(n*x)/n^4"));
    assert_eq!(v["truncation"], "inf");
}

#[test]
fn sine_series_keeps_resonant_mode() {
    let out = ok(&["series", "--kind", "sin", "--expr", "sin(15*x)", "--L", "pi", "--order", "20"]);
    assert!(parse_expr(out.trim()).unwrap().equivalent(&parse_expr("sin(15*x)").unwrap()));
}

#[test]
fn constant_cosine_series() {
    assert_eq!(ok(&["series", "--kind", "cos", "--expr", "1", "--L", "pi", "--order", "4"]).trim(), "1");
    let v = json(&["series", "--kind", "cos", "--expr", "1", "--L", "pi"]);
    assert_eq!(v["closed"], "1");
    assert_eq!(v["summand"], "0");
}

#[test]
fn infinite_series_warns_on_stderr() {
    let out = run(&["series", "--kind", "cos", "--expr", "x*sin(2*x)", "--L", "pi"]);
    assert!(out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("excluding n in {2}"), "{}", err);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["excluded"], serde_json::json!([2]));
}

#[test]
fn text_format_for_coefficients() {
    let out = ok(&["--format", "text", "fourier", "--kind", "cos", "--expr", "cos(x)^2", "--L", "pi"]);
    assert!(out.contains("kind = cos"), "{}", out);
}

#[test]
fn solve_heat_file() {
    let dir = TempDir::new().unwrap();
    let problem = write(
        &dir,
        "heat.json",
        r#"{"equation": "heat", "L": "1", "kappa": "1", "F": "x^2*(1-x)", "order": "inf"}"#,
    );
    let v = json(&["solve", &problem]);
    assert!(same(&v["closed"], "0"));
    assert!(same(
        &v["summand"],
        "-(4/pi^3)*(2*(-1)^n+1)*exp(-pi^2*n^2*t)*sin(n*pi*x)/n^3"
    ));
    assert_eq!(v["provenance"]["equation"], "heat");

    let solution = write(&dir, "heat.solution.json", &v.to_string());
    let csv = ok(&[
        "eval", "--solution", &solution, "--order", "128", "--times", "0", "--var", "x=0:1:41",
    ]);
    assert!(csv.starts_with("t,x,value\n"));
    let rows = csv_values(&csv);
    assert_eq!(rows.len(), 41);
    let worst = rows
        .iter()
        .map(|r| (r[2] - r[1] * r[1] * (1.0 - r[1])).abs())
        .fold(0.0, f64::max);
    assert!(worst <= 1e-3, "initial data error {}", worst);
}

#[test]
fn solve_parabolic_file() {
    let dir = TempDir::new().unwrap();
    let problem = write(
        &dir,
        "parabolic.json",
        r#"{"equation": "parabolic", "L": "1", "kappa": "1", "v": "-9",
            "F": "exp(9*x/2)*(5*sin(pi*x)+9*sin(2*pi*x)+2*sin(3*pi*x))"}"#,
    );
    let v = json(&["solve", &problem]);
    assert!(same(
        &v["closed"],
        "exp(9*x/2-81*t/4)*(2*exp(-9*pi^2*t)*sin(3*pi*x)+9*exp(-4*pi^2*t)*sin(2*pi*x)+5*exp(-pi^2*t)*sin(pi*x))"
    ));
}

#[test]
fn solve_membrane_file() {
    let dir = TempDir::new().unwrap();
    let problem = write(
        &dir,
        "membrane.json",
        r#"{"equation": "wave-disk", "c": "1", "geometry": {"R": "1"}, "F": "1 - r^4",
            "k": 2, "l": 2, "radial_rule": "simpson:14"}"#,
    );
    let out = dir.path().join("membrane.solution.json");
    ok(&["--output", out.to_str().unwrap(), "solve", &problem]);
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let modes = v["modes"].as_array().unwrap();
    let surviving: Vec<&Value> = modes.iter().filter(|m| m["a"].as_f64().unwrap().abs() > 1e-12).collect();
    assert_eq!(surviving.len(), 2);
    assert!((surviving[0]["a"].as_f64().unwrap() - 1.366663216985716).abs() < 1e-9);
    assert!((surviving[1]["a"].as_f64().unwrap() + 0.4858370155994775).abs() < 1e-9);

    let csv = ok(&[
        "eval", "--solution", out.to_str().unwrap(), "--var", "t=0:0:2", "--var", "r=0:0:2", "--var", "theta=0:1:2",
    ]);
    let rows = csv_values(&csv);
    assert!((rows[0][3] - (1.366663216985716 - 0.4858370155994775)).abs() < 1e-9);
}

#[test]
fn eval_is_deterministic_and_zero_is_zero() {
    let args = [
        "eval", "--expr", "exp(-t)*sin(pi*x)*cos(y)", "--times", "0,0.5", "--var", "x=0:1:5", "--var", "y=-1:1:3",
    ];
    let a = ok(&args);
    assert_eq!(a, ok(&args));
    assert_eq!(a.lines().count(), 1 + 2 * 5 * 3);
    assert_eq!(a.lines().next(), Some("t,x,y,value"));

    let zero = ok(&["eval", "--expr", "0", "--var", "x=0:1:4", "--times", "0,1"]);
    assert!(csv_values(&zero).iter().all(|r| r[2] == 0.0));
}

#[test]
fn eval_binds_constants() {
    let csv = ok(&["eval", "--expr", "k*x", "--set", "k=pi", "--var", "x=1:2:2"]);
    let rows = csv_values(&csv);
    assert!((rows[1][1] - 2.0 * std::f64::consts::PI).abs() < 1e-13);
}

#[test]
fn bessel_zero_listing() {
    let v = json(&["bessel-zeros", "--nu", "0", "--count", "3", "--derivative"]);
    let j1 = json(&["bessel-zeros", "--nu", "1", "--count", "3"]);
    for (a, b) in v.as_array().unwrap().iter().zip(j1.as_array().unwrap()) {
        assert!((a.as_f64().unwrap() - b.as_f64().unwrap()).abs() < 1e-12);
    }
    let half = json(&["bessel-zeros", "--nu", "0.5", "--count", "3"]);
    assert!((half[2].as_f64().unwrap() - 3.0 * std::f64::consts::PI).abs() < 1e-12);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["fourier", "--expr", "x^", "--L", "pi"]), 2);
    assert_eq!(code(&["fourier", "--expr", "x", "--L", "pi", "--kind", "wavelet"]), 2);
    assert_eq!(code(&["fourier", "--expr", "sin(exp(x))", "--L", "pi"]), 3);
    assert_eq!(code(&["eval", "--expr", "f(x)", "--var", "x=0:1:2"]), 5);
    assert_eq!(code(&["eval", "--expr", "x", "--var", "x=0:1:1"]), 2);
    assert_eq!(code(&["solve", "/nonexistent/problem.json"]), 2);

    let dir = TempDir::new().unwrap();
    let bogus = write(&dir, "bogus.json", r#"{"equation": "heat", "bogus": 1}"#);
    assert_eq!(code(&["solve", &bogus]), 2);
    let annulus = write(
        &dir,
        "annulus.json",
        r#"{"equation": "laplace-annulus", "geometry": {"R1": "1", "R2": "2", "bc": "neumann", "f": "cos(theta)", "g": "0"}}"#,
    );
    assert_eq!(code(&["solve", &annulus]), 4);
}

#[test]
fn rendered_expressions_reparse() {
    let v = json(&["series", "--kind", "trig", "--expr", "x^2*exp(x)", "--L", "1"]);
    for key in ["closed", "summand"] {
        let e: Expr = parse_expr(v[key].as_str().unwrap()).unwrap();
        assert!(same(&Value::String(e.to_string()), v[key].as_str().unwrap()));
    }
    assert!(Path::new(env!("CARGO_BIN_EXE_fourier-pde")).exists());
}
