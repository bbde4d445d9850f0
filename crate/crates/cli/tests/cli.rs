use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_varlagr")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).expect("json on stdout");
    (out.status.code().unwrap(), v)
}

fn check<'a>(v: &'a Value, name: &str) -> &'a Value {
    v["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap()
}

#[test]
fn hermite_report() {
    let (code, v) = json(&["report", "hermite", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "varlagr/1");
    assert_eq!(v["lagrangians"]["standard"], "(1/2)*[(y')^2 - (n)*y^2]*exp(-x^2/2)");
    assert_eq!(check(&v, "ml_annihilation")["observed"], "PASS");
    assert_eq!(check(&v, "recover_original")["observed"], "PASS");
    assert_eq!(check(&v, "helmholtz_one")["observed"], "FAIL");
    assert_eq!(check(&v, "helmholtz_one")["expected"], "FAIL");
    assert_eq!(check(&v, "helmholtz_es")["observed"], "PASS");
    let one = &v["helmholtz"][0]["conditions"][2];
    assert_eq!(one["condition"], 3);
    assert!(one["witness_x"].is_number());
}

#[test]
fn airy_flags_the_stated_coefficient() {
    let (code, v) = json(&["report", "airy"]);
    assert_eq!(code, 0);
    assert_eq!(v["lagrangians"]["mixed_identically_zero"], true);
    assert_eq!(v["gauge"]["phi"], "phi = 0.25*y^2");
    assert_eq!(v["gauge"]["stated_claim"], "stated");
    assert!((v["gauge"]["stated_ratio"].as_f64().unwrap() - 2.0).abs() < 1e-10);
}

#[test]
fn bessel_gauge_is_a_quarter() {
    let (code, v) = json(&["report", "bessel-regular", "--mu", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["gauge"]["stated_phi"], "phi = 0.125*y^2");
    assert!((v["gauge"]["stated_ratio"].as_f64().unwrap() - 2.0).abs() < 1e-10);
}

#[test]
fn custom_equations() {
    let (code, v) = json(&["custom", "--B", "0", "--C", "1", "--domain", "0", "6.28"]);
    assert_eq!(code, 0);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["expected"].is_null() || c["expected"] == c["observed"]));
    let (code, v) = json(&["custom", "--B", "g", "--C", "w^2", "-p", "g=0.1", "-p", "w=1"]);
    assert_eq!(code, 0);
    assert_eq!(v["equation"]["params"]["g"], 0.1);
    let (code, v) = json(&["custom", "--B", "1/(8*x)", "--C", "3/(16*x^2)", "--domain", "0", "5"]);
    assert_eq!(code, 0);
    assert_eq!(check(&v, "nsl_subset_member")["observed"], "PASS");
}

#[test]
fn negative_domain_ends_parse() {
    let out = run(&["custom", "--B", "0", "--C", "-x", "--domain", "-6", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn reports_are_byte_identical() {
    let a = run(&["report", "legendre", "--l", "2", "--json", "--seed", "7"]);
    let b = run(&["report", "legendre", "--l", "2", "--json", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn invalid_input_exits_with_two() {
    assert_eq!(run(&["report", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["report", "legendre", "--l", "1", "--m", "3"]).status.code(), Some(2));
    let out = run(&["custom", "--B", "1/(", "--C", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("byte"));
    assert_eq!(run(&["custom", "--B", "q", "--C", "1"]).status.code(), Some(2));
    assert_eq!(run(&["report", "airy", "--c1", "0", "--c2", "0"]).status.code(), Some(2));
}

#[test]
fn csv_grids_are_written() {
    let dir = std::env::temp_dir().join(format!("varlagr-cli-test-{}", std::process::id()));
    let out = run(&["report", "hermite", "--csv-dir", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.join("helmholtz_one.csv")).unwrap();
    assert!(text.starts_with("x,residual\n"));
    assert_eq!(text.lines().count(), 65);
    std::fs::remove_dir_all(&dir).unwrap();
}
