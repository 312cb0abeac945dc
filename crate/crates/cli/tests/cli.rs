use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_koszul-lab"))
}

fn workspace() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    bin().current_dir(workspace()).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = run(&a);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn groebner_basis_of_empty_list_is_empty() {
    let v = json(&["gb", "--ideal", ""]);
    assert_eq!(v["basis"], Value::Array(vec![]));
}

#[test]
fn groebner_basis_is_reduced() {
    let v = json(&["gb", "--order", "lex", "--ideal", "x^2 - y, x*y - 1"]);
    let basis: Vec<&str> = v["basis"].as_array().unwrap().iter().map(|b| b.as_str().unwrap()).collect();
    assert_eq!(basis, vec!["x - y^2", "y^3 - 1"]);
}

#[test]
fn normal_form_reduces_modulo_basis() {
    let v = json(&["nf", "--ideal", "x^2 - y", "--poly", "x^3 + y"]);
    assert_eq!(v["normal_form"], "x*y + y");
}

#[test]
fn binomial_example_first_homology() {
    let v = json(&["koszul", "--ideal", "examples/binomial", "--index", "1"]);
    let row = &v["homology"][0];
    assert_eq!(row["index"], 1);
    assert_eq!(row["vanishing"], false);
    let ann: Vec<&str> = row["annihilator"].as_array().unwrap().iter().map(|b| b.as_str().unwrap()).collect();
    assert!(ann.contains(&"x*z - y*z - x*w + y*w"));
}

#[test]
fn injective_hull_coefficients() {
    let v = json(&[
        "koszul", "--ideal", "x, y", "--vars", "x,y,z", "--relations", "x^3, x^2*y, x^2*z, x*y^2, x*y*z, x*z^2, y^3, y^2*z, y*z^2, z^3",
        "--coefficients", "injective-hull",
    ]);
    assert_eq!(v["homology"].as_array().unwrap().len(), 2);
    assert_eq!(v["homology"][1]["vanishing"], false);
}

#[test]
fn closure_member_and_non_member() {
    let o = run(&["closure", "--ideal", "x^2, y^2", "--member", "x*y"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("member"));
    let o = run(&["closure", "--ideal", "x^2, y^3", "--member", "x*y"]);
    assert!(stdout(&o).starts_with("non-member"));
}

#[test]
fn monomial_closure_fills_the_polyhedron() {
    let v = json(&["closure", "--ideal", "x^4, y^4", "--monomial"]);
    assert_eq!(v["closure"].as_array().unwrap().len(), 5);
}

#[test]
fn colon_and_syzygies() {
    let v = json(&["colon", "--ideal", "x^2, x*y, y^2", "--by", "x, y"]);
    assert_eq!(v["colon"].as_array().unwrap().len(), 2);
    let v = json(&["syz", "--ideal", "x^2, x*y, y^2"]);
    assert_eq!(v["columns"].as_array().unwrap().len(), 2);
    assert_eq!(v["content"].as_array().unwrap().len(), 2);
}

#[test]
fn tor_and_resolution() {
    let v = json(&["tor", "--ideal", "x^2, x*y, y^2", "--t", "3"]);
    assert_eq!(v["vanishes"], true);
    let v = json(&["resolve", "--ideal", "x^2, x*y, y^2"]);
    assert_eq!(v["ranks"], serde_json::json!([1, 3, 2]));
    assert_eq!(v["complete"], true);
}

#[test]
fn registry_examples_hold() {
    let o = run(&["examples", "--all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAILS"));
}

#[test]
fn malformed_input_exits_with_one() {
    assert_eq!(run(&["gb", "--ideal", "x^^2"]).status.code(), Some(1));
    assert_eq!(run(&["gb"]).status.code(), Some(1));
    assert_eq!(run(&["check", "fixtures/broken.scn"]).status.code(), Some(1));
    assert_eq!(run(&["closure", "--ideal", "x^2", "--member", "x", "--fractional", "1/0"]).status.code(), Some(1));
    assert_eq!(run(&["probe", "--question", "3"]).status.code(), Some(1));
}

#[test]
fn exhausted_budget_is_inconclusive() {
    let o = run(&["--timeout", "0.000001", "koszul", "--ideal", "examples/binomial"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("timeout"));
}

#[test]
fn fixture_reports_match_golden_files() {
    for name in ["plane", "pfaffian", "binomial"] {
        let scn = format!("fixtures/{name}.scn");
        let o = run(&["check", &scn, "--format", "json"]);
        assert_eq!(o.status.code(), Some(0));
        let golden = fs::read_to_string(workspace().join(format!("fixtures/{name}.json"))).unwrap();
        assert_eq!(stdout(&o), golden, "{name}");
    }
}

#[test]
fn default_suite_is_deterministic_across_job_counts() {
    let a = run(&["check", "--format", "json"]);
    let b = run(&["check", "--format", "json", "--jobs", "1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["summary"]["theorem_refutations"], 0);
}

#[test]
fn probe_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("probe.json");
    let o = run(&["probe", "--question", "1", "--count", "4", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["outcomes"].as_array().unwrap().len(), 4);
}
