use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_g2homog"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn g2homog")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin().args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn verify_passing_case_exits_zero() {
    let o = run(&["catalog", "verify", "--case", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["tool"], "g2homog");
    assert_eq!(v["command"], "catalog verify");
    assert_eq!(v["catalog_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn failed_claims_set_the_exit_code() {
    // both listed 3biii instances fail; the count coincides with the usage code, the report disambiguates
    let o = run(&["catalog", "verify", "--case", "3biii"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["report"]["failed"], 2);
    let o = run(&["catalog", "verify", "--case", "3biii-21"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn explicit_parameters() {
    assert_eq!(run(&["catalog", "verify", "--case", "5ii", "--params", "1,2,-3"]).status.code(), Some(0));
    let o = run(&["invariants", "--case", "3biii", "--params", "1,3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["report"]["d3"], 4);
}

#[test]
fn usage_errors_exit_two() {
    let o = run(&["catalog", "verify", "--case", "nope"]);
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
    assert_eq!(run(&["catalog", "verify", "--case", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["catalog", "verify", "--case", "5ii", "--params", "1,2,3"]).status.code(), Some(2));
    assert_eq!(run(&["section5", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["invariants"]).status.code(), Some(2));
}

#[test]
fn malformed_input_exits_two() {
    assert_eq!(run_stdin(&["classify", "-"], "{not json").status.code(), Some(2));
    assert_eq!(run_stdin(&["classify", "-"], r#"{"dim":7,"degree":2,"terms":[]}"#).status.code(), Some(2));
    assert_eq!(run(&["classify", "/nonexistent/form.json"]).status.code(), Some(2));
}

#[test]
fn classify_from_file_and_stdin() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("omega.json");
    std::fs::write(&path, r#"{"dim":7,"degree":3,"terms":[{"idx":[1,2,3],"c":"2"}]}"#).unwrap();
    let o = run(&["classify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["report"]["class"], "degenerate");

    let phi = r#"{"dim":7,"degree":3,"terms":[
        {"idx":[1,2,3],"c":"1"},{"idx":[1,4,5],"c":"1"},{"idx":[1,6,7],"c":"1"},{"idx":[2,4,6],"c":"1"},
        {"idx":[2,5,7],"c":"-1"},{"idx":[3,4,7],"c":"-1"},{"idx":[3,5,6],"c":"-1"}]}"#;
    let o = run_stdin(&["classify", "-"], phi);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["report"]["class"], "definite");
}

#[test]
fn reports_are_deterministic() {
    let args = ["--emit-config", "catalog", "verify", "--case", "2ci-T"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["config"]["seed"], 20_240_611);
    let c = run(&["--jobs", "1", "complex-ranks", "--algebra", "su2+R4"]);
    let d = run(&["--jobs", "4", "complex-ranks", "--algebra", "su2+R4"]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn other_formats() {
    let o = run(&["--format", "csv", "catalog", "list"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.lines().count() > 20);
    let o = run(&["--format", "human", "invariants", "--case", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!o.stdout.is_empty());
}

#[test]
fn alignment_rederives() {
    let o = run(&["alignment"]);
    assert_eq!(o.status.code(), Some(0));
}

mod malformed {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn classify_never_panics(input in ".{0,80}") {
            let code = run_stdin(&["classify", "-"], &input).status.code();
            prop_assert!(code == Some(0) || code == Some(2), "exit {:?}", code);
        }

        #[test]
        fn mangled_forms_exit_zero_or_two(dim in 0usize..10, degree in 0usize..5, i in 0usize..12, c in "[-0-9/a]{0,4}") {
            let input = format!(r#"{{"dim":{dim},"degree":{degree},"terms":[{{"idx":[{i},2,3],"c":"{c}"}}]}}"#);
            let o = run_stdin(&["classify", "-"], &input);
            let code = o.status.code();
            prop_assert!(code == Some(0) || code == Some(2), "exit {:?} for {}", code, input);
            if code == Some(0) {
                prop_assert!(dim == 7 && degree == 3);
            }
        }
    }
}
