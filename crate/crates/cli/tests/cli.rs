use std::process::{Command, Output};

use serde_json::Value;

fn chern(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chern")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = chern(&full);
    let v: Value = serde_json::from_slice(&o.stdout).expect("valid JSON on stdout");
    (v, o.status.code().expect("exit code"))
}

fn validator() -> jsonschema::Validator {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/schema/report.schema.json")).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

#[test]
fn graded_a4_reports_twelve_in_degree_two() {
    let o = chern(&["graded", "A4", "--depth", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("degree 2: Z/12"), "{text}");
    assert!(text.contains("degree 1: Z/3"));

    let (v, code) = json(&["graded", "A4", "--depth", "6"]);
    assert_eq!(code, 0);
    let degrees = v["degrees"].as_array().unwrap();
    assert_eq!(degrees.len(), 6);
    assert_eq!(degrees[1]["degree"], 2);
    assert_eq!(degrees[1]["invariants"]["divisors"], serde_json::json!([12]));
}

#[test]
fn verify_q8_passes() {
    let o = chern(&["verify", "q8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

/// For `C2 <= C4`, `N(r1 - 1) = N(r1) + N(-1) - ind(r1)` with `N(r1)` and
/// `N(-1) = -1 + C[C4/C2]` both the order-2 character, so the result is
/// `2 chi - (psi + psi-bar)` for `psi` faithful.
#[test]
fn norm_index_two_example() {
    let (v, code) = json(&["norm", "C4", "--sub", "C2", "--expr", "r-1"]);
    assert_eq!(code, 0);
    assert_eq!(v["index"], 2);
    assert_eq!(v["index_two_formula_agrees"], true);
    // C4 rows in canonical order: trivial, order-2 character, then the two faithful ones
    assert_eq!(v["norm"]["coeffs"], serde_json::json!([0, 2, -1, -1]));
    assert_eq!(v["input"]["coeffs"], serde_json::json!([-1, 1]));

    let by_elements = json(&["norm", "C4", "--sub-elements", "e,g^2", "--expr", "r1 - r0"]).0;
    assert_eq!(by_elements["norm"], v["norm"]);
}

#[test]
fn table_matches_known_a4_values() {
    let (v, code) = json(&["table", "A4"]);
    assert_eq!(code, 0);
    assert_eq!(v["degrees"], serde_json::json!([1, 1, 1, 3]));
    assert_eq!(v["class_sizes"], serde_json::json!([1, 4, 4, 3]));
    assert_eq!(v["rows"][3], serde_json::json!(["3", "0", "0", "-1"]));
}

#[test]
fn saturated_and_stable_commands() {
    let (v, code) = json(&["saturated", "A4", "--depth", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["saturated"], false);
    assert_eq!(v["first_failing_degree"], 2);
    assert_eq!(v["degrees"][1]["invariants"]["divisors"], serde_json::json!([6]));

    let (v, code) = json(&["stable", "PSL(2,5)", "-p", "5", "--depth", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["sylow"]["order"], 5);
    assert_eq!(v["normalizer_order"], 10);
    let divs: Vec<Value> =
        v["degrees"].as_array().unwrap().iter().map(|d| d["invariants"]["divisors"].clone()).collect();
    assert_eq!(
        divs,
        vec![serde_json::json!([]), serde_json::json!([5]), serde_json::json!([]), serde_json::json!([5])]
    );
}

#[test]
fn exit_codes() {
    assert_eq!(chern(&["graded", "C0"]).status.code(), Some(2));
    assert_eq!(chern(&["table", "PSL(2,5)"]).status.code(), Some(2));
    assert_eq!(chern(&["norm", "A4", "--sub", "C3", "--expr", "r"]).status.code(), Some(2));
    assert_eq!(chern(&["norm", "C4", "--sub", "C2", "--expr", "r5"]).status.code(), Some(2));
    assert_eq!(chern(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(chern(&["frobnicate"]).status.code(), Some(2));
    let err = chern(&["graded", "C4x"]);
    assert!(String::from_utf8_lossy(&err.stderr).contains("offset 3"));
}

#[test]
fn output_is_byte_deterministic() {
    for args in [&["--json", "verify", "norms"][..], &["saturated", "Q8"], &["--json", "stable", "A4", "-p", "2"]] {
        let a = chern(args);
        let b = chern(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn json_reports_validate_against_the_schema() {
    let v = validator();
    let runs: [&[&str]; 9] = [
        &["group", "info", "PSL(2,5)"],
        &["group", "info", "C4xC4"],
        &["table", "D5"],
        &["graded", "C4xC4", "--depth", "3"],
        &["saturated", "D3", "--depth", "3"],
        &["stable", "PSL(2,7)", "-p", "7", "--depth", "3"],
        &["norm", "C3xC3", "--sub", "C3", "--expr", "C_1(r1)^2 - 2"],
        &["verify", "a4"],
        &["table", "PSL(2,7)"],
    ];
    for args in runs {
        let (report, _) = json(args);
        if let Err(e) = v.validate(&report) {
            panic!("{args:?}: {e}");
        }
    }
    let broken = serde_json::json!({ "command": "graded", "group": "A4" });
    assert!(!v.is_valid(&broken));
}
