use std::path::PathBuf;

use ebase_cli::{run_with, EXIT_INVALID, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../core/fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ebase").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn schema() -> jsonschema::JSONSchema {
    let text = include_str!("../schema/report.schema.json");
    let value: Value = serde_json::from_str(text).unwrap();
    jsonschema::JSONSchema::compile(&value).unwrap()
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out, _) = run(&full);
    let value: Value =
        serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}"));
    let schema = schema();
    if let Err(errors) = schema.validate(&value) {
        let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
        panic!("{args:?} does not match the schema: {msgs:?}");
    }
    (code, value)
}

const IMP_FIXTURES: [&str; 11] = [
    "leaf", "carpet", "glue", "relax", "sdmf", "jdis", "modp", "modf", "geof6", "geof5", "usm",
];

#[test]
fn validate_leaf_exits_invalid() {
    let (code, out, _) = run(&["validate", &fixture("leaf.imp")]);
    assert_eq!(code, EXIT_INVALID);
    assert!(out.contains("faulty essential: abcd"), "{out}");
    assert!(out.contains("missing bc"), "{out}");
}

#[test]
fn carpet_aggregated_e_base_has_nine_lines() {
    let (code, out, _) = run(&[
        "bases",
        &fixture("carpet.imp"),
        "--which",
        "e",
        "--aggregate",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 9, "{out}");
}

#[test]
fn lifting_leaf_takes_one_round() {
    let (code, v) = run_json(&["lift", &fixture("leaf.imp"), "--until-valid"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["rounds"].as_array().unwrap().len(), 1);
    assert_eq!(v["valid"], true);
    assert_eq!(v["e_base"].as_array().unwrap().len(), 5);
    assert_eq!(v["ground"].as_array().unwrap().len(), 6);
}

#[test]
fn text_and_json_verdicts_agree() {
    for name in IMP_FIXTURES {
        let path = fixture(&format!("{name}.imp"));
        let (text_code, out, _) = run(&["validate", &path]);
        let (json_code, v) = run_json(&["validate", &path]);
        assert_eq!(text_code, json_code, "{name}");
        assert_eq!(
            out.starts_with("E-base: valid"),
            v["valid"] == true,
            "{name}"
        );
        assert_eq!(json_code == EXIT_OK, v["valid"] == true, "{name}");
    }
}

#[test]
fn every_command_matches_the_schema() {
    for name in IMP_FIXTURES {
        let path = fixture(&format!("{name}.imp"));
        assert_eq!(run_json(&["analyze", &path]).0, EXIT_OK);
        for which in ["dg", "cd", "d", "e", "binary"] {
            assert_eq!(run_json(&["bases", &path, "--which", which]).0, EXIT_OK);
        }
        assert_eq!(run_json(&["dot", &path, "--report"]).0, EXIT_OK);
    }
    for name in ["twin.sets", "grid.sets"] {
        assert_eq!(run_json(&["analyze", &fixture(name)]).0, EXIT_OK);
    }
    let (_, v) = run_json(&[
        "lift",
        &fixture("grid.sets"),
        "--sets",
        "abc,acd",
        "--closed-sets",
    ]);
    assert_eq!(v["valid"], true);
    assert_eq!(run_json(&["census", "--max-n", "3"]).0, EXIT_OK);
    assert_eq!(
        run_json(&["analyze", "/nonexistent/file.imp"]).0,
        EXIT_USAGE
    );
}

#[test]
fn binary_matroid_input_is_checked() {
    let (code, v) = run_json(&["validate", &data("fano.circ")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["binary_matroid_checked"], true);
    assert_eq!(v["criteria"]["geometric"], "holds");
    assert_eq!(v["essential"].as_array().unwrap().len(), 7);
}

#[test]
fn census_accepts_hyphenated_classes() {
    let (code, v) = run_json(&["census", "--max-n", "4", "--class", "meet-semidistributive"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["class"], "meet_semidistributive");
    assert_eq!(v["counterexamples"].as_array().unwrap().len(), 0);
    let (code, v) = run_json(&["census", "--max-n", "3", "--class", "no-such-class"]);
    assert_eq!(code, EXIT_USAGE);
    assert_eq!(v["command"], "error");
}

#[test]
fn geometric_census_is_clean() {
    let (code, v) = run_json(&["census", "--max-n", "5", "--geometric"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["spaces"], v["geometric"]);
}

#[test]
fn usage_errors_exit_with_one() {
    let (code, _, err) = run(&["bases", &fixture("leaf.imp"), "--which", "x"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(!err.is_empty());
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("validate"));
}

#[test]
fn parse_errors_carry_positions() {
    let dir = std::env::temp_dir().join(format!("ebase-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.imp");
    std::fs::write(&path, "ground: a b c\nimp: a -> q\n").unwrap();
    let (code, _, err) = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 2"), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn dot_marks_faulty_sets() {
    let (code, out, _) = run(&["dot", &fixture("leaf.imp"), "--report"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("digraph"));
    assert!(out.contains("purple"), "{out}");
}
