use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rigidclass"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn schema() -> JSONSchema {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../schemas/report.v1.json");
    let raw: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    JSONSchema::compile(&raw).expect("schema compiles")
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&full)).unwrap();
    if let Err(errors) = schema().validate(&v) {
        let msgs: Vec<String> = errors.map(|e| format!("{e} at {}", e.instance_path)).collect();
        panic!("{args:?} violates the schema: {msgs:?}");
    }
    v
}

#[test]
fn vey_lists_rigid_class_of_degree_11() {
    let v = json(&["vey", "--q", "4", "--rigid-only"]);
    let classes = v["results"]["classes"].as_array().unwrap();
    assert!(classes.iter().any(|c| c["index"] == "y2c2^2" && c["degree"] == 11));
    assert!(classes.iter().all(|c| c["rigid"] == true));
}

#[test]
fn vey_q1_single_row() {
    let v = json(&["vey", "--q", "1"]);
    let classes = v["results"]["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 1);
    assert_eq!(classes[0]["index"], "y1c1");
    assert_eq!(classes[0]["degree"], 3);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&["vey", "--q", "0"]), 2);
    assert_eq!(code(&["frame", "--case", "2k", "--k", "1"]), 2);
    assert_eq!(code(&["catalog", "--q", "5", "--dim", "11"]), 2);
    assert_eq!(code(&["pontrjagin", "--q", "1"]), 2);
    assert_eq!(code(&["permanence", "--q", "6", "--seed", "y2^2c2", "--r", "2"]), 2);
    assert_eq!(code(&["bogus"]), 2);
}

#[test]
fn budget_errors_exit_3() {
    let out = run(&["cohomology", "--q", "12"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--max-dim"));
    assert_eq!(code(&["vey", "--q", "30", "--max-dim", "1000"]), 3);
    assert_eq!(code(&["frame", "--case", "2k", "--k", "2", "--max-dim", "10"]), 3);
}

#[test]
fn cohomology_q1() {
    let v = json(&["cohomology", "--q", "1"]);
    assert_eq!(v["results"]["dimensions"], serde_json::json!({"0": 1, "3": 1}));
}

#[test]
fn cohomology_framed_matches_vey() {
    let v = json(&["cohomology", "--q", "2", "--framed"]);
    assert_eq!(v["results"]["matchesVeyBasis"], true);
    assert_eq!(v["results"]["dimensions"], serde_json::json!({"0": 1, "5": 2, "7": 1, "8": 2}));
}

#[test]
fn pontrjagin_blocks() {
    let v = json(&["pontrjagin", "--q", "6"]);
    let blocks = v["results"]["blocks"].as_array().unwrap();
    let b8 = blocks.iter().find(|b| b["degree"] == 8).unwrap();
    assert_eq!(b8["matrix"], serde_json::json!([["2/1", "0/1"], ["1/1", "1/1"]]));
    assert_eq!(v["results"]["pass"], true);

    let v = json(&["pontrjagin", "--q", "2"]);
    assert_eq!(v["results"]["blocks"].as_array().unwrap().len(), 1);
    assert_eq!(v["results"]["blocks"][0]["matrix"], serde_json::json!([["1/1"]]));

    let v = json(&["pontrjagin", "--q", "10"]);
    assert_eq!(v["results"]["pass"], true);
}

#[test]
fn frame_sphere_case() {
    let v = json(&["frame", "--case", "4k2", "--k", "2"]);
    let r = &v["results"];
    assert_eq!(r["classes"][0]["index"], "y4c4");
    assert_eq!(r["classes"][0]["nonzero"], true);
    assert_eq!(r["vanishing"][0]["index"], "y2c2^3");
    assert_eq!(r["vanishing"][0]["zero"], true);
    assert_eq!(r["certified"], true);
}

#[test]
fn frame_product_case_reports_one_class() {
    let v = json(&["frame", "--case", "2k", "--k", "2"]);
    let classes = v["results"]["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 1);
    assert_eq!(classes[0]["index"], "y2c2^2");
    assert_eq!(classes[0]["image"], "2*u1*a1^2*a2^2");
}

#[test]
fn catalog_families() {
    let v = json(&["catalog", "--q", "4", "--dim", "11"]);
    let classes = v["results"]["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 1);
    assert_eq!(classes[0]["index"], "y2c2^2");
    assert_eq!(v["results"]["lattice"], "Z");

    let v = json(&["catalog", "--q", "6", "--dim", "15"]);
    assert_eq!(v["results"]["classes"].as_array().unwrap().len(), 2);
    assert_eq!(v["results"]["lattice"], "Z^2");
    for c in v["results"]["classes"].as_array().unwrap() {
        assert_eq!(c["statement"], "pairing scales linearly in l; distinct l => distinct classes");
    }

    let v = json(&["catalog", "--q", "6", "--dim", "14"]);
    assert!(v["results"]["classes"].as_array().unwrap().is_empty());
    assert!(stdout(&["catalog", "--q", "6", "--dim", "14"]).contains("(empty)"));
}

#[test]
fn remaining_commands_validate() {
    json(&["rqs", "--q", "6"]);
    json(&["rigid-table", "--q-max", "8"]);
    json(&["permanence", "--q", "6", "--seed", "y2c2^3", "--r", "2"]);
    json(&["cohomology", "--q", "2", "--unframed", "--representatives"]);
}

#[test]
fn selftest_names_failures() {
    let out = run(&["selftest", "--criterion", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("algebra-laws"));
    let out = run(&["selftest", "--criterion", "9"]);
    let text = String::from_utf8_lossy(&out.stdout);
    if out.status.code() != Some(0) {
        assert_eq!(out.status.code(), Some(4));
        assert!(text.contains("failing: growth-table"));
    }
}

#[test]
fn output_is_byte_identical() {
    for args in [
        &["vey", "--q", "5"][..],
        &["cohomology", "--q", "3", "--representatives", "--format", "json"],
        &["pontrjagin", "--q", "8", "--format", "csv"],
        &["frame", "--case", "2k", "--k", "3", "--format", "json"],
        &["selftest", "--criterion", "5"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn csv_is_flat() {
    let text = stdout(&["rqs", "--q", "6", "--format", "csv"]);
    assert_eq!(text, "class,family,degree\ny2c2^3,A,15\ny4c4,B,15\ny2y4c2^3,A,22\n");
}

#[test]
fn schema_rejects_malformed_reports() {
    let mut v = json(&["pontrjagin", "--q", "2"]);
    let s = schema();
    v["results"]["blocks"][0]["matrix"][0][0] = serde_json::json!(1.0);
    assert!(!s.is_valid(&v));
    let mut v = json(&["vey", "--q", "1"]);
    v["exact"] = serde_json::json!(false);
    assert!(!s.is_valid(&v));
}
