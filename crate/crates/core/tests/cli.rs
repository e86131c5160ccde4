//! Drives the `blobcx` binary end to end.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn blobcx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blobcx")).args(args).env_remove("BLOB_FIELD").output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report on stdout")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("blobcx-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn table_column(r: &Value, column: &str) -> Vec<Value> {
    let t = &r["tables"][0];
    let i = t["columns"].as_array().unwrap().iter().position(|c| c == column).unwrap();
    t["rows"].as_array().unwrap().iter().map(|row| row[i].clone()).collect()
}

#[test]
fn validate_builtin_and_shipped_file() {
    let out = blobcx(&["algebra", "validate", "truncated_polynomial", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let out = blobcx(&["algebra", "validate", &data("matrix_algebra_2.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(report(&out)["input_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn non_associative_file_fails_with_witness() {
    // x·1 is left out, so (x·1)·x = 0 while x·(1·x) = x·x = 1
    let text = r#"{"dim": 2, "basis": ["1", "x"], "unit": [[1, 1], [0, 1]],
        "mult": [[0, 0, 0, 1, 1], [0, 1, 1, 1, 1], [1, 1, 0, 1, 1]]}"#;
    let path = temp_file("nonassoc.json", text);
    let out = blobcx(&["algebra", "validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    let check = r["checks"].as_array().unwrap().iter().find(|c| c["name"] == "algebra/associativity").unwrap();
    assert_eq!(check["status"], "fail");
    assert_eq!(check["witness"]["triple"], serde_json::json!([1, 0, 1]), "{check}");
}

#[test]
fn malformed_file_is_a_usage_error() {
    let path = temp_file("broken.json", "{\n  \"dim\": 2,\n  \"basis\": [\"1\" \"x\"]\n}");
    let out = blobcx(&["algebra", "validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    let path = temp_file("range.json", r#"{"dim": 1, "basis": ["1"], "unit": [[1, 1]], "mult": [[0, 0, 3, 1, 1]]}"#);
    let out = blobcx(&["algebra", "validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("mult[0]"));
}

#[test]
fn hochschild_of_ground_field_and_free_bimodule() {
    let out = blobcx(&["hochschild", "ground_field", "--cap", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(table_column(&report(&out), "betti"), vec![1, 0, 0, 0, 0]);
    let out = blobcx(&["hochschild", "free_bimodule(truncated_polynomial 3)", "--cap", "4"]);
    assert_eq!(table_column(&report(&out), "betti"), vec![3, 0, 0, 0]);
}

#[test]
fn blob_command_tables() {
    let out = blobcx(&["blob", "ground_field", "--sites", "1", "--cap", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(table_column(&r, "dim"), vec![1, 0, 0]);
    assert_eq!(r["config"]["manifold"], "circle(1)");

    let out = blobcx(&["blob", "truncated_polynomial", "2", "--sites", "3", "--marked", "--cap", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let skein = r["checks"].as_array().unwrap().iter().find(|c| c["name"] == "skein").unwrap();
    assert_eq!(skein["witness"]["dim"], 2);
}

#[test]
fn budget_refusal_exit_code() {
    let out = blobcx(&["blob", "matrix_algebra", "2", "--sites", "6", "--marked", "--cap", "3"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds the budget"));
}

#[test]
fn compare_writes_out_file_and_is_deterministic() {
    let path = std::env::temp_dir().join(format!("blobcx-{}-compare.json", std::process::id()));
    let args = ["compare", "truncated_polynomial", "2", "--study", "2..4", "--out", path.to_str().unwrap()];
    let out = blobcx(&args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let first = std::fs::read(&path).unwrap();
    blobcx(&args);
    assert_eq!(first, std::fs::read(&path).unwrap());
    let r: Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(r["config"]["field"], "Q");
    assert_eq!(r["config"]["study"], "2..4");
    assert!(r["checks"].as_array().unwrap().iter().any(|c| c["name"] == "study/degree-0" && c["status"] == "pass"));
}

#[test]
fn prime_field_mode() {
    let out = Command::new(env!("CARGO_BIN_EXE_blobcx")).args(["compare", "matrix_algebra", "2"]).env("BLOB_FIELD", "p:7").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["config"]["field"], "GF(7)");
    let out = Command::new(env!("CARGO_BIN_EXE_blobcx")).args(["compare", "ground_field"]).env("BLOB_FIELD", "p:8").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_source_and_flags() {
    assert_eq!(blobcx(&["hochschild", "quaternions"]).status.code(), Some(2));
    assert_eq!(blobcx(&["verify", "all", "--profile", "slow"]).status.code(), Some(2));
    assert_eq!(blobcx(&["blob", "ground_field", "--manifold", "interval", "--marked"]).status.code(), Some(2));
}
