use std::path::PathBuf;
use std::process::{Command, Output};

use regex::Regex;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flagmorse"))
        .args(args)
        .env("FLAGMORSE_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Compares with a stored file; set `UPDATE_GOLDEN=1` to rewrite it.
fn assert_golden(name: &str, actual: &str) {
    let path = golden(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {name}"));
    assert_eq!(actual, want, "golden mismatch for {name}");
}

/// Checks a value against the subset of JSON Schema used by the shipped report schema.
fn validate(schema: &Value, v: &Value, path: &str) -> Result<(), String> {
    let err = |m: &str| Err(format!("{path}: {m}"));
    if let Some(t) = schema.get("type").and_then(Value::as_str) {
        let ok = match t {
            "object" => v.is_object(),
            "array" => v.is_array(),
            "string" => v.is_string(),
            "integer" => v.is_u64() || v.is_i64(),
            "number" => v.is_number(),
            "boolean" => v.is_boolean(),
            _ => return err(&format!("unknown type {t}")),
        };
        if !ok {
            return err(&format!("expected {t}"));
        }
    }
    if let Some(options) = schema.get("enum").and_then(Value::as_array) {
        if !options.contains(v) {
            return err("not in enum");
        }
    }
    if let (Some(p), Some(s)) = (schema.get("pattern").and_then(Value::as_str), v.as_str()) {
        if !Regex::new(p).unwrap().is_match(s) {
            return err("pattern mismatch");
        }
    }
    if let (Some(n), Some(s)) = (schema.get("minLength").and_then(Value::as_u64), v.as_str()) {
        if (s.chars().count() as u64) < n {
            return err("too short");
        }
    }
    if let Some(x) = v.as_f64() {
        if schema.get("minimum").and_then(Value::as_f64).is_some_and(|m| x < m) {
            return err("below minimum");
        }
        if schema.get("exclusiveMinimum").and_then(Value::as_f64).is_some_and(|m| x <= m) {
            return err("not above exclusive minimum");
        }
    }
    if let Some(obj) = v.as_object() {
        for key in schema.get("required").and_then(Value::as_array).into_iter().flatten() {
            if !obj.contains_key(key.as_str().unwrap()) {
                return err(&format!("missing {key}"));
            }
        }
        let props = schema.get("properties").and_then(Value::as_object);
        for (k, child) in obj {
            match props.and_then(|p| p.get(k)) {
                Some(s) => validate(s, child, &format!("{path}.{k}"))?,
                None if schema.get("additionalProperties") == Some(&Value::Bool(false)) => {
                    return err(&format!("unexpected property {k}"))
                }
                None => {}
            }
        }
    }
    if let Some(items) = v.as_array() {
        if schema.get("minItems").and_then(Value::as_u64).is_some_and(|n| (items.len() as u64) < n) {
            return err("too few items");
        }
        if let Some(s) = schema.get("items") {
            for (i, item) in items.iter().enumerate() {
                validate(s, item, &format!("{path}[{i}]"))?;
            }
        }
    }
    Ok(())
}

fn schema() -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/report.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn ell_table_lookup_matches_computed() {
    let o = run(&["ell-table"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 8, "header plus seven rows");
    assert!(text.lines().skip(1).all(|l| l.ends_with("yes")));
    assert_golden("ell_table.txt", &text);

    let o = run(&["ell-table", "--improved", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| r["agree"] == Value::Bool(true)));
    assert_eq!(rows[7]["lookup"][2], 7, "B4 improves to 2r-1");
}

#[test]
fn index_bound_for_projective_space() {
    let o = run(&["index-bound", "--m", "2", "--n", "2", "--family", "A", "--rank", "3", "--painted", "2,3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("lambda_0 = 1"), "{text}");
    assert!(text.contains("I = 2"), "{text}");

    let o = run(&["index-bound", "--m", "4", "--n", "5", "--family", "C", "--rank", "3", "--painted", "2,3", "--special", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["ell"], 5);
    assert_eq!(v["v"], 5);
    assert_eq!(v["index_bound"], 4 + 5 - 5 + 1, "v equals ell here");
}

#[test]
fn special_flag_requires_a_special_painting() {
    let o = run(&["index-bound", "--m", "1", "--n", "1", "--family", "A", "--rank", "3", "--special"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--special"));
}

#[test]
fn check_report_is_valid_and_deterministic() {
    let args = ["check", "--suite", "all", "--family", "A", "--rank", "3", "--trials", "200", "--seed", "42", "--json", "--no-timing"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "byte-identical output");
    let report: Value = serde_json::from_slice(&a.stdout).unwrap();
    validate(&schema(), &report, "$").unwrap();
    assert_eq!(report["seed"], 42);
    assert_eq!(report["elapsed_ms"], 0);
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["pass"] == Value::Bool(true)));
}

#[test]
fn thread_count_does_not_change_reports() {
    let args = ["check", "--suite", "twomel", "--family", "B", "--rank", "3", "--painted", "3", "--trials", "64", "--json", "--no-timing"];
    let one = Command::new(env!("CARGO_BIN_EXE_flagmorse")).args(args).env("FLAGMORSE_THREADS", "1").output().unwrap();
    let four = Command::new(env!("CARGO_BIN_EXE_flagmorse")).args(args).env("FLAGMORSE_THREADS", "4").output().unwrap();
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn schema_checker_rejects_bad_reports() {
    let s = schema();
    let good: Value = serde_json::from_slice(&run(&["check", "--suite", "mel", "--family", "A", "--rank", "2", "--trials", "5", "--json"]).stdout).unwrap();
    validate(&s, &good, "$").unwrap();
    let mut bad = good.clone();
    bad.as_object_mut().unwrap().remove("seed");
    assert!(validate(&s, &bad, "$").is_err());
    let mut bad = good.clone();
    bad["checks"][0]["pass"] = Value::String("yes".into());
    assert!(validate(&s, &bad, "$").is_err());
    let mut bad = good;
    bad["suite"] = Value::String("other".into());
    assert!(validate(&s, &bad, "$").is_err());
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["roots", "--family", "G", "--rank", "2"],
        vec!["roots", "--family", "E", "--rank", "5"],
        vec!["parabolic", "--family", "A", "--rank", "3", "--painted", "4"],
        vec!["check", "--suite", "nope", "--family", "A", "--rank", "2"],
        vec!["ell", "--family", "B", "--rank", "3", "--gamma", "999"],
        vec!["hessian", "--family", "A", "--rank", "2", "--gamma", "10", "--field", "10:0,0"],
        vec!["no-such-command"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn bad_thread_variable_is_a_usage_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_flagmorse"))
        .args(["ell-table"])
        .env("FLAGMORSE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn golden_json_documents() {
    assert_golden("roots_b2.json", &stdout(&run(&["roots", "--family", "B", "--rank", "2", "--json"])));
    assert_golden("parabolic_a3.json", &stdout(&run(&["parabolic", "--family", "A", "--rank", "3", "--painted", "2,3", "--json"])));
    assert_golden("ell_b3.json", &stdout(&run(&["ell", "--family", "B", "--rank", "3", "--gamma", "011;111", "--json"])));
    assert_golden("chevalley_a2.csv", &stdout(&run(&["chevalley", "--family", "A", "--rank", "2", "--csv"])));
}

#[test]
fn roots_document_has_expected_shape() {
    let v: Value = serde_json::from_slice(&run(&["roots", "--family", "C", "--rank", "3", "--json"]).stdout).unwrap();
    assert_eq!(v["family"], "C");
    assert_eq!(v["scale"], "1/2");
    assert_eq!(v["positives"].as_array().unwrap().len(), 9);
    assert_eq!(v["simples"].as_array().unwrap().len(), 3);
}

#[test]
fn hessian_reports_value_and_class() {
    let o = run(&["hessian", "--family", "B", "--rank", "3", "--gamma", "011:1,0", "--field", "011:0.6,0.8", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["class"], "negative");
    assert_eq!(v["witness"]["reason"], "equal");
    assert!(v["hessian"].as_f64().unwrap() < -1e-3);

    let v: Value = serde_json::from_slice(&run(&["hessian", "--family", "A", "--rank", "3", "--gamma", "100", "--field", "001", "--json"]).stdout).unwrap();
    assert_eq!(v["class"], "zero");
    assert!(v["hessian"].as_f64().unwrap().abs() < 1e-12);
}

#[test]
fn ell_reports_conditions() {
    let o = run(&["ell", "--family", "D", "--rank", "4", "--painted", "2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["construction"], "general");
    assert_eq!(v["condition1"]["pass"], true);
    assert_eq!(v["condition2"]["pass"], true);
}
