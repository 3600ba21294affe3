use std::process::{Command, Output};

use serde_json::{json, Value};

fn padelab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_padelab")).args(args).output().expect("binary runs")
}

fn json_out(args: &[&str]) -> Value {
    let out = padelab(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

const EXPERIMENT: &str = r#"{"spec":{"kind":"sum","parts":[{"kind":"builtin","name":"exp"},
    {"kind":"rational","num":["1"],"den":["1","-1"]}]},"p":1,"n_min":2,"n_max":8,"grid":{"radius":0.5}}"#;

#[test]
fn pade_worked_example() {
    let v = json_out(&["pade", "--series", "exp", "--L", "3", "--M", "4"]);
    assert_eq!(v["num"], json!(["1", "3/7", "1/14", "1/210"]));
    assert_eq!(v["den"], json!(["1", "-4/7", "1/7", "-2/105", "1/840"]));
    assert_eq!(v["contact"]["first_difference"], json!(8));
}

#[test]
fn euclid_expansion_is_byte_exact() {
    let out = padelab(&["cf", "--euclid", "105/24"]);
    assert_eq!(out.stdout, b"{\"q0\":\"4\",\"terms\":[\"2\",\"1\",\"2\"]}\n");
}

#[test]
fn corner_table() {
    let v = json_out(&["table", "--series", "exp", "--Lmax", "0", "--Mmax", "0"]);
    let entries = v["entries"].as_object().unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries["0,0"]["num"], json!(["1"]));
    assert_eq!(entries["0,0"]["den"], json!(["1"]));
}

#[test]
fn hankel_csv() {
    let out = padelab(&["hankel", "--series", "exp", "--mmax", "2", "--pmax", "2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("m,p=1,p=2"));
    assert_eq!(text.lines().nth(1), Some("0,1,-1/2"));
}

#[test]
fn row_cf_and_moments() {
    let v = json_out(&["row-cf", "--series", "exp", "--p", "1", "--n-max", "3"]);
    assert_eq!(v["offset"], json!(1));
    let m = json_out(&["moments", "--factorial", "4", "--L", "1", "--M", "1"]);
    assert_eq!(m["coeffs"], json!(["1", "-1", "2", "-6"]));
    assert_eq!(m["variable"], json!("1/z"));
    assert!(m["pade"]["den"].is_array());
}

#[test]
fn input_errors_exit_two_without_output() {
    for args in [
        vec!["pade", "--series", "gamma", "--L", "1", "--M", "1"],
        vec!["pade", "--series", "{\"kind\":\"explicit\",\n\"coeffs\":[1]}", "--L", "0", "--M", "0"],
        vec!["pade", "--series", "exp", "--L", "1"],
        vec!["cf", "--euclid", "1/0"],
        vec!["cf", "--sqrt", "3", "--terms", "4", "--at", "1", "--precision", "11"],
        vec!["pade", "--L", "notanumber"],
    ] {
        let out = padelab(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn schema_errors_name_the_line() {
    let out = padelab(&["pade", "--series", "{\"kind\":\"explicit\",\n\"coeffs\":[1]}", "--L", "0", "--M", "0"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn domain_errors_exit_one() {
    let even = r#"{"kind":"rational","num":["1"],"den":["1","0","-1"]}"#;
    for args in [
        vec!["pade", "--series", even, "--L", "1", "--M", "1"],
        vec!["row-cf", "--series", even, "--p", "1", "--n-max", "3"],
    ] {
        let out = padelab(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn montessus_is_deterministic() {
    let a = padelab(&["montessus", "--config", EXPERIMENT]);
    let b = padelab(&["montessus", "--config", EXPERIMENT]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["pole_ordering"]["gap_ok"], json!(true));
    assert_eq!(v["records"].as_array().unwrap().len(), 7);

    let csv = padelab(&["montessus", "--config", EXPERIMENT, "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("n,root_re,root_im,matched_pole,distance,sup_error,flag"));
    assert_eq!(text.lines().count(), 8);
}

#[test]
fn montessus_precision_override() {
    let v = json_out(&["montessus", "--config", EXPERIMENT, "--precision", "24"]);
    assert_eq!(v["precision"], json!(24));
    let out = padelab(&["montessus", "--config", EXPERIMENT, "--precision", "12"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn montessus_config_from_file() {
    let dir = std::env::temp_dir().join(format!("padelab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("experiment.json");
    std::fs::write(&path, EXPERIMENT).unwrap();
    let v = json_out(&["montessus", "--config", path.to_str().unwrap()]);
    assert_eq!(v["p"], json!(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn emit_schema() {
    for sub in ["pade", "cf", "montessus", "table"] {
        let v = json_out(&[sub, "--emit-schema"]);
        assert!(v.is_object(), "{sub}");
    }
    let v = json_out(&["montessus", "--emit-schema"]);
    assert_eq!(v["properties"]["spec"]["$ref"], json!("#/$defs/series"));
}
