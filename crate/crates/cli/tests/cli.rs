use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn curv4(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curv4"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string(v).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn models_lists_all_four() {
    let v = json_of(&curv4(&["models"]));
    let names: Vec<_> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["sphere", "rp4", "cp2", "s2xs2"]);
    assert_eq!(v[3]["wminus"], json!(["-1/3", "-1/3", "2/3"]));
}

#[test]
fn models_table_format() {
    let out = curv4(&["models", "--name", "cp2", "--format", "table"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.lines()
            .any(|l| l.starts_with("wplus ") && l.ends_with("[-1/3, -1/3, 2/3]")),
        "{text}"
    );
}

#[test]
fn unknown_model_is_a_usage_error() {
    assert_eq!(curv4(&["models", "--name", "t4"]).status.code(), Some(2));
}

#[test]
fn operator_files_round_trip_through_commands() {
    let dir = tempfile::tempdir().unwrap();
    let model = json_of(&curv4(&["models", "--name", "cp2"]));
    let file = write(dir.path(), "cp2.json", &model["operator"]);

    let d = json_of(&curv4(&["decompose", "--in", &file]));
    assert_eq!(d["exact"]["wplus"], json!(["-1/3", "-1/3", "2/3"]));
    assert_eq!(d["einstein"], json!(true));

    let b = json_of(&curv4(&["berger", "--in", &file]));
    assert_eq!(b["exact"]["a"], json!(["1/6", "1/6", "2/3"]));
    assert_eq!(b["frame"]["degenerate"], json!(true));

    let c = json_of(&curv4(&["classify", "--in", &file]));
    assert_eq!(c["condition_a"], json!(true));
    assert_eq!(c["condition_b"], json!(true));
    assert_eq!(c["wpm_hypothesis"], json!(true));
    assert!(c["frame_condition_b"].is_null());
}

#[test]
fn berger_files_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "s2xs2.json",
        &json!({"format": "curv4-berger-v1", "a": [0.0, 0.0, 2.0], "b": [0.0, 0.0, 0.0], "lambda": 2.0}),
    );
    let c = json_of(&curv4(&["classify", "--in", &file]));
    assert_eq!(c["rescale"], json!(0.5));
    for key in ["condition_a", "condition_b", "wpm_hypothesis"] {
        assert_eq!(c[key], json!(false), "{key}");
    }
    let rows = c["certificate"].as_array().unwrap();
    assert!(rows
        .iter()
        .any(|r| r["quantity"] == "a3" && r["pass"] == json!(false)));
}

#[test]
fn bad_inputs_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let broken = write(
        dir.path(),
        "broken.json",
        &json!({"format": "curv4-berger-v1", "a": [1, 0, 0]}),
    );
    let invalid = write(
        dir.path(),
        "invalid.json",
        &json!({"format": "curv4-berger-v1", "a": [0.5, 0.2, 0.3], "b": [0, 0, 0], "lambda": 1}),
    );
    let mut rows = vec![vec![0.0; 6]; 6];
    rows[0][0] = 1.0;
    let non_einstein = write(
        dir.path(),
        "flat.json",
        &json!({"format": "curv4-op-v1", "basis": "e12,e13,e14,e34,e42,e23", "matrix": rows}),
    );
    for file in [&broken, &invalid] {
        assert_eq!(
            curv4(&["classify", "--in", file]).status.code(),
            Some(2),
            "{file}"
        );
    }
    let out = curv4(&["classify", "--in", &non_einstein]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not Einstein"));
    assert_eq!(
        curv4(&["decompose", "--in", "/nonexistent/file.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        curv4(&["verify", "--lemma", "kupper", "--alpha", "1.5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        curv4(&["chi-tau", "--alpha", "sqrt("]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_reports_required_fields() {
    let v = json_of(&curv4(&[
        "verify",
        "--lemma",
        "kdiff",
        "--alpha",
        "sqrt(3) - 1",
        "--grid",
        "40",
        "--seed",
        "3",
    ]));
    for key in [
        "lemma",
        "params",
        "bound",
        "oracle_extremum",
        "violation",
        "resolution",
        "elapsed_ms",
    ] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["resolution"], json!(40));
    assert!(v["bound"].as_f64().unwrap().abs() < 1e-15);
    assert_eq!(v["pass"], json!(true));
}

#[test]
fn verify_all_passes() {
    let v = json_of(&curv4(&["verify-all", "--grid", "40"]));
    assert_eq!(v["pass"], json!(true));
    assert_eq!(v["results"].as_array().unwrap().len(), 7);
}

#[test]
fn chi_tau_explain_names_rules() {
    let v = json_of(&curv4(&[
        "chi-tau",
        "--alpha",
        "(2 - sqrt(3))/6",
        "--explain",
    ]));
    assert_eq!(v["cap"]["exact"], json!("8"));
    let rejected = v["rejected"].as_array().unwrap();
    let rule = |tau: i64, chi: i64| {
        rejected
            .iter()
            .find(|r| r["tau"] == json!(tau) && r["chi"] == json!(chi))
            .unwrap()["rule"]
            .clone()
    };
    assert_eq!(rule(0, 8), json!("euler_cap"));
    assert_eq!(rule(0, 3), json!("parity"));
    assert_eq!(rule(1, 3), json!("not_half_conformally_flat"));
    assert_eq!(rule(0, 10), json!("chi_at_most_nine"));
    assert_eq!(rule(0, 1), json!("chi_at_least_two"));
}

#[test]
fn constants_verify_chains() {
    let v = json_of(&curv4(&["constants"]));
    assert_eq!(v["pass"], json!(true));
    assert_eq!(v["constants"][0]["value"], json!("(14 - sqrt(19))/12"));
}
