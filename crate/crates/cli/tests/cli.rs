use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lucas-atlas"))
        .args(args)
        .env_remove("LUCAS_ATLAS_PREC")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn without_wall_time(mut v: Value) -> Value {
    v["meta"]["wall_time_ms"] = Value::Null;
    v
}

#[test]
fn term_json() {
    let v = json(&["term", "--A", "1", "--B", "-1", "--n", "10", "--emit", "json"]);
    assert_eq!(v["command"], "term");
    assert_eq!(v["results"]["value"], "55");
    assert_eq!(v["meta"]["precision_bits"], 256);
}

#[test]
fn census_csv() {
    let out = run(&["census", "--t", "2", "--emit", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], "t,exact_count,lower_formula,upper_formula,within_bounds");
    let cells: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(&cells[2..4], &["-66", "42"]);
    assert!(!text.contains('\r'));
}

#[test]
fn census_with_oracle_agrees() {
    let v = json(&["census", "--t", "7/2", "--oracle"]);
    assert_eq!(v["results"]["oracle_agrees"], true);
    assert_eq!(v["results"]["exact_count"], v["results"]["oracle_count"]);
}

#[test]
fn bad_arguments_exit_two() {
    assert_eq!(run(&["term", "--A", "1"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["ln-set", "--n", "1", "--N", "5"]).status.code(), Some(2));
    assert_eq!(run(&["pell", "--t", "0", "--ymax", "5"]).status.code(), Some(2));
    assert_eq!(run(&["census", "--t", "abc"]).status.code(), Some(2));
    assert_eq!(run(&["regress", "--n", "7", "--Ns", "100,100"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let args = ["ln-set", "--n", "6", "--N", "2000", "--witnesses"];
    let a = without_wall_time(json(&args));
    let b = without_wall_time(json(&args));
    assert_eq!(a, b);
}

#[test]
fn results_do_not_depend_on_jobs() {
    let one = json(&["ln-ge-set", "--n", "5", "--N", "500", "--members", "--jobs", "1"]);
    let three = json(&["ln-ge-set", "--n", "5", "--N", "500", "--members", "--jobs", "3"]);
    assert_eq!(one["results"], three["results"]);
}

#[test]
fn precision_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_lucas-atlas"))
        .args(["classify", "--A", "1", "--B", "2"])
        .env("LUCAS_ATLAS_PREC", "128")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["meta"]["precision_bits"], 128);
    assert_eq!(v["results"]["kind"], "non-real");
    assert!(v["results"]["dominant_root_abs"].as_str().unwrap().starts_with("1.41421356"));
}

#[test]
fn term_set_members_and_witnesses() {
    let v = json(&["ln-set", "--n", "2", "--N", "10", "--members"]);
    assert_eq!(v["results"]["count"], "10");
    assert_eq!(v["results"]["members"].as_array().unwrap().len(), 10);
    let v = json(&["ln-set", "--n", "5", "--N", "100", "--witnesses"]);
    let w = v["results"]["witnesses"].as_object().unwrap();
    assert_eq!(w.len().to_string(), v["results"]["count"].as_str().unwrap());
}

#[test]
fn other_commands_run() {
    let v = json(&["pell", "--t", "4", "--ymax", "5"]);
    assert_eq!(v["results"]["solutions"], serde_json::json!([["3", "1"], ["7", "3"]]));
    let v = json(&["density", "--n", "2", "--N", "1000"]);
    assert_eq!(v["results"]["ratio"], "1");
    let v = json(&["growth-check", "--Amax", "5", "--Bmax", "5", "--nmax", "40"]);
    assert_eq!(v["results"]["violations"], serde_json::json!([]));
    let v = json(&["laurent", "--A", "1", "--B", "2", "--ell", "200"]);
    assert_eq!(v["results"]["violations"], serde_json::json!([]));
    let v = json(&["regress", "--n", "7", "--Ns", "1000,10000,100000"]);
    let s = v["results"]["slope"].as_f64().unwrap();
    assert!((s - 0.5).abs() < 0.15);
    let out = run(&["laurent", "--A", "3", "--B", "1", "--ell", "10"]);
    assert_eq!(out.status.code(), Some(2), "real pair is rejected");
}

#[test]
fn verify_passes() {
    let out = run(&["verify", "--emit", "csv"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 12);
    assert!(text.lines().skip(1).all(|l| l.contains(",true,")));
}

#[test]
fn quick_verify_passes() {
    let v = json(&["verify", "--quick"]);
    assert_eq!(v["results"]["passed"], true);
}
