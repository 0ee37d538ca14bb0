use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qkspin")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json", "--no-timing"]);
    let out = run(&all);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stdout(args: &[&str]) -> (i32, String) {
    let out = run(args);
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn dims_rows_and_totals() {
    let v = json(&["dims", "--n", "2"]);
    assert_eq!(v["values"]["ranks"], serde_json::json!([5, 8, 3]));
    assert_eq!(v["values"]["total"], 16);
    assert_eq!(json(&["dims", "--n", "3"])["values"]["total"], 64);
    assert_eq!(json(&["dims", "--n", "1"])["values"]["total"], 4);
    assert_eq!(json(&["dims", "--n", "6"])["values"]["total"], 4096);
}

#[test]
fn report_schema() {
    let v = json(&["verify", "--n", "2", "--suite", "clifford"]);
    for key in ["command", "params", "checks", "values", "timing_ms", "schema_version"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["status"] == "pass" && c.get("name").is_some() && c.get("witness").is_some()));
    assert_eq!(v["params"]["suite"], "clifford");
}

#[test]
fn bianchi_suite_reports_dimension() {
    let v = json(&["verify", "--n", "2", "--suite", "bianchi"]);
    assert_eq!(v["values"]["bianchi_solution_dim"], 336);
}

#[test]
fn weitzenboeck_suite_n3() {
    let (code, text) = stdout(&["verify", "--n", "3", "--suite", "weitzenboeck"]);
    assert_eq!(code, 0);
    assert!(text.contains("PASS  W recovered n=3 r=1") && text.contains("PASS  W recovered n=3 r=2"), "{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn weitzenboeck_json_and_oracle() {
    let v = json(&["weitzenboeck", "--n", "2", "--r", "1"]);
    assert_eq!(v["values"]["w"]["entries"][0][0], "1/2");
    assert_eq!(v["values"]["wh"][1][1], "3/2");
    let (code, text) = stdout(&["weitzenboeck", "--n", "2", "--r", "1", "--oracle"]);
    assert_eq!(code, 0);
    assert!(text.contains("closed form = oracle: true"));
    let (code, text) = stdout(&["weitzenboeck", "--n", "2", "--r", "0"]);
    assert_eq!(code, 0);
    assert!(text.contains("degenerate grade r=0"), "{text}");
    let (_, text) = stdout(&["weitzenboeck", "--n", "3", "--r", "3", "--oracle"]);
    assert!(text.contains("closed form = oracle: true") && text.contains("degenerate grade r=3"));
}

#[test]
fn bound_values() {
    assert_eq!(json(&["bound", "--n", "2", "--kappa", "16"])["values"]["exact"], "5");
    assert_eq!(json(&["bound", "--n", "2", "--r", "1", "--kappa", "16"])["values"]["exact"], "6");
    let v = json(&["bound", "--n", "5", "--kappa", "28/5"]);
    assert_eq!(v["values"]["exact"], "8/5");
    assert_eq!(v["values"]["decimal"], "1.6");
    assert_eq!(json(&["bound", "--n", "2", "--kappa", "1"])["values"]["decimal"], "0.3125");
    assert_eq!(json(&["bound", "--n", "3", "--kappa", "1"])["values"]["decimal"], "0.3");
    assert_eq!(json(&["bound", "--n", "4", "--kappa", "1"])["values"]["decimal"], "0.291666666667");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["bound", "--n", "2", "--kappa", "0"][..],
        &["bound", "--n", "2", "--kappa", "-3/2"],
        &["bound", "--n", "1", "--kappa", "4"],
        &["bound", "--n", "2", "--kappa", "x"],
        &["weitzenboeck", "--n", "2", "--r", "3"],
        &["verify", "--n", "3", "--suite", "bianchi"],
        &["verify", "--n", "2", "--suite", "nope"],
        &["dims", "--n", "0"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--n", "2", "--suite", "curvature", "--seed", "9", "--format", "json", "--no-timing"];
    let a = run(&args).stdout;
    let b = run(&args).stdout;
    assert_eq!(a, b);
    let csv1 = run(&["weitzenboeck", "--n", "3", "--r", "1", "--format", "csv", "--no-timing"]).stdout;
    let csv2 = run(&["weitzenboeck", "--n", "3", "--r", "1", "--format", "csv", "--no-timing"]).stdout;
    assert_eq!(csv1, csv2);
    assert!(String::from_utf8(csv1).unwrap().starts_with("kind,name,status,value"));
}

#[test]
fn seed_changes_random_forms_only() {
    let a = json(&["verify", "--n", "2", "--suite", "curvature", "--seed", "1"]);
    let b = json(&["verify", "--n", "2", "--suite", "curvature", "--seed", "2"]);
    assert_eq!(a["params"]["seed"], 1);
    assert_eq!(a["checks"].as_array().unwrap().len(), b["checks"].as_array().unwrap().len());
}
