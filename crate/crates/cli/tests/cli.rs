use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(path: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(path)
        .to_str()
        .unwrap()
        .to_string()
}

fn hdsel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hdsel"))
        .args(args)
        .output()
        .unwrap()
}

fn flu(command: &str, extra: &[&str]) -> Output {
    let (schema, table) = (data("flu/schema.json"), data("flu/flu.csv"));
    let mut args = vec![command, "--schema", &schema, "--data", &table];
    args.extend_from_slice(extra);
    hdsel(&args)
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect()
}

#[test]
fn distances_row_one_matches_reference_values() {
    let report = json(&flu("distances", &[]));
    assert_eq!(report["command"], "distances");
    let row = floats(&report["result"]["hd"][0]);
    let reference = [0.0, 0.07, 1.23, 0.09, 1.39, 1.32, 0.28];
    for (got, want) in row.iter().zip(reference) {
        assert!((got - want).abs() <= 0.015, "{got} vs {want}");
    }
}

#[test]
fn csv_and_json_distances_agree() {
    let report = json(&flu("distances", &[]));
    let out = flu("distances", &["--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# hd"));
    for (i, line) in lines.enumerate() {
        let row: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert_eq!(row, floats(&report["result"]["hd"][i]));
    }
}

#[test]
fn decomposition_lists_cross_class_pairs() {
    let report = json(&flu("distances", &["--decompose"]));
    let rows = report["result"]["decomposition"].as_array().unwrap();
    // 3·2 + 3·2 + 2·2 cross-class pairs
    assert_eq!(rows.len(), 16);
    assert_eq!(rows[0]["pair"], serde_json::json!([1, 4]));
}

#[test]
fn relation_kernel_value_and_default_sigma() {
    let report = json(&flu("relation", &["--sigma2", "0.4"]));
    let r14 = report["result"]["kernel"][0][3].as_f64().unwrap();
    assert!((r14 - 0.988365).abs() < 1e-6);

    let report = json(&flu("relation", &[]));
    assert_eq!(report["config"]["sigma"], 0.2);
}

#[test]
fn upper_relation_of_reference_kernel() {
    let report = json(&hdsel(&[
        "relation",
        "--matrix",
        &data("flu/reference_kernel.csv"),
        "--upper",
    ]));
    let upper = &report["result"]["upper"];
    assert!((upper[1][4].as_f64().unwrap() - 0.088).abs() < 0.005);
    assert!((upper[0][3].as_f64().unwrap() - 0.98).abs() < 0.01);
}

#[test]
fn transitivity_check_reports_worst_triple() {
    let report = json(&flu(
        "relation",
        &["--sigma2", "0.4", "--check-transitivity"],
    ));
    let t = &report["result"]["transitivity"];
    assert_eq!(t["passed"], false);
    assert_eq!(t["worst"], serde_json::json!([2, 7, 6]));
}

#[test]
fn select_single_delta() {
    let report = json(&flu("select", &["--sigma2", "0.4", "--delta", "0.85"]));
    let result = &report["result"];
    assert_eq!(result["model"]["rows"], 11);
    assert_eq!(result["result"]["features"], serde_json::json!([3, 4]));
    assert_eq!(result["result"]["feasible"], true);
    assert_eq!(result["result"]["proven_optimal"], true);
}

#[test]
fn optimistic_objective_not_above_normal() {
    for delta in ["0.3", "0.6", "0.9"] {
        let normal = json(&flu("select", &["--delta", delta]));
        let optimistic = json(&flu("select", &["--delta", delta, "--mode", "optimistic"]));
        let obj = |r: &Value| r["result"]["result"]["objective"].as_u64().unwrap();
        assert!(obj(&optimistic) <= obj(&normal));
    }
}

#[test]
fn sweep_has_one_point_per_grid_value() {
    let report = json(&flu("select", &["--sweep", "--solver", "greedy"]));
    let points = report["result"]["sweep"].as_array().unwrap();
    assert_eq!(points.len(), 10);
    assert_eq!(points[0]["theta"], Value::Null);
    assert!(!report["warnings"].as_array().unwrap().is_empty());

    let report = json(&flu("select", &["--sweep", "--grid", "0.5,0.85"]));
    assert_eq!(report["result"]["sweep"].as_array().unwrap().len(), 2);
}

#[test]
fn dump_model_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("model.json");
    json(&flu(
        "select",
        &[
            "--sigma2",
            "0.4",
            "--delta",
            "0.85",
            "--dump-model",
            path.to_str().unwrap(),
        ],
    ));
    let model: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(model["p"], 4);
    assert_eq!(model["rows"].as_array().unwrap().len(), 11);
}

#[test]
fn evaluate_with_mask_and_from_select() {
    let dir = tempfile::tempdir().unwrap();
    let select = dir.path().join("select.json");
    let out = flu(
        "select",
        &[
            "--sigma2",
            "0.4",
            "--delta",
            "0.85",
            "--output",
            select.to_str().unwrap(),
        ],
    );
    assert!(out.status.success());

    let by_mask = json(&flu("evaluate", &["--mask", "3,4", "--folds", "3"]));
    let by_report = json(&flu(
        "evaluate",
        &["--from-select", select.to_str().unwrap(), "--folds", "3"],
    ));
    assert_eq!(by_mask["result"], by_report["result"]);
    assert_eq!(by_mask["result"]["features"], serde_json::json!([3, 4]));
    // three classes: binary metrics are undefined
    assert_eq!(by_mask["result"]["precision"], "-");
    assert!(by_mask["result"]["accuracy"].is_f64());
}

#[test]
fn reruns_are_identical_apart_from_wall_time() {
    let strip = |out: Output| {
        let mut v = json(&out);
        v.as_object_mut().unwrap().remove("wall_time_ms");
        v
    };
    let args = ["--sweep", "--solver", "blackhole", "--seed", "3"];
    assert_eq!(strip(flu("select", &args)), strip(flu("select", &args)));
}

#[test]
fn usage_errors_exit_2() {
    // neither --delta nor --sweep
    assert_eq!(flu("select", &[]).status.code(), Some(2));
    assert_eq!(flu("select", &["--delta", "1.5"]).status.code(), Some(2));
    assert_eq!(flu("evaluate", &["--mask", "9"]).status.code(), Some(2));
    assert_eq!(
        flu("select", &["--delta", "0.5", "--format", "csv"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        flu("relation", &["--sigma", "0.2", "--sigma2", "0.4"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn data_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let schema = dir.path().join("schema.json");
    std::fs::write(
        &schema,
        r#"{"attributes": [{"name": "x", "kind": "colour"}], "decision": "D"}"#,
    )
    .unwrap();
    let out = hdsel(&[
        "distances",
        "--schema",
        schema.to_str().unwrap(),
        "--data",
        &data("flu/flu.csv"),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));

    let out = hdsel(&[
        "distances",
        "--schema",
        &data("flu/schema.json"),
        "--data",
        "/nonexistent.csv",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn node_budget_exit_4() {
    let out = flu(
        "select",
        &["--sigma2", "0.4", "--delta", "0.85", "--node-limit", "1"],
    );
    assert_eq!(out.status.code(), Some(4));
}
