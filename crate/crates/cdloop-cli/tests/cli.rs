//! End-to-end tests of the `cdloop` binary: exit-code contract, output
//! shapes, and byte-for-byte determinism.

use std::process::{Command, Output};

fn cdloop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cdloop"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn build_reports_order_and_basis_count() {
    let out = cdloop(&["build", "--dim-log", "5"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["dim_log"], 5);
    assert_eq!(json["order"], 64);
    assert_eq!(json["table"].as_array().unwrap().len(), 64 * 64);
    let summary = String::from_utf8(out.stderr).unwrap();
    assert!(summary.contains("order 64, 32 basis elements"));
}

#[test]
fn build_rejects_out_of_range_levels() {
    let out = cdloop(&["build", "--dim-log", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flags_are_usage_errors() {
    let out = cdloop(&["build", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = cdloop(&["subloops", "--by-class"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_format_is_a_usage_error() {
    let out = cdloop(&["build", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(2));
    let out = cdloop(&["report", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn report_passes_at_the_trigintaduonion_scale() {
    let out = cdloop(&["report", "--dim-log", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("RESULT: PASS"));
    assert!(text.contains("373"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn report_passes_at_the_sedenion_scale() {
    let out = cdloop(&["report", "--dim-log", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("maximal subloops of the full loop"));
    assert!(text.contains("computed=15"));
    assert!(text.contains("(8, 7)"));
}

#[test]
fn report_passes_at_the_quaternion_scale() {
    let out = cdloop(&["report", "--dim-log", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("MOUFANG"));
    assert!(text.contains("ASSOC"));
}

#[test]
fn report_exit_1_on_reference_mismatch() {
    let dir = std::env::temp_dir().join("cdloop-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("wrong-expected.json");
    std::fs::write(&path, r#"{"2": {"nontrivial_subloops": 999}}"#).unwrap();
    let out = cdloop(&["report", "--dim-log", "2", "--expected", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn report_rejects_levels_above_five() {
    let out = cdloop(&["report", "--dim-log", "6"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn subloops_csv_has_375_rows() {
    let out = cdloop(&["subloops", "--dim-log", "5", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 375);
    // all rows are normal
    assert!(text.lines().all(|line| line.ends_with(",true")));
}

#[test]
fn classify_csv_lists_members_then_class_summaries() {
    let out = cdloop(&["classify", "--dim-log", "4", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    // 66 member rows + 5 summary rows
    assert_eq!(text.lines().count(), 71);
    assert!(text.lines().any(|l| l.starts_with("O_L,8,")));
    assert!(text.lines().any(|l| l.starts_with("~O_L,7,")));
}

#[test]
fn zerodiv_emits_31_certificates() {
    let out = cdloop(&["zerodiv", "--dim-log", "5"]);
    assert!(out.status.success());
    let records: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let records = records.as_array().unwrap();
    assert_eq!(records.len(), 31);
    for r in records {
        assert_eq!(r["support"].as_array().unwrap().len(), 16);
        assert!(r["u"].is_array());
        assert!(r["v"].is_array());
    }
}

#[test]
fn lattice_by_class_has_11_blocks() {
    let out = cdloop(&["lattice", "--dim-log", "5", "--format", "dot", "--by-class"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let nodes: Vec<&str> = text.lines().filter(|l| l.contains("[label=")).collect();
    assert_eq!(nodes.len(), 11);

    // parse the block edges and check for a unique source and sink
    let edges: Vec<(String, String)> = text
        .lines()
        .filter(|l| l.contains("->"))
        .map(|l| {
            let l = l.trim().trim_end_matches(';');
            let (a, b) = l.split_once(" -> ").unwrap();
            (a.to_string(), b.to_string())
        })
        .collect();
    assert!(!edges.is_empty());
    let ids: Vec<String> = (0..11).map(|i| format!("b{i}")).collect();
    let sources: Vec<&String> = ids
        .iter()
        .filter(|id| !edges.iter().any(|(_, b)| b == *id))
        .collect();
    let sinks: Vec<&String> = ids
        .iter()
        .filter(|id| !edges.iter().any(|(a, _)| a == *id))
        .collect();
    assert_eq!(sources.len(), 1, "unique source");
    assert_eq!(sinks.len(), 1, "unique sink");
}

#[test]
fn lattice_json_round_trips() {
    let out = cdloop(&["lattice", "--dim-log", "2", "--format", "json"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["nodes"].as_array().unwrap().len(), 6);
    assert_eq!(json["covers"].as_array().unwrap().len(), 7);
}

#[test]
fn identities_json_is_a_name_map() {
    let out = cdloop(&["identities", "--dim-log", "3"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["MOUFANG"]["holds"], serde_json::json!(true));
    assert_eq!(json["ASSOC"]["holds"], serde_json::json!(false));
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["subloops", "--dim-log", "4", "--format", "csv"][..],
        &["report", "--dim-log", "3"][..],
        &["lattice", "--dim-log", "3", "--format", "dot"][..],
        &["classify", "--dim-log", "3", "--format", "csv"][..],
        &["zerodiv", "--dim-log", "4"][..],
        &["build", "--dim-log", "4"][..],
    ] {
        let a = cdloop(args);
        let b = cdloop(args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn out_flag_writes_the_file_and_prints_the_summary() {
    let dir = std::env::temp_dir().join("cdloop-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.json");
    let out = cdloop(&["build", "--dim-log", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("order 8, 4 basis elements"));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(json["order"], 8);
}
