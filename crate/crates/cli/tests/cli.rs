//! Command-line behaviour: formats, exit codes and determinism.

use std::io::Write;
use std::process::{Command, Output};

use daywatch::report::REPORT_KEYS;
use daywatch::{EXIT_DEGRADED, EXIT_FAILURE, EXIT_OK, EXIT_UNPARSEABLE};
use serde_json::Value;
use tempfile::NamedTempFile;

const HEADER: &str = "date,t6_1,t6_2,t16,t24,k_c,c_0,delta\n";
const BASELINE: &str = "2024-01-15,6,6,16,24,4,50,0.035\n";
const CLEAN: &str = "2024-01-16,4,10,10,16,3.5,30,2\n";

fn file(suffix: &str, contents: &str) -> NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(suffix).tempfile().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

fn daywatch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_daywatch"))
        .args(args)
        .output()
        .unwrap()
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn degraded_record_exits_2() {
    let f = file(".csv", &format!("{HEADER}{BASELINE}"));
    let out = daywatch(&[
        "run",
        "--input",
        path(&f),
        "--format",
        "csv",
        "--output",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(EXIT_DEGRADED));
    let v = json(&out);
    let report = &v[0];
    let keys: Vec<_> = report
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    assert_eq!(keys, REPORT_KEYS);
    assert_eq!(report["input"]["date"], "2024-01-15");
    assert_eq!(report["probabilities"]["p_g"], Value::Null);
}

#[test]
fn error_free_record_is_still_flagged_by_the_false_alarm_sign() {
    let f = file(".csv", &format!("{HEADER}{CLEAN}"));
    let out = daywatch(&["run", "--input", path(&f)]);
    let v = json(&out);
    assert_eq!(v[0]["flags"]["errors"], Value::Array(vec![]));
    assert_eq!(v[0]["flags"]["pf_out_of_range"], true);
    assert_eq!(v[0]["watch"]["p_false_alarm"], 0.0);
    assert_eq!(out.status.code(), Some(EXIT_DEGRADED));
    assert_eq!(v[0]["states"]["threat_level"], "high");
}

#[test]
fn output_is_in_input_order() {
    let rows: String = (0..40)
        .map(|i| {
            format!(
                "r{i},{},6,16,24,4,50,{}\n",
                5.0 + i as f64 * 0.25,
                i as f64 * 0.05
            )
        })
        .collect();
    let f = file(".csv", &format!("{HEADER}{rows}"));
    let v = json(&daywatch(&["run", "--input", path(&f)]));
    let dates: Vec<_> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["input"]["date"].clone())
        .collect();
    let want: Vec<Value> = (0..40).map(|i| Value::from(format!("r{i}"))).collect();
    assert_eq!(dates, want);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let f = file(".csv", &format!("{HEADER}{BASELINE}{CLEAN}"));
    for output in ["json", "text"] {
        let a = daywatch(&["run", "--input", path(&f), "--output", output]);
        let b = daywatch(&["run", "--input", path(&f), "--output", output]);
        assert_eq!(a.stdout, b.stdout, "{output}");
    }
}

#[test]
fn json_input_matches_csv_input() {
    let c = file(".csv", &format!("{HEADER}{BASELINE}"));
    let j = file(
        ".json",
        r#"[{"date": "2024-01-15", "t6_1": 6, "t6_2": 6, "t16": 16, "t24": 24, "k_c": 4, "c_0": 50, "delta": 0.035}]"#,
    );
    let a = daywatch(&["run", "--input", path(&c)]);
    let b = daywatch(&["run", "--input", path(&j), "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn empty_file_gives_empty_array() {
    let f = file(".csv", "");
    let out = daywatch(&["run", "--input", path(&f)]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert_eq!(json(&out), Value::Array(vec![]));
}

#[test]
fn invalid_record_exits_3_naming_row_and_field() {
    let f = file(".csv", &format!("{HEADER},-1,6,16,24,4,50,0.035\n"));
    let out = daywatch(&["run", "--input", path(&f)]);
    assert_eq!(out.status.code(), Some(EXIT_UNPARSEABLE));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("row 1") && err.contains("t6_1"), "{err}");
}

#[test]
fn malformed_input_exits_3() {
    let f = file(".json", "{not json");
    assert_eq!(
        daywatch(&["run", "--input", path(&f)]).status.code(),
        Some(EXIT_UNPARSEABLE)
    );
    let out = daywatch(&["run", "--input", "/nonexistent/records.csv"]);
    assert_eq!(out.status.code(), Some(EXIT_UNPARSEABLE));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(daywatch(&["frobnicate"]).status.code(), Some(EXIT_FAILURE));
    let f = file(".txt", &format!("{HEADER}{BASELINE}"));
    // format cannot be inferred from .txt
    assert_eq!(
        daywatch(&["run", "--input", path(&f)]).status.code(),
        Some(EXIT_FAILURE)
    );
    let out = daywatch(&[
        "run",
        "--input",
        path(&f),
        "--format",
        "csv",
        "--tolerance",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(EXIT_FAILURE));
    assert_eq!(daywatch(&["--help"]).status.code(), Some(EXIT_OK));
}

#[test]
fn absolute_mode_defines_p_g() {
    let f = file(".csv", &format!("{HEADER}{BASELINE}"));
    let v = json(&daywatch(&[
        "run",
        "--input",
        path(&f),
        "--up-log-mode",
        "absolute",
    ]));
    assert!(v[0]["probabilities"]["p_g"].is_number());
}

#[test]
fn text_output_lists_states_and_errors() {
    let f = file(".csv", &format!("{HEADER}{BASELINE}{CLEAN}"));
    let out = daywatch(&["run", "--input", path(&f), "--output", "text"]);
    let t = String::from_utf8(out.stdout).unwrap();
    assert!(t.contains("record 2024-01-15") && t.contains("record 2024-01-16"));
    assert!(t.contains("threat_level") && t.contains("high"));
    assert!(t.contains("eq. 14"));
}

#[test]
fn sweep_json_and_text() {
    let f = file(".csv", &format!("{HEADER}{CLEAN}"));
    let args = [
        "sweep",
        "--input",
        path(&f),
        "--param",
        "k_c",
        "--from",
        "0",
        "--to",
        "7",
        "--steps",
        "8",
    ];
    let out = daywatch(&args);
    let v = json(&out);
    assert_eq!(v["parameter"], "k_c");
    assert_eq!(v["entries"].as_array().unwrap().len(), 8);
    assert_eq!(v["entries"][7]["value"], 7.0);

    let mut text_args = args.to_vec();
    text_args.extend(["--output", "text"]);
    let t = String::from_utf8(daywatch(&text_args).stdout).unwrap();
    assert_eq!(t.lines().count(), 9);
    assert!(t.starts_with("index\tk_c\tstatus"));
}

#[test]
fn sweep_into_invalid_region_reports_in_line() {
    let f = file(".csv", &format!("{HEADER}{CLEAN}"));
    let out = daywatch(&[
        "sweep",
        "--input",
        path(&f),
        "--param",
        "c_0",
        "--from",
        "-10",
        "--to",
        "10",
        "--steps",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(EXIT_DEGRADED));
    let v = json(&out);
    assert_eq!(v["entries"][0]["status"], "invalid");
    assert_eq!(v["entries"][0]["error"][0]["field"], "c_0");
    assert!(v["entries"][1]["report"].is_object());
}

#[test]
fn sweep_rejects_bad_specs() {
    let f = file(".csv", &format!("{HEADER}{CLEAN}"));
    let p = path(&f);
    for (from, to, steps) in [("1", "0", "5"), ("0", "1", "1")] {
        let out = daywatch(&[
            "sweep", "--input", p, "--param", "delta", "--from", from, "--to", to, "--steps", steps,
        ]);
        assert_eq!(out.status.code(), Some(EXIT_FAILURE));
    }
    let empty = file(".csv", HEADER);
    let out = daywatch(&[
        "sweep",
        "--input",
        path(&empty),
        "--param",
        "delta",
        "--from",
        "0",
        "--to",
        "1",
        "--steps",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(EXIT_UNPARSEABLE));
}

#[test]
fn check_passes() {
    let out = daywatch(&["check"]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let t = String::from_utf8(out.stdout).unwrap();
    assert!(t.lines().filter(|l| l.starts_with("PASS")).count() >= 8);
    assert!(!t.contains("FAIL "));
}
