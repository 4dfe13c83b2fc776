//! End-to-end checks against the built binary: verdicts, determinism,
//! batch isolation, table output, and exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fan_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fans")
        .join(name)
}

fn kcsc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kcsc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

#[test]
fn report_text_verdicts() {
    let out = kcsc(&["report", fan_path("x1.json").to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("verdict: PARTIAL"), "{text}");
    assert!(text.contains("C1   order 3"), "{text}");
    assert!(text.contains("witness b = (1, 1, 1, 1, 1, 1)"), "{text}");

    let smooth = kcsc(&["report", fan_path("p2.json").to_str().unwrap()]);
    assert!(stdout(&smooth).contains("verdict: NOT_APPLICABLE"));

    let full = kcsc(&["report", fan_path("x2_surface.json").to_str().unwrap()]);
    assert!(stdout(&full).contains("verdict: FULL_DESINGULARIZATION"));
}

#[test]
fn report_json_is_deterministic_and_parses() {
    let path = fan_path("x4.json");
    let args = [
        "report",
        path.to_str().unwrap(),
        "--json",
        "--scalar-curvature",
        "3",
        "--epsilon",
        "1/128",
        "--c-gamma",
        "2/5",
    ];
    let first = kcsc(&args);
    let second = kcsc(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "byte-for-byte determinism");
    let value: serde_json::Value = serde_json::from_str(&stdout(&first)).expect("valid json");
    assert_eq!(value["verdict"], "PARTIAL");
    assert_eq!(value["balancing"]["witness"]["b"][0], "1");
    let tuning = value["tuning"].as_array().expect("tuning present");
    assert_eq!(tuning.len(), 4);
    assert_eq!(tuning[0]["tuning_ok"], true);
    assert_eq!(tuning[0]["budget"]["all_corrections_smaller"], true);
}

#[test]
fn classify_and_polytope_subcommands() {
    let out = kcsc(&["classify", fan_path("x1.json").to_str().unwrap()]);
    let text = stdout(&out);
    assert!(text.contains("C1   order 3   smooth=false isolated=true su=true u=(1, 0, 0)"));
    assert!(text.contains("C2   order 3   smooth=false isolated=true su=false"));

    let poly = kcsc(&["polytope", fan_path("x1.json").to_str().unwrap()]);
    let text = stdout(&poly);
    assert!(text.contains("anticanonical multiple 3 with 12 vertices"));
    assert!(text.contains("C12  <-> (0, 0, -3)"));
    assert!(text.contains("barycenter: (0, 0, 0)"));
}

#[test]
fn balance_subcommand() {
    let out = kcsc(&["balance", fan_path("x3_surface.json").to_str().unwrap(), "--json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["rank"], 2);
    assert_eq!(value["witness"]["b"], serde_json::json!(["1", "1", "1"]));
}

#[test]
fn tune_requires_inputs() {
    let missing = kcsc(&["tune", fan_path("x1.json").to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(1));

    let ok = kcsc(&[
        "tune",
        fan_path("x1.json").to_str().unwrap(),
        "--epsilon",
        "1/128",
        "--c-gamma",
        "1",
        "--scalar-curvature",
        "6",
        "--json",
    ]);
    assert!(ok.status.success(), "{}", String::from_utf8_lossy(&ok.stderr));
    let value: serde_json::Value = serde_json::from_str(&stdout(&ok)).unwrap();
    assert_eq!(value.as_array().unwrap().len(), 6);
    assert_eq!(value[0]["cone"], "C1");
    assert_eq!(value[0]["b_radicand"], serde_json::json!({"coeff": "3/4", "pi_pow": -3}));
}

#[test]
fn negative_delta_flag_is_accepted() {
    let out = kcsc(&[
        "tune",
        fan_path("x4.json").to_str().unwrap(),
        "--epsilon",
        "1/128",
        "--c-gamma",
        "3/2",
        "--scalar-curvature",
        "12",
        "--delta",
        "-7/5",
        "--json",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value[0]["b_radicand"], serde_json::json!({"coeff": "5/6", "pi_pow": -3}));
    assert_eq!(value[0]["c_coefficient"], serde_json::json!({"coeff": "-5/4", "pi_pow": 0}));
    assert_eq!(value[0]["w4_coefficient"], "3/2");
}

#[test]
fn closed_pipe_is_not_an_error() {
    use std::io::Read;
    use std::process::Stdio;
    let mut child = std::process::Command::new(env!("CARGO_BIN_EXE_kcsc"))
        .args(["report", fan_path("x1.json").to_str().unwrap(), "--json"])
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    // read a few bytes, then close the pipe while the writer may still be going
    let mut buf = [0u8; 16];
    let mut stdout_pipe = child.stdout.take().unwrap();
    let _ = stdout_pipe.read(&mut buf);
    drop(stdout_pipe);
    let status = child.wait().unwrap();
    assert!(status.success(), "closed pipe must not fail the process");
}

#[test]
fn dtn_table_golden_and_empty() {
    let out = kcsc(&["dtn-table", "--m", "3", "--max-gamma", "0"]);
    assert_eq!(stdout(&out), "m,gamma,p11,p12,p21,p22,det\n3,0,-4,-2/3,0,-4,16\n");
    let empty = kcsc(&["dtn-table", "--m", "3", "--max-gamma", "-1"]);
    assert_eq!(stdout(&empty), "m,gamma,p11,p12,p21,p22,det\n");
    let grid = kcsc(&["dtn-table", "--m", "2", "--max-gamma", "64"]);
    let grid_text = stdout(&grid);
    let lines: Vec<&str> = grid_text.lines().collect();
    assert_eq!(lines.len(), 66);
    assert!(lines[1..].iter().all(|l| !l.ends_with(",0")));
}

#[test]
fn polytope_multiple_flag_overrides() {
    let out = kcsc(&["polytope", fan_path("p2.json").to_str().unwrap(), "--k", "2"]);
    let text = stdout(&out);
    assert!(text.contains("anticanonical multiple 2 with 3 vertices"), "{text}");
    assert!(text.contains("(-2, -2)"), "{text}");
}

#[test]
fn harmonics_table_plain() {
    let out = kcsc(&["harmonics", "--m", "3", "--max-gamma", "1"]);
    assert_eq!(stdout(&out), "m,gamma,eigenvalue,dimension\n3,0,0,1\n3,1,-5,6\n");
}

#[test]
fn harmonics_table_with_cyclic_action() {
    let out = kcsc(&[
        "harmonics", "--m", "2", "--max-gamma", "2", "--cyclic", "2:1,1",
    ]);
    let text = stdout(&out);
    assert_eq!(
        text,
        "m,gamma,eigenvalue,dimension,invariant_dimension\n\
         2,0,0,1,1\n\
         2,1,-3,4,0\n\
         2,2,-8,9,9\n"
    );
}

#[test]
fn batch_isolates_failures() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(fan_path("x1.json"), dir.path().join("a_x1.json")).unwrap();
    std::fs::write(dir.path().join("b_bad.json"), "{ not json").unwrap();
    std::fs::copy(fan_path("x4.json"), dir.path().join("c_x4.json")).unwrap();

    let out = kcsc(&["batch", dir.path().to_str().unwrap()]);
    let text = stdout(&out);
    assert!(text.contains("a_x1.json"));
    assert!(text.contains("PARTIAL"));
    assert!(text.contains("b_bad.json"));
    assert!(text.contains("FAILED"));
    assert!(text.contains("3 file(s), 1 failure(s)"));
    assert_eq!(out.status.code(), Some(1), "failures flip the exit code");

    let empty = tempfile::tempdir().unwrap();
    let out_empty = kcsc(&["batch", empty.path().to_str().unwrap()]);
    assert!(out_empty.status.success());
    assert!(stdout(&out_empty).contains("0 file(s), 0 failure(s)"));
}

#[test]
fn input_errors_exit_one() {
    let missing = kcsc(&["report", "/nonexistent/fan.json"]);
    assert_eq!(missing.status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"name":"bad","dim":3,"rays":[[1,0,0],[0,1,0],[0,0,1]],"max_cones":[[0,1]]}"#,
    )
    .unwrap();
    let out = kcsc(&["report", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("non-simplicial or non-maximal cone"), "{err}");
}
