//! Binary-level behavior: exit codes, stream separation, machine output.

mod common;

use common::*;
use std::fs;

#[test]
fn missing_model_file_exits_3() {
    let out = run(&["check", "/nonexistent/model.rau"]);
    assert_eq!(exit_code(&out), 3);
}

#[test]
fn syntax_error_exits_1_with_located_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.rau");
    fs::write(&bad, "system X {\n  actor A kind robot;\n}\n").unwrap();
    let out = run(&["check", &path_str(&bad)]);
    assert_eq!(exit_code(&out), 1);
    let err = stderr_of(&out);
    assert!(err.contains("bad.rau:2:"), "missing line/column: {err}");
    // Human mode keeps stdout free for artifacts.
    assert!(stdout_of(&out).is_empty());
}

#[test]
fn check_json_prints_machine_diagnostics_on_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.rau");
    fs::write(&bad, "system X {\n  actor A kind robot;\n}\n").unwrap();
    let out = run(&["check", &path_str(&bad), "--json"]);
    assert_eq!(exit_code(&out), 1);
    let parsed: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(parsed["version"], 1);
    assert!(!parsed["diagnostics"].as_array().unwrap().is_empty());
}

#[test]
fn clap_usage_errors_exit_2() {
    let out = run(&["frobnicate"]);
    assert_eq!(exit_code(&out), 2);
    let out = run(&["mutate", &path_str(&fixture("ter.rau"))]);
    assert_eq!(exit_code(&out), 2, "selector group is required");
}

#[test]
fn unknown_profile_path_exits_3() {
    let out = run(&[
        "enumerate",
        &path_str(&fixture("ter.rau")),
        "--profile",
        "/nonexistent.profile",
    ]);
    assert_eq!(exit_code(&out), 3);
}

#[test]
fn profile_override_changes_enumeration() {
    let dir = tempfile::tempdir().unwrap();
    let profile = dir.path().join("strict.profile");
    fs::write(&profile, "profile human { E4 suppressed; }\n").unwrap();
    let base = run(&["enumerate", &path_str(&fixture("ter.rau"))]);
    let overridden = run(&[
        "enumerate",
        &path_str(&fixture("ter.rau")),
        "--profile",
        &path_str(&profile),
    ]);
    assert_eq!(exit_code(&overridden), 0);
    let base_lines = stdout_of(&base).lines().count();
    let overridden_lines = stdout_of(&overridden).lines().count();
    assert_eq!(base_lines - overridden_lines, 3, "three E4 rows suppressed");
}

#[test]
fn enumerate_json_matches_plain_line_count() {
    let plain = run(&["enumerate", &path_str(&fixture("ter.rau"))]);
    let json = run(&["enumerate", &path_str(&fixture("ter.rau")), "--json"]);
    assert_eq!(exit_code(&json), 0);
    let parsed: serde_json::Value = serde_json::from_str(&stdout_of(&json)).unwrap();
    assert_eq!(
        parsed["candidates"].as_array().unwrap().len(),
        stdout_of(&plain).lines().count()
    );
}

#[test]
fn report_csv_round_trips_through_a_generic_reader() {
    let dir = tempfile::tempdir().unwrap();
    let ws = dir.path().join("ws.json");
    let init = run(&[
        "worksheet",
        "init",
        &path_str(&fixture("ter.rau")),
        "--out",
        &path_str(&ws),
    ]);
    assert_eq!(exit_code(&init), 0);
    let merged = run(&[
        "worksheet",
        "merge",
        &path_str(&ws),
        &path_str(&fixture("ter_annotations.json")),
    ]);
    assert_eq!(exit_code(&merged), 0);
    let report = run(&["report", &path_str(&ws), "--format", "csv"]);
    assert_eq!(exit_code(&report), 0);
    let csv_bytes = report.stdout.clone();

    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(csv_bytes.as_slice());
    let records: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    let worksheet: serde_json::Value = serde_json::from_str(&fs::read_to_string(&ws).unwrap()).unwrap();
    let rows = worksheet["rows"].as_array().unwrap().len();
    assert_eq!(records.len(), rows + 1, "one record per row plus header");
    // No field corruption on the annotated effects text.
    assert!(records
        .iter()
        .any(|r| r.iter().any(|f| f == "Patient waiting (stress)")));
}

#[test]
fn report_rejects_unknown_format_with_usage_error() {
    let out = run(&["report", &path_str(&fixture("ter.rau")), "--format", "pdf"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn bad_matrix_config_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let ws = dir.path().join("ws.json");
    run(&[
        "worksheet",
        "init",
        &path_str(&fixture("ter.rau")),
        "--out",
        &path_str(&ws),
    ]);
    let bad = dir.path().join("bad_matrix.json");
    fs::write(&bad, r#"{"version":1,"classes":{}}"#).unwrap();
    let out = run(&["report", &path_str(&ws), "--matrix", &path_str(&bad)]);
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn matrix_env_var_is_the_default_path() {
    let dir = tempfile::tempdir().unwrap();
    let ws = dir.path().join("ws.json");
    run(&[
        "worksheet",
        "init",
        &path_str(&fixture("ter.rau")),
        "--out",
        &path_str(&ws),
    ]);
    let bad = dir.path().join("bad_matrix.json");
    fs::write(&bad, r#"{"version":1,"classes":{}}"#).unwrap();

    let out = bin()
        .args(["report", &path_str(&ws)])
        .env("SEQFMECA_MATRIX", &bad)
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 1, "env-provided matrix must be honored");

    let good = bin()
        .args(["report", &path_str(&ws)])
        .env("SEQFMECA_MATRIX", fixture("default_matrix.json"))
        .output()
        .unwrap();
    assert_eq!(exit_code(&good), 0);
    // An explicit flag overrides the environment.
    let flag_wins = bin()
        .args([
            "report",
            &path_str(&ws),
            "--matrix",
            &path_str(&fixture("default_matrix.json")),
        ])
        .env("SEQFMECA_MATRIX", &bad)
        .output()
        .unwrap();
    assert_eq!(exit_code(&flag_wins), 0);
}

#[test]
fn unknown_candidate_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "mutate",
        &path_str(&fixture("ter.rau")),
        "--candidate",
        "InstallInit/m9/E3/-/-",
        "--out-dir",
        &path_str(&dir.path().join("mut")),
    ]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn unknown_error_tag_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "mutate",
        &path_str(&fixture("ter.rau")),
        "--error",
        "E.12",
        "--out-dir",
        &path_str(&dir.path().join("mut")),
    ]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn mutate_by_error_writes_one_file_per_mutant() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("mut");
    let out = run(&[
        "mutate",
        &path_str(&fixture("linear3.rau")),
        "--error",
        "E.3",
        "--out-dir",
        &path_str(&out_dir),
    ]);
    assert_eq!(exit_code(&out), 0);
    let files: Vec<_> = fs::read_dir(&out_dir).unwrap().collect();
    assert_eq!(files.len(), 3);

    // E1 on three messages: one candidate, four insertion positions.
    let e1_dir = dir.path().join("mut-e1");
    let out = run(&[
        "mutate",
        &path_str(&fixture("linear3.rau")),
        "--error",
        "E.1",
        "--out-dir",
        &path_str(&e1_dir),
    ]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(fs::read_dir(&e1_dir).unwrap().count(), 4);
}

#[test]
fn worksheet_check_strict_flips_warnings_to_failure() {
    let dir = tempfile::tempdir().unwrap();
    let ws = dir.path().join("ws.json");
    run(&[
        "worksheet",
        "init",
        &path_str(&fixture("ter.rau")),
        "--out",
        &path_str(&ws),
    ]);
    let relaxed = run(&[
        "worksheet",
        "check",
        &path_str(&fixture("ter.rau")),
        &path_str(&ws),
    ]);
    assert_eq!(exit_code(&relaxed), 0, "undisposed rows are warnings");
    let strict = run(&[
        "worksheet",
        "check",
        &path_str(&fixture("ter.rau")),
        &path_str(&ws),
        "--strict",
    ]);
    assert_eq!(exit_code(&strict), 1);
}

#[test]
fn merge_with_unknown_candidate_exits_1_and_keeps_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let ws = dir.path().join("ws.json");
    run(&[
        "worksheet",
        "init",
        &path_str(&fixture("ter.rau")),
        "--out",
        &path_str(&ws),
    ]);
    let before = fs::read(&ws).unwrap();
    let ann = dir.path().join("ann.json");
    fs::write(
        &ann,
        r#"{"version":1,"annotations":[{"candidate":"InstallInit/m9/E3/-/-"}]}"#,
    )
    .unwrap();
    let out = run(&["worksheet", "merge", &path_str(&ws), &path_str(&ann)]);
    assert_eq!(exit_code(&out), 1);
    assert_eq!(fs::read(&ws).unwrap(), before, "failed merge must not rewrite");
}
