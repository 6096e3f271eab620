use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ecslab"))
}

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn check<'a>(case: &'a Value, name: &str) -> &'a Value {
    case["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn sweep_reference_cases_all_pass() {
    let cfg = configs().join("reference.json");
    let out = run(&["sweep", "-c", cfg.to_str().unwrap(), "--quiet"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stderr.is_empty());
    let report = json(&out);
    assert_eq!(report["summary"]["pass"], 3);
    assert_eq!(report["summary"]["fail"], 0);
    let d: Vec<u64> = report["cases"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["d_predicted"].as_u64().unwrap())
        .collect();
    assert_eq!(d, [2, 1, 1]);
    for case in report["cases"].as_array().unwrap() {
        assert_eq!(case["overall"], "PASS");
        assert_eq!(check(case, "nabla W = 0")["status"], "PASS");
        assert_eq!(case["d_by_point"].as_array().unwrap().len(), 5);
    }
}

#[test]
fn sweep_with_invalid_case_fails_with_exit_one() {
    let cfg = configs().join("negative.json");
    let out = run(&["sweep", "-c", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(stderr.contains("A-zero: FAIL"), "{stderr}");
    let report = json(&out);
    assert_eq!(report["summary"]["pass"], 2);
    assert_eq!(report["summary"]["fail"], 1);
    assert_eq!(report["summary"]["warn"], 1);

    let zero = &report["cases"][1];
    assert_eq!(zero["overall"], "FAIL");
    assert_eq!(check(zero, "validate: A != 0")["status"], "FAIL");
    assert_eq!(check(zero, "Riemann symmetries")["status"], "SKIP");
    assert_eq!(check(zero, "Olszak rank d = predicted")["status"], "SKIP");

    let constant = &report["cases"][2];
    assert_eq!(constant["overall"], "PASS");
    let warn = check(constant, "validate: f nonconstant");
    assert_eq!(warn["status"], "WARN");
    assert!(warn["detail"].as_str().unwrap().contains("not ECS"));
}

#[test]
fn validate_only_runs_constraint_checks() {
    let cfg = configs().join("reference.json");
    let out = run(&["validate", "-c", cfg.to_str().unwrap(), "--quiet"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    for case in report["cases"].as_array().unwrap() {
        for c in case["checks"].as_array().unwrap() {
            assert!(c["name"].as_str().unwrap().starts_with("validate: "));
        }
        assert!(case["d_predicted"].is_null());
    }
}

#[test]
fn rank_command_and_points_override() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("pts.json");
    std::fs::write(
        &pts,
        r#"{"points": [[2, "-1/3", 0, 5, 7], [0, 0, 0, 0, 0]]}"#,
    )
    .unwrap();
    let cfg = dir.path().join("r1.json");
    std::fs::write(
        &cfg,
        r#"{"cases": [{"id": "R1", "n": 5, "f_coeffs": [0, 1],
            "G_rows": [[1,0,0],[0,1,0],[0,0,-1]],
            "A_rows": [[1,0,1],[0,0,0],[1,0,1]]}]}"#,
    )
    .unwrap();
    let out_path = dir.path().join("out.json");
    let out = run(&[
        "rank",
        "-c",
        cfg.to_str().unwrap(),
        "--points",
        pts.to_str().unwrap(),
        "--report",
        out_path.to_str().unwrap(),
        "--quiet",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    let points = &report["cases"][0]["d_by_point"];
    assert_eq!(
        points[0]["point"],
        serde_json::json!(["2", "-1/3", "0", "5", "7"])
    );
    assert_eq!(points[0]["d"], 2);
    assert_eq!(points[1]["d"], 2);
}

#[test]
fn parse_errors_exit_one_and_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    std::fs::write(
        &cfg,
        r#"{"cases": [{"id": "wide", "n": 5, "f_coeffs": [0, 1],
            "G_rows": [[1,0,0,0],[0,1,0,0],[0,0,-1,0]],
            "A_rows": [[1,0,1],[0,0,0],[1,0,1]]}]}"#,
    )
    .unwrap();
    let out = run(&["verify", "-c", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(
        stderr.contains("G_rows") && stderr.contains("wide"),
        "{stderr}"
    );
    assert!(out.stdout.is_empty());

    std::fs::write(&cfg, r#"{"cases": []}"#).unwrap();
    let out = run(&["verify", "-c", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("no cases"));

    let out = run(&[
        "verify",
        "-c",
        dir.path().join("missing.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn invariant_failure_exits_two() {
    // Valid Roter data never fails an invariant, so precedence is checked
    // on hand-built reports.
    use ecslab::config::parse_config;
    use ecslab::report::{ReportFile, Stage, VerificationReport};
    use ecslab_core::roter::Status;

    let cases =
        parse_config(&std::fs::read_to_string(configs().join("reference.json")).unwrap()).unwrap();
    let mut invalid = VerificationReport::new(&cases[0]);
    invalid.push(Stage::Validation, "validate: A != 0", Status::Fail, "");
    invalid.finish();
    let mut broken = VerificationReport::new(&cases[1]);
    broken.push(Stage::Invariant, "nabla W = 0", Status::Fail, "");
    broken.finish();
    assert_eq!(ReportFile::new(vec![invalid.clone()]).exit_code(), 1);
    assert_eq!(ReportFile::new(vec![invalid, broken]).exit_code(), 2);
}
