//! Black-box checks of the binary: exit codes, report envelopes, file
//! formats.

use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qsolovay"))
}

#[test]
fn omega_prints_exact_value_and_writes_schema_1() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["--out"])
        .arg(dir.path())
        .args(["omega", "--machine", "toy34", "--t", "1/2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("5/16"), "stdout: {}", stdout);
    let report: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("omega.json")).unwrap())
            .unwrap();
    assert_eq!(report["schema"], 1);
    assert_eq!(report["report"]["omega_T"], "5/16");
}

#[test]
fn failing_verdict_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    // An affine witness far above alpha fails the inequality.
    let witness = dir.path().join("bad.json");
    std::fs::write(
        &witness,
        r#"{"kind": "affine", "params": {"slope": "0/1", "intercept": "9/10"}, "d": 1, "l": 1}"#,
    )
    .unwrap();
    let out = bin()
        .args(["--out"])
        .arg(dir.path())
        .args([
            "witness-check",
            "--alpha",
            "HALF",
            "--beta",
            "HALF",
            "--witness",
        ])
        .arg(&witness)
        .args(["--samples", "5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn malformed_config_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, "{ not json").unwrap();
    let out = bin()
        .args(["--config"])
        .arg(&cfg)
        .args(["omega"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn build_report_feeds_certify() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["--out"])
        .arg(dir.path())
        .args([
            "build-lipschitz",
            "--alpha",
            "HALF",
            "--beta",
            "HALF",
            "--witness",
            "reflexive",
            "--steps",
            "8",
            "--csv",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let csv = std::fs::read_to_string(dir.path().join("build_lipschitz.csv")).unwrap();
    assert!(csv.starts_with("x,y_lo,y_hi\n"));
    let out = bin()
        .args(["--out"])
        .arg(dir.path())
        .args([
            "certify",
            "--claim",
            "lipschitz:2",
            "--pairs",
            "10",
            "--curve",
        ])
        .arg(dir.path().join("build_lipschitz.json"))
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("certify.json")).unwrap())
            .unwrap();
    assert_eq!(report["holds"], true);
    assert_eq!(report["report"]["undecided"], 0);
}

#[test]
fn shipped_data_files_load() {
    let root = env!("CARGO_MANIFEST_DIR");
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["--config", &format!("{root}/data/config.json"), "--out"])
        .arg(dir.path())
        .args(["omega", "--machine", "toy58", "--t", "1/1"])
        .current_dir(root.rsplit_once("/crates").map(|(r, _)| r).unwrap_or(root))
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("5/8"), "stdout: {}", stdout);
}
