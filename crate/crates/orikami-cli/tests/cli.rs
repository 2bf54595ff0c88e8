//! End-to-end runs of the orikami binary: every subcommand, the documented
//! exit codes, and determinism of emitted artifacts.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_orikami"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

#[test]
fn torus_fold_identify_reports_the_trefoil() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("t0");
    let out = run(&["torus", "--n", "0", "-o", out_dir.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for name in ["folding.json", "loop.json", "report.json"] {
        assert!(out_dir.join(name).exists(), "missing {name}");
    }

    let poly = dir.path().join("poly.json");
    let out = run(&[
        "fold",
        "--folding",
        out_dir.join("folding.json").to_str().unwrap(),
        "--loop",
        out_dir.join("loop.json").to_str().unwrap(),
        "-o",
        poly.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let report = stdout_json(&run(&["identify", poly.to_str().unwrap()]));
    assert_eq!(report["determinant"], 3);
    assert_eq!(report["invariants_trivial"], false);
    assert_eq!(report["pd"].as_array().unwrap().len(), 3);

    // The pre-certified report in the output directory agrees.
    let stored: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("report.json")).unwrap())
            .unwrap();
    assert_eq!(stored["determinant"], 3);
    assert_eq!(stored["format"], "orikami/1");
}

#[test]
fn validate_accepts_the_identity_folding() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("identity.json");
    std::fs::write(
        &path,
        r#"{
  "format": "orikami/1",
  "vertices": [[0,0],[1,0],[1,1],[0,1]],
  "creases": [],
  "faces": [[0,1,2,3]],
  "face_maps": [{"linear": [[1,0],[0,1],[0,0]], "translation": [0,0,0]}]
}"#,
    )
    .unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    let report = stdout_json(&out);
    assert_eq!(report["is_valid"], true);
    assert_eq!(report["structural_errors"].as_array().unwrap().len(), 0);

    // Breaking a face map must flip the verdict and the exit code.
    std::fs::write(
        &path,
        r#"{
  "format": "orikami/1",
  "vertices": [[0,0],[1,0],[1,1],[0,1]],
  "creases": [],
  "faces": [[0,1,2,3]],
  "face_maps": [{"linear": [[2,0],[0,1],[0,0]], "translation": [0,0,0]}]
}"#,
    )
    .unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["is_valid"], false);
}

#[test]
fn construct_writes_a_certified_triple() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("pentagram");
    let out = run(&[
        "construct",
        "--sticks",
        fixture("pentagram.json").to_str().unwrap(),
        "-o",
        out_dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let folding: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("folding.json")).unwrap())
            .unwrap();
    assert_eq!(folding["creases"].as_array().unwrap().len(), 5);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("report.json")).unwrap())
            .unwrap();
    assert_eq!(report["determinant"], 3);

    let out = run(&["validate", out_dir.join("folding.json").to_str().unwrap()]);
    assert!(out.status.success());
}

#[test]
fn analyze_classifies_the_torus_folding_as_improper() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("t1");
    assert!(run(&["torus", "--n", "1", "-o", out_dir.to_str().unwrap()]).status.success());
    let report = stdout_json(&run(&["analyze", out_dir.join("folding.json").to_str().unwrap()]));
    assert_eq!(report["verdict"], "improper-transversal");
}

#[test]
fn exports_draw_creases_and_meshes() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("t0");
    assert!(run(&["torus", "--n", "0", "-o", out_dir.to_str().unwrap()]).status.success());
    let folding = out_dir.join("folding.json");
    let lp = out_dir.join("loop.json");

    let svg = dir.path().join("out.svg");
    let out = run(&[
        "export-svg",
        folding.to_str().unwrap(),
        "--loop",
        lp.to_str().unwrap(),
        "-o",
        svg.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.contains("<svg") && text.contains("stroke-dasharray"));
    assert_eq!(text.matches("<line").count(), 2);

    let obj = dir.path().join("out.obj");
    let out = run(&[
        "export-obj",
        folding.to_str().unwrap(),
        "--loop",
        lp.to_str().unwrap(),
        "-o",
        obj.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&obj).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 3);
    assert_eq!(text.lines().filter(|l| l.starts_with("l ")).count(), 1);
}

#[test]
fn bad_usage_and_bad_files_use_distinct_exit_codes() {
    // Unknown flag: usage error.
    let out = run(&["validate", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));

    // Missing file: pipeline error.
    let out = run(&["validate", "/definitely/not/here.json"]);
    assert_eq!(out.status.code(), Some(1));

    // Malformed content names the offending key.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"format": "orikami/1", "waypoints": [[0.1, 0.1, 0.0]]}"#).unwrap();
    let out = run(&["identify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("injective"), "stderr was: {err}");
}

#[test]
fn seeds_come_from_flags_or_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("t0");
    assert!(run(&["torus", "--n", "0", "-o", out_dir.to_str().unwrap()]).status.success());
    let poly = dir.path().join("poly.json");
    assert!(run(&[
        "fold",
        "--folding",
        out_dir.join("folding.json").to_str().unwrap(),
        "--loop",
        out_dir.join("loop.json").to_str().unwrap(),
        "-o",
        poly.to_str().unwrap(),
    ])
    .status
    .success());

    let flagged = bin()
        .args(["identify", poly.to_str().unwrap(), "--seed", "11"])
        .output()
        .unwrap();
    let via_env = bin()
        .args(["identify", poly.to_str().unwrap()])
        .env("ORIKAMI_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(flagged.stdout, via_env.stdout);

    // Same inputs and seed: identical bytes. Different seed: same knot.
    let again = bin()
        .args(["identify", poly.to_str().unwrap(), "--seed", "11"])
        .output()
        .unwrap();
    assert_eq!(flagged.stdout, again.stdout);
    let other: serde_json::Value = stdout_json(
        &bin()
            .args(["identify", poly.to_str().unwrap(), "--seed", "12"])
            .output()
            .unwrap(),
    );
    let flagged: serde_json::Value = serde_json::from_slice(&flagged.stdout).unwrap();
    assert_eq!(other["determinant"], flagged["determinant"]);
    assert_eq!(other["alexander"], flagged["alexander"]);
}
