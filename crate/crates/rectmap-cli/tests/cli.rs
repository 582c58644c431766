//! Smoke tests for the compiled `rectmap` binary: subcommand surface,
//! artifact emission, and the exit-code / error-record contract.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn domain(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../domains")
        .join(name)
}

fn rectmap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rectmap"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn tile_writes_requested_artifacts_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = rectmap(&[
        "tile",
        "--domain",
        domain("unit_square.json").to_str().unwrap(),
        "--level",
        "3",
        "--out",
        dir.path().to_str().unwrap(),
        "--emit",
        "tiling_svg,tiling_json,report",
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(dir.path().join("tiling_n3.svg").exists());
    assert!(dir.path().join("tiling_n3.json").exists());
    assert!(dir.path().join("report.csv").exists());
    assert!(!dir.path().join("map_n3.csv").exists(), "unrequested artifact written");
    let report = std::fs::read_to_string(dir.path().join("report.csv")).unwrap();
    assert!(report.starts_with(
        "level,intensity,r_eff,duffin_lb,max_side,cr_residual,node_residual,solve_iters,wall_ms\n"
    ));
    assert_eq!(report.lines().count(), 2);
}

#[test]
fn coarse_level_reports_suggestion_and_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = rectmap(&[
        "tile",
        "--domain",
        domain("unit_square.json").to_str().unwrap(),
        "--level",
        "1",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    let record: serde_json::Value = serde_json::from_str(stderr.trim()).unwrap();
    assert_eq!(record["error"], "MeshTooCoarse");
    assert_eq!(record["module"], "mesh");
    assert_eq!(record["level"], 1);
    assert_eq!(record["suggested_min_level"], 2);
}

#[test]
fn check_reports_validation_and_monte_carlo() {
    let out = rectmap(&[
        "check",
        "--domain",
        domain("lshape.json").to_str().unwrap(),
        "--levels",
        "3..4",
        "--mc-walks",
        "2000",
        "--mc-seed",
        "11",
    ]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("level 3: tiling valid"));
    assert!(stdout.contains("level 4: duality valid"));
    assert!(stdout.contains("level 4: monte carlo"));
}

#[test]
fn bad_flags_are_validation_errors() {
    let out = rectmap(&[
        "sweep",
        "--domain",
        domain("unit_square.json").to_str().unwrap(),
        "--levels",
        "4..2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let record: serde_json::Value =
        serde_json::from_str(String::from_utf8(out.stderr).unwrap().trim()).unwrap();
    assert_eq!(record["error"], "InvalidConfig");
}
