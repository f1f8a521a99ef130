//! End-to-end checks of the `onticlab` binary.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_onticlab"))
}

#[test]
fn theorem2_emits_the_exact_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t2.csv");
    let status = bin()
        .args(["theorem2", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let data = onticlab::csv_data_region(&text);
    assert_eq!(
        data,
        "mode,joint_prob,quantum_pred,residual\n\
         psi_complete,0.25,0,0.25\n\
         epistemic,0,0,0\n"
    );
}

#[test]
fn config_file_is_honored_and_echoed() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "smear_m=6\nqdim=3\nseed=7\n").unwrap();
    let out = dir.path().join("sweep.csv");
    let status = bin()
        .arg("sharpen-sweep")
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("# smear_m=6"));
    assert!(text.contains("# seed=7"));
    // rows m = 1..=6
    assert_eq!(onticlab::csv_data_region(&text).lines().count(), 7);
}

#[test]
fn json_format_is_valid_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t2.json");
    let status = bin()
        .args(["theorem2", "--format", "json", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["experiment"], "theorem2");
    assert_eq!(v["rows"][0][1], "0.25");
}

#[test]
fn invalid_config_exits_with_code_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "dt=-1\n").unwrap();
    let output = bin()
        .arg("theorem2")
        .arg("--config")
        .arg(&cfg)
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("dt must be positive"), "{stderr}");
}

#[test]
fn unknown_config_key_exits_with_code_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "grid_theta=10\nwat=1\n").unwrap();
    let output = bin()
        .arg("theorem2")
        .arg("--config")
        .arg(&cfg)
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("line 2"));
}

#[test]
fn unwritable_output_path_exits_with_code_one() {
    let output = bin()
        .args(["theorem2", "--out", "/nonexistent-dir/x.csv"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn default_output_path_is_experiment_name(){
    let dir = tempfile::tempdir().unwrap();
    let status = bin().arg("theorem2").current_dir(dir.path()).status().unwrap();
    assert!(status.success());
    assert!(Path::new(&dir.path().join("theorem2.csv")).exists());
}
