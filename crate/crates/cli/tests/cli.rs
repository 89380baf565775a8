use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn yanglab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_yanglab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    yanglab(args).status.code().expect("exit code")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("yanglab-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn r_check_sp2_passes() {
    assert_eq!(code(&["r-check", "--family", "sp", "--m", "1"]), 0);
}

#[test]
fn sp_spinor_is_not_finite() {
    assert_eq!(
        code(&["finiteness", "--op", "spinor", "--family", "sp", "--m", "2"]),
        1
    );
}

#[test]
fn js_so4_pipeline() {
    let out = yanglab(&[
        "all", "--family", "so", "--m", "2", "--op", "js", "--twoL", "2", "--json", "-",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["pass"], true);
    // β = 1, 2ℓ = 2: f₁ = (u + 1)/(u − 1)
    let f1 = &report["weights"][0]["ratios"][0];
    assert_eq!(f1["num"], serde_json::json!(["1", "1"]));
    assert_eq!(f1["den"], serde_json::json!(["-1", "1"]));
    assert_eq!(report["drinfeld"]["exists"], true);
}

#[test]
fn config_errors_exit_2() {
    let out = yanglab(&[
        "verify",
        "--family",
        "so",
        "--odd",
        "--m",
        "2",
        "--op",
        "heisenberg",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert_eq!(
        code(&[
            "construct",
            "--family",
            "sp",
            "--m",
            "2",
            "--op",
            "js",
            "--twoL",
            "2"
        ]),
        2
    );
    assert_eq!(code(&["verify", "--m", "2", "--checks", "nonsense"]), 2);
}

#[test]
fn config_file_with_flag_override() {
    let dir = scratch("cfg");
    let cfg = dir.join("run.json");
    let out = dir.join("report.json");
    std::fs::write(
        &cfg,
        r#"{"family": "sp", "m": 2, "op": "heisenberg", "ell": "1"}"#,
    )
    .unwrap();
    // ℓ = 1/2 from the command line overrides the file: 2ℓ odd is not finite
    let args = [
        "finiteness",
        "--config",
        cfg.to_str().unwrap(),
        "--ell",
        "1/2",
        "--json",
        out.to_str().unwrap(),
    ];
    assert_eq!(code(&args), 1);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["config"]["ell"], "1/2");
    assert_eq!(report["config"]["case"]["family"], "sp");
    assert_eq!(report["pass"], false);
    assert_eq!(code(&["finiteness", "--config", cfg.to_str().unwrap()]), 0);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn exit_code_matches_report() {
    for args in [
        vec![
            "all", "--family", "so", "--odd", "--m", "1", "--op", "spinor",
        ],
        vec!["all", "--op", "fuse3", "--chain", "1/2:3"],
        vec!["all", "--op", "gl2chain", "--chain", "0:1,1/2:2"],
        vec![
            "verify",
            "--family",
            "so",
            "--m",
            "2",
            "--op",
            "js",
            "--twoL",
            "3",
            "--full-layer",
        ],
    ] {
        let mut full = args.clone();
        full.extend(["--json", "-"]);
        let out = yanglab(&full);
        let report: Value = serde_json::from_slice(&out.stdout).unwrap();
        let expected = if report["pass"] == true { 0 } else { 1 };
        assert_eq!(out.status.code(), Some(expected), "{args:?}");
    }
}
