use std::process::{Command, Output};

use serde_json::Value;

fn qubitlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qubitlab")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = qubitlab(&full);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn close(v: &Value, expected: f64, tol: f64) -> bool {
    (v.as_f64().expect("number") - expected).abs() <= tol
}

#[test]
fn project_examples() {
    let v = json(&["project", "--theta", "0"]);
    assert_eq!(v["schema"], 1);
    assert!(close(&v["p_plus"], 1.0, 1e-12));

    let v = json(&["project", "--theta", "2.0943951", "--trials", "100000", "--seed", "7"]);
    assert!(close(&v["p_plus"], 0.25, 1e-8));
    assert_eq!(v["sample"]["pass"], true);
    assert_eq!(v["sample"]["trials"], 100000);

    let v = json(&["project", "--theta", "pi/2"]);
    assert!(close(&v["mean"], 0.0, 1e-12));
}

#[test]
fn degrees_flag() {
    let v = json(&["--degrees", "project", "--theta", "120"]);
    assert!(close(&v["p_plus"], 0.25, 1e-12));
    assert_eq!(qubitlab(&["--degrees", "project", "--theta", "pi/3"]).status.code(), Some(2));
}

#[test]
fn malformed_angle_is_usage_error() {
    let out = qubitlab(&["project", "--theta", "pi/zero"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("usage error"));
}

#[test]
fn zero_trials_rejected() {
    assert_eq!(qubitlab(&["project", "--theta", "1", "--trials", "0"]).status.code(), Some(2));
}

#[test]
fn bell_examples() {
    let v = json(&["bell", "--kind", "phi+", "--plane", "xz", "--a", "0", "--b", "0"]);
    assert!(close(&v["joint"]["p_pp"], 0.5, 1e-12) && close(&v["joint"]["p_mm"], 0.5, 1e-12));

    let v = json(&["bell", "--kind", "singlet", "--a", "0", "--b", "0"]);
    assert!(close(&v["joint"]["p_pm"], 0.5, 1e-12) && close(&v["joint"]["p_mp"], 0.5, 1e-12));

    let v = json(&["bell", "--kind", "phi+", "--plane", "xz", "--a", "0", "--b", "pi/3"]);
    assert!(close(&v["joint"]["p_pp"], 0.375, 1e-12));
    assert!(close(&v["conditional"]["given_alice_plus"], 0.5, 1e-12));
}

#[test]
fn bell_sampling_reports_pass() {
    let v = json(&["bell", "--kind", "psi+", "--a", "0.2", "--b", "1.1", "--trials", "50000", "--seed", "4"]);
    assert_eq!(v["sample"]["pass"], true);
}

#[test]
fn bell_plane_mismatch_is_usage_error() {
    assert_eq!(qubitlab(&["bell", "--kind", "phi+", "--plane", "xy", "--a", "0", "--b", "0"]).status.code(), Some(2));
    assert_eq!(qubitlab(&["bell", "--kind", "psi+", "--plane", "all", "--a", "0", "--b", "0"]).status.code(), Some(2));
    assert_eq!(qubitlab(&["bell", "--kind", "omega", "--a", "0", "--b", "0"]).status.code(), Some(2));
}

#[test]
fn chsh_examples() {
    let v = json(&["chsh", "--source", "prbox"]);
    assert_eq!(v["value"], 4.0);
    assert_eq!(v["no_signalling"], true);
    assert_eq!(v["conservation"]["verdict"], "inconsistent");

    let v = json(&["chsh", "--source", "lhv"]);
    assert_eq!(v["value"], 2.0);
    assert_eq!(v["lhv"]["strategies_checked"], 16);

    let v = json(&["chsh", "--source", "quantum", "--scan", "180"]);
    assert!(close(&v["scan"]["max_value"], 2.0 * std::f64::consts::SQRT_2, 1e-6));
    assert!(close(&v["value"], 2.0 * std::f64::consts::SQRT_2, 1e-9));
    assert_eq!(v["conservation"]["verdict"], "not_applicable");
}

#[test]
fn chsh_custom_angles() {
    let v = json(&["chsh", "--source", "quantum", "--kind", "phi+", "--alice", "0", "0", "--bob", "0", "0", "--scan", "4"]);
    assert!(close(&v["value"], 2.0, 1e-12));
}

#[test]
fn prbox_with_angles_is_usage_error() {
    let out = qubitlab(&["chsh", "--source", "prbox", "--alice", "0", "pi/2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn game_simulate_examples() {
    let v = json(&["game", "simulate", "--strategy", "quoin", "--games", "10000"]);
    assert_eq!(v["win_rate"], 1.0);
    assert_eq!(v["mean_chips_net"], 4.0);

    let v = json(&["game", "simulate", "--strategy", "random", "--games", "10000", "--seed", "3"]);
    let w = v["win_rate"].as_f64().unwrap();
    assert!((w - 0.5).abs() <= v["ci_halfwidth"].as_f64().unwrap());
}

#[test]
fn game_transcript_is_json_lines() {
    let dir = std::env::temp_dir().join(format!("qubitlab-transcript-{}", std::process::id()));
    let path = dir.with_extension("jsonl");
    let p = path.to_str().unwrap();
    let out = qubitlab(&["game", "simulate", "--strategy", "classical:2", "--games", "25", "--transcript", p]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(text.lines().count(), 25);
    for line in text.lines() {
        let rec: Value = serde_json::from_str(line).unwrap();
        assert_eq!(rec["strategy"]["name"], "classical_bits");
        assert!(rec["bits_bought"].as_u64().unwrap() <= 2);
        assert_eq!(rec["transcript"]["protocol"], "classical");
    }
}

#[test]
fn unknown_strategy_is_usage_error() {
    assert_eq!(qubitlab(&["game", "simulate", "--strategy", "telepathy"]).status.code(), Some(2));
}

#[test]
fn play_refuses_without_terminal() {
    let out = Command::new(env!("CARGO_BIN_EXE_qubitlab"))
        .args(["game", "play", "--strategy", "quoin", "--seed", "11"])
        .stdin(std::process::Stdio::null())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("terminal"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec!["--format", "json", "project", "--theta", "1.3", "--trials", "5000"],
        vec!["--format", "json", "bell", "--kind", "phi-", "--a", "0.1", "--b", "2", "--trials", "3000"],
        vec!["--format", "csv", "game", "simulate", "--strategy", "random", "--games", "500", "--seed", "9"],
    ] {
        let a = qubitlab(&args);
        let b = qubitlab(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn csv_output_has_header_and_rows() {
    let out = qubitlab(&["--format", "csv", "bell", "--a", "0", "--b", "pi/2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("kind,plane,a,b,outcome,probability"));
    assert_eq!(lines.len(), 5);
}

#[test]
fn json_mode_sends_human_text_to_stderr() {
    let out = qubitlab(&["--format", "json", "riggings"]);
    assert!(out.status.success());
    serde_json::from_slice::<Value>(&out.stdout).unwrap();
    assert!(String::from_utf8_lossy(&out.stderr).contains("0 reproduce quoin mechanics"));
}

#[test]
fn operators_verify() {
    let v = json(&["operators"]);
    assert_eq!(v["pass"], true);
}
