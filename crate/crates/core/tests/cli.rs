use std::path::Path;
use std::process::Command;

use pinchflow::cli::{cmd_verify_identities, cmd_verify_identities_with, Corruption, RunConfig, Status};
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pinchflow"))
}

fn run_bin(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).output().unwrap();
    let text = String::from_utf8_lossy(&out.stdout).to_string() + &String::from_utf8_lossy(&out.stderr);
    (out.status.code().unwrap(), text)
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn without_timestamp(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("generated_at").expect("timestamp key");
    v
}

#[test]
fn identities_pass_for_any_seed_and_corruption_fails() {
    let dir = tempfile::tempdir().unwrap();
    for seed in [1, 2, 99] {
        let cfg = RunConfig { seed: Some(seed), samples: Some(2000), out: Some(dir.path().join(seed.to_string())), ..Default::default() };
        assert_eq!(cmd_verify_identities(&cfg).unwrap().status, Status::Success);
    }
    let cfg = RunConfig { samples: Some(2000), out: Some(dir.path().join("bad")), ..Default::default() };
    let out = cmd_verify_identities_with(&cfg, Some(Corruption(1e-6))).unwrap();
    assert_eq!(out.status, Status::PropertyViolation);
}

#[test]
fn reports_are_deterministic_apart_from_timestamp() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("id");
    let mut seen = Vec::new();
    for _ in 0..2 {
        let (code, _) = run_bin(&["verify-identities", "--samples", "500", "--seed", "7", "--out", out.to_str().unwrap()]);
        assert_eq!(code, 0);
        let text = std::fs::read_to_string(out.join("identities.json")).unwrap();
        let (stamped, rest): (Vec<&str>, Vec<&str>) = text.lines().partition(|l| l.contains("\"generated_at\""));
        assert_eq!(stamped.len(), 1);
        seen.push(rest.join("\n"));
    }
    assert_eq!(seen[0], seen[1]);
    assert!(without_timestamp(read_json(&out.join("identities.json")))["result"]["passed"].as_bool().unwrap());
}

#[test]
fn q_sign_verdicts_and_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [("gauss_power", "2", 0, "nonpositive_certified"), ("gauss_power", "0.4", 1, "violated"), ("mean_power", "3", 0, "nonpositive_sampled")];
    for (k, (fam, alpha, code, verdict)) in cases.iter().enumerate() {
        let out = dir.path().join(k.to_string());
        let (c, text) = run_bin(&["q-sign", "--family", fam, "--alpha", alpha, "--out", out.to_str().unwrap()]);
        assert_eq!(c, *code, "{text}");
        let v = read_json(&out.join("q_sign.json"));
        assert_eq!(v["result"]["report"]["verdict"], *verdict);
        if *code == 1 {
            assert!(v["result"]["report"]["witness"]["q"].as_f64().unwrap() > 0.0);
        }
    }
}

#[test]
fn threshold_and_non_bracketing_range() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g");
    let (c, text) = run_bin(&["threshold", "--family", "gauss_power", "--tolerance", "0.01", "--out", out.to_str().unwrap()]);
    assert_eq!(c, 0, "{text}");
    let v = read_json(&out.join("threshold.json"));
    let b = &v["result"]["bracket"];
    assert!(b[0].as_f64().unwrap() <= 2.0 && 2.0 <= b[1].as_f64().unwrap());

    let bad = dir.path().join("bad");
    let (c, text) = run_bin(&["threshold", "--family", "gauss_power", "--alpha-range", "2.5", "3", "--out", bad.to_str().unwrap()]);
    assert_eq!(c, 2, "{text}");
    assert!(text.contains("alpha_range"));
    assert!(!bad.join("threshold.json").exists());
}

#[test]
fn invalid_config_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("never");
    let o = out.to_str().unwrap();
    for args in [
        vec!["flow", "--family", "gauss_power", "--alpha", "2", "--a", "2", "--n-nodes", "64", "--out", o],
        vec!["flow", "--family", "gauss_power", "--alpha", "2", "--a", "2", "--stop-fraction", "0.5", "--out", o],
        vec!["flow", "--family", "gauss_power", "--alpha", "-1", "--a", "2", "--out", o],
        vec!["q-sign", "--family", "gauss_power", "--out", o],
        vec!["q-sign", "--family", "gauss_power", "--alpha", "1", "--t-max", "1.5", "--out", o],
        vec!["verify-identities", "--samples", "0", "--out", o],
    ] {
        let (c, text) = run_bin(&args);
        assert_eq!(c, 2, "{args:?}: {text}");
        assert!(!out.exists(), "{args:?} created output");
    }
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"family": "gauss_power", "alpah": 2}"#).unwrap();
    let (c, text) = run_bin(&["q-sign", "--config", cfg.to_str().unwrap(), "--out", o]);
    assert_eq!(c, 2);
    assert!(text.contains("alpah"));
}

#[test]
fn flow_from_config_file_with_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("flow.json");
    std::fs::write(
        &cfg,
        r#"{"family": "gauss_power", "alpha": 1.0, "a": 1.0, "b": 1.0, "n_nodes": 65, "safety": 0.25, "stop_fraction": 0.1, "record_stride": 10}"#,
    )
    .unwrap();
    let out = dir.path().join("run");
    let (c, text) = run_bin(&["flow", "--config", cfg.to_str().unwrap(), "--alpha", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(c, 0, "{text}");
    let v = read_json(&out.join("summary.json"));
    assert_eq!(v["result"]["alpha"], 2.0);
    let t = v["result"]["extinction"]["time"].as_f64().unwrap();
    assert!((t - 1.0 / 3.0).abs() < 1e-3, "{t}");
    assert_eq!(v["result"]["monotonicity"]["pinching_non_increasing"], true);
    let csv = std::fs::read_to_string(out.join("trace.csv")).unwrap();
    let mut lines = csv.lines();
    assert!(lines.next().unwrap().starts_with("step,time,pinching_sup"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row.len(), 13);
    // 17 significant digits
    assert_eq!(row[1].split('e').next().unwrap().replace(['.', '-'], "").len(), 17);
}

#[test]
fn failed_flow_keeps_partial_trace() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fail");
    let (c, text) = run_bin(&[
        "flow", "--family", "sum_power", "--alpha", "100", "--a", "0.01", "--b", "1", "--n-nodes", "33", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(c, 3, "{text}");
    assert!(out.join("trace.csv").exists());
    let v = read_json(&out.join("summary.json"));
    assert_eq!(v["result"]["stop_reason"], "convexity_loss");
}

#[test]
fn sweep_merges_in_input_order() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep");
    let (c, text) = run_bin(&[
        "sweep", "--alphas", "2,1", "--aspects", "1.5", "--n-nodes", "33", "--workers", "2", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(c, 0, "{text}");
    let v = read_json(&out.join("sweep.json"));
    let r = v["result"].as_array().unwrap();
    assert_eq!(r.len(), 2);
    assert_eq!(r[0]["alpha"], 2.0);
    assert_eq!(r[1]["alpha"], 1.0);
}
