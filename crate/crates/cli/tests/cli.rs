use std::path::PathBuf;
use std::process::{Command, Output};

use clap::Parser;
use g2g_cli::config::{Cli, JobConfig};
use g2g_cli::defaults::{Defaults, DEFAULTS_ENV};
use serde_json::Value;

fn g2g(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g2g")).args(args).env_remove(DEFAULTS_ENV).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("g2g-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn job(args: &[&str]) -> JobConfig {
    let mut full = vec!["g2g"];
    full.extend_from_slice(args);
    JobConfig::from_cli(Cli::try_parse_from(full).unwrap(), Defaults::bundled()).unwrap()
}

#[test]
fn eval_examples() {
    let out = g2g(&["eval", "--f", "1", "--g", "1", "--alpha", "1", "--beta", "1", "--gamma", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert!((r["result"]["value"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!(r["result"]["rel_discrepancy"].as_f64().unwrap() <= 1e-10);
    assert!(r["timings_ms"]["direct"].as_f64().is_some());

    let r = json(&g2g(&["eval", "--omega", "x+y^2", "--nu", "1", "--omega-exp", "1", "--lambda", "0"]));
    assert!((r["result"]["value"].as_f64().unwrap() - 3.0).abs() < 1e-10);
    assert_eq!(r["result"]["path"], "direct2d");
    assert_eq!(r["result"]["separable"], false);

    let r = json(&g2g(&["eval", "--f", "u", "--g", "r"]));
    assert!((r["result"]["direct"]["value"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert!((r["result"]["factorized"]["value"].as_f64().unwrap() - 1.0).abs() < 1e-10);
}

#[test]
fn wrapper_examples() {
    let r = json(&g2g(&["hyp", "--a", "1", "--b", "1", "--c", "2", "--z", "0.5"]));
    assert!((r["result"]["value"].as_f64().unwrap() - 1.3862944).abs() < 1e-7);
    let r = json(&g2g(&["series", "--coeffs", "1@1", "--alpha", "2", "--beta", "2"]));
    assert!((r["result"]["value"].as_f64().unwrap() - 1.0 / 12.0).abs() < 1e-15);
    let r = json(&g2g(&["detect", "--omega", "x*y"]));
    assert_eq!(r["result"]["separable"], true);
    assert!(r["result"]["f_extracted"].as_array().is_some_and(|a| a.len() == 5));
}

#[test]
fn exit_codes() {
    assert_eq!(g2g(&["eval"]).status.code(), Some(2));
    assert_eq!(g2g(&["eval", "--f", "u", "--omega", "x*y"]).status.code(), Some(2));
    assert_eq!(g2g(&["detect", "--f", "u"]).status.code(), Some(2));
    assert_eq!(g2g(&["verify", "--only", "nonsense"]).status.code(), Some(2));
    assert_eq!(g2g(&["eval", "--f", "u +", "--g", "1"]).status.code(), Some(2));
    assert_eq!(g2g(&["eval", "--f", "1", "--g", "1", "--alpha", "-1"]).status.code(), Some(2));
    // damped direct path refuses frequencies above the oscillation cap
    let out = g2g(&["eval", "--f", "1", "--g", "1", "--a", "1", "--b", "20", "--mode", "direct"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("numerical error"));
}

#[test]
fn verify_filters_and_fails_with_code_1() {
    let out = g2g(&["verify", "--only", "classical,separability"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let checks = r["result"]["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 6 + 11);
    assert!(checks.iter().all(|c| c["group"] == "classical" || c["group"] == "separability"));
    for key in ["identity", "residual", "tolerance", "status"] {
        assert!(checks[0].get(key).is_some(), "{key}");
    }

    let wrong =
        scratch("wrong.toml", "[[corpus]]\nname = \"wrong\"\nf = \"u^2\"\ng = \"1\"\nfprime = \"u\"\ngprime = \"0\"\n");
    let out = g2g(&["verify", "--only", "beta-identities", "--corpus", wrong.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["result"]["all_passed"], false);
}

#[test]
fn inadmissible_entry_is_skipped_not_failed() {
    let corpus = scratch(
        "inadmissible.toml",
        "[[corpus]]\nname = \"reciprocal\"\nf = \"1/x\"\ng = \"1\"\nfprime = \"-1/x^2\"\ngprime = \"0\"\n",
    );
    let out = g2g(&["verify", "--only", "beta-identities", "--corpus", corpus.to_str().unwrap()]);
    let r = json(&out);
    let checks = r["result"]["checks"].as_array().unwrap();
    let gated = checks.iter().find(|c| c["identity"] == "beta-derivative-forms").unwrap();
    assert_eq!(gated["status"], "skipped-inadmissible");
    assert_eq!(out.status.code(), Some(0), "{checks:?}");
}

#[test]
fn reports_are_deterministic_modulo_timings() {
    for args in [
        &["eval", "--f", "u^2", "--g", "exp(-r/2)", "--alpha", "1.5", "--gamma", "1"][..],
        &["verify", "--only", "oracle"],
        &["hyp", "--a", "2", "--b", "1", "--c", "3", "--z", "-0.5", "--f", "t"],
    ] {
        let j = job(args);
        let a = g2g_cli::run(&j).unwrap().0.without_timings();
        let b = g2g_cli::run(&j).unwrap().0.without_timings();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}

#[test]
fn out_flag_and_defaults_env() {
    let out_path = std::env::temp_dir().join(format!("g2g-cli-out-{}.json", std::process::id()));
    let out = g2g(&["detect", "--omega", "x*y", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(r["schema_version"], 1);

    let defaults = scratch("defaults.toml", "[quad]\nrel_tol = 1e-6\n");
    let out = Command::new(env!("CARGO_BIN_EXE_g2g"))
        .args(["eval", "--f", "1", "--g", "1"])
        .env(DEFAULTS_ENV, &defaults)
        .output()
        .unwrap();
    assert_eq!(json(&out)["input"]["rel_tol"], 1e-6);
}

#[test]
fn table_format() {
    let out = g2g(&["verify", "--only", "classical", "--format", "table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("g2g verify"));
    assert!(text.contains("classical-reduction"));
    assert!(text.contains("timings (ms)"));
}
