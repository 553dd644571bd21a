//! Golden-file tests pinning the JSON report schema. Timing is the one
//! nondeterministic field; it is zeroed before comparison.

use std::process::Command;

use serde_json::Value;

fn run_json(args: &[&str]) -> Value {
    let out = Command::new(env!("CARGO_BIN_EXE_divpow"))
        .args(args)
        .arg("--json")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let mut v: Value = serde_json::from_slice(&out.stdout).expect("valid JSON on stdout");
    v.as_object_mut()
        .expect("top-level object")
        .insert("timing_ms".into(), Value::from(0));
    v
}

fn golden(name: &str) -> Value {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    serde_json::from_str(&text).expect("golden file is valid JSON")
}

#[test]
fn verify_k0_report_is_stable() {
    let actual = run_json(&["verify", "--k", "0"]);
    assert_eq!(actual, golden("verify_k0.json"));
}

#[test]
fn modp_p2_e1_report_is_stable() {
    let actual = run_json(&["modp", "--p", "2", "--e", "1"]);
    assert_eq!(actual, golden("modp_p2_e1.json"));
}

#[test]
fn report_field_set_is_fixed() {
    let actual = run_json(&["verify", "--k", "1"]);
    let keys: Vec<&str> = actual.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        ["cleared_is_zero", "command", "parameters", "term_counts", "timing_ms", "verified"]
    );
}
