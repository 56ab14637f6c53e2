//! Black-box tests of the pedestal binary.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn pedestal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pedestal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = pedestal(args);
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn extensions_row_counts() {
    let text = stdout(&["extensions", "--partition", "3,2"]);
    assert!(text.contains("count: 5"));
    assert_eq!(text.lines().filter(|l| l.starts_with('{')).count(), 5);

    let text = stdout(&["extensions", "--partition", "3,2,1"]);
    assert!(text.contains("count: 16"));
}

#[test]
fn extensions_from_covers_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("singleton.json");
    let mut f = std::fs::File::create(&path).unwrap();
    write!(f, r#"{{"names":["a"],"covers":[]}}"#).unwrap();
    let text = stdout(&["extensions", "--covers", path.to_str().unwrap()]);
    assert!(text.contains("count: 1"));
}

#[test]
fn count_posets_four() {
    assert_eq!(stdout(&["count-posets", "4"]).trim(), "219");
    assert_eq!(stdout(&["count-posets", "1"]).trim(), "1");
}

#[test]
fn eigen_json_is_machine_readable() {
    let text = stdout(&["eigen", "--partition", "3,1,1", "--format", "json"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["dim"], 6);
    let eigenvalues = v["eigenvalues"].as_array().unwrap();
    assert_eq!(eigenvalues.len(), 5);
    let total: u64 = eigenvalues
        .iter()
        .map(|e| e["multiplicity"].as_u64().unwrap())
        .sum();
    assert_eq!(total, 6);
    assert!(eigenvalues
        .iter()
        .any(|e| e["multiplicity"] == 2 && e["coeffs"]["0010"] == -1));
    assert!(!v["legend"].as_array().unwrap().is_empty());
}

#[test]
fn matrix_csv_and_monomial_views() {
    let csv = stdout(&["matrix", "--partition", "2", "--format", "csv"]);
    assert_eq!(csv.trim(), "a_0");

    let text = stdout(&["matrix", "--partition", "3,2", "--view", "monomial"]);
    assert!(text.contains("x1^5"));
    assert!(text.contains("x1^2*x2^2*x3"));
}

#[test]
fn verify_small_shapes_pass() {
    let out = pedestal(&["verify", "--partition", "3,2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("all checks passed"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn bad_input_exits_nonzero() {
    assert!(!pedestal(&["extensions", "--partition", "2,3"]).status.success());
    assert!(!pedestal(&["extensions", "--covers", "/no/such/file.json"])
        .status
        .success());
    assert!(!pedestal(&["eigen", "--partition", "3,2", "--format", "csv"])
        .status
        .success());
    // a cap too small for the extension count
    assert!(!pedestal(&["extensions", "--partition", "3,2", "--cap", "3"])
        .status
        .success());
}

#[test]
fn identical_config_gives_identical_output() {
    let a = stdout(&["eigen", "--partition", "3,2,1", "--format", "json"]);
    let b = stdout(&["eigen", "--partition", "3,2,1", "--format", "json"]);
    assert_eq!(a, b);
    let a = stdout(&["verify", "--partition", "3,1,1", "--seed", "9"]);
    let b = stdout(&["verify", "--partition", "3,1,1", "--seed", "9"]);
    assert_eq!(a, b);
}

#[test]
fn genfun_reports_hook_match() {
    let text = stdout(&["genfun", "--partition", "3,2", "--tmax", "20", "--format", "json"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["pi"], serde_json::json!([1, 1, 1, 1, 1]));
    assert_eq!(v["hook_product_matches"], true);
    assert_eq!(v["identity_holds"], true);
}
