//! End-to-end checks of the binary: output formats, exit codes, and the
//! set-file round trip.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sl2-growth"))
}

#[test]
fn analyze_optimal_reports_expected_sizes() {
    let out = bin()
        .args(["analyze", "--set", "optimal", "--p", "17", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["sizeS"], 64);
    assert_eq!(v["sizeS3"], 224);
    assert_eq!(v["generates"], true);
}

#[test]
fn analyze_rejects_non_symmetric_sets() {
    let dir = std::env::temp_dir().join("sl2_growth_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("lopsided.txt");
    // [[1,1],[0,1]] alone is not closed under inversion
    std::fs::write(&path, "p=5\n[[1,1],[0,1]]\n").unwrap();
    let out = bin()
        .args(["analyze", "--set", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("SymmetryViolation"));
}

#[test]
fn construct_then_analyze_round_trips() {
    let dir = std::env::temp_dir().join("sl2_growth_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("octahedral.txt");
    let out = bin()
        .args([
            "construct",
            "--p",
            "17",
            "--kind",
            "two_dot_S4",
            "--out",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let analyzed = bin()
        .args(["analyze", "--set", path.to_str().unwrap(), "--json"])
        .output()
        .unwrap();
    assert!(analyzed.status.success());
    let v: serde_json::Value = serde_json::from_slice(&analyzed.stdout).unwrap();
    // a subgroup: |S| = |S^3| = 48, does not generate
    assert_eq!(v["sizeS"], 48);
    assert_eq!(v["sizeS3"], 48);
    assert_eq!(v["generates"], false);
}

#[test]
fn catalog_lists_residue_subgroup() {
    let out = bin().args(["catalog", "--p", "13"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("qr_index2"));
    assert!(text.contains("78"));
}

#[test]
fn perturb_remove_confirms_local_minimum() {
    let out = bin()
        .args(["perturb", "--p", "17", "--kind", "remove", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["all_exceed_base"], true);
    assert_eq!(v["trials"], 32);
}

#[test]
fn search_rejects_large_primes() {
    let out = bin().args(["search", "--p", "13"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unknown_flags_are_usage_errors() {
    let out = bin().args(["catalog", "--p", "13", "--bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn prime_cap_requires_allow_large() {
    let out = bin()
        .args(["analyze", "--set", "optimal", "--p", "113"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let ok = bin()
        .args(["analyze", "--set", "optimal", "--p", "113", "--allow-large", "--json"])
        .output()
        .unwrap();
    assert!(ok.status.success());
    let v: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["sizeS3"], 224);
}
