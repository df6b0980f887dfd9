//! End-to-end checks of the binary: output shape, exit codes, file input.

use std::io::Write;
use std::process::{Command, Output};

fn polystab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polystab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn check_reports_verdict_and_exact_minors() {
    let out = polystab(&["--json", "check", "3 2 4 2 2"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "unstable");
    assert_eq!(v["minors"][2], "-4");
    assert_eq!(v["lambdas"][0], "3/4");
    assert_eq!(v["memberships"]["lambda_lt_one"], true);
}

#[test]
fn check_reads_polynomials_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cubic.txt");
    let mut file = std::fs::File::create(&path).unwrap();
    writeln!(file, "10 7 3 1").unwrap();
    let out = polystab(&["--json", "check", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["verdict"], "stable");
}

#[test]
fn assert_stable_gates_the_exit_code() {
    let out = polystab(&["check", "--assert-stable", "10 7 3 1"]);
    assert_eq!(out.status.code(), Some(0));
    let out = polystab(&["check", "--assert-stable", "3 2 4 2 2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_with_two() {
    let out = polystab(&["check", "not a polynomial"]);
    assert_eq!(out.status.code(), Some(2));
    let out = polystab(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
    // classify requires positive coefficients
    let out = polystab(&["classify", "1 0 1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn product_and_power_emit_canonical_text() {
    let out = polystab(&["--json", "product", "1 2 4 4 4 2", "4 64 256 256 64"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["product"], "4 128 1024 1024 256");

    let out = polystab(&["--json", "power", "1 2 4 4 4", "2"]);
    assert_eq!(stdout_json(&out)["power"], "1 4 16 16 16");
}

#[test]
fn gproduct_reports_each_element() {
    let out = polystab(&["--json", "gproduct", "1 2 4 4 4 2", "4 64 256 256 64"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["elements"].as_array().unwrap().len(), 2);
    assert_eq!(v["elements"][0]["polynomial"], "4 128 1024 1024 256");
    assert_eq!(v["elements"][1]["report"]["verdict"], "stable");
}

#[test]
fn stabilize_factorized_round_trips_through_json() {
    let out = polystab(&["--json", "stabilize", "1 2 4 4 4 2", "4", "--factorized"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["g"], "4 64 256 256 64");
    assert_eq!(v["parameters"]["power"], 2);
    assert_eq!(v["factors"].as_array().unwrap().len(), 2);
    assert_eq!(v["verification"][0]["verdict"], "stable");
}

#[test]
fn extend_emits_a_certificate() {
    let out = polystab(&["--json", "extend", "1 1 1", "3", "1/2"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["appended"][0], "1/4");
    assert_eq!(v["result"], "1 1 1 1/4");
    assert_eq!(v["step_witnesses"].as_array().unwrap().len(), 1);
}

#[test]
fn constants_lists_three_enclosures() {
    let out = polystab(&["--json", "constants"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 3);
    assert_eq!(arr[0]["kind"], "alpha-star");
}

#[test]
fn fixtures_pass_and_external_dirs_load() {
    let out = polystab(&["fixtures"]);
    assert_eq!(out.status.code(), Some(0));

    // a directory with a deliberately wrong fact exits 1
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{
            "id": "bad",
            "polynomials": {"f": "1 1"},
            "facts": [
                {"kind": "verdict_is", "poly": "f", "expect": "unstable", "provenance": "trivial"}
            ]
        }"#,
    )
    .unwrap();
    let out = polystab(&["fixtures", "--dir", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn quasi_tolerance_flag_changes_the_band() {
    // roots at -1 and ±i: quasi-stable at any positive tolerance
    let out = polystab(&["--json", "check", "1 1 1 1"]);
    assert_eq!(stdout_json(&out)["verdict"], "quasi-stable");
    // an absurdly wide band swallows the strictly negative root too
    let out = polystab(&["--json", "--tol", "2", "check", "1 1 1 1"]);
    let v = stdout_json(&out);
    assert_eq!(v["boundary_roots"].as_array().unwrap().len(), 3);
}

#[test]
fn small_campaigns_run_deterministically() {
    let args = ["--json", "campaign", "--trials", "5", "--seed", "7", "--degrees", "1..6"];
    let first = polystab(&args);
    assert_eq!(first.status.code(), Some(0));
    let second = polystab(&args);
    assert_eq!(first.stdout, second.stdout);
    let v = stdout_json(&first);
    assert_eq!(v["all_passed"], true);
    assert_eq!(v["config"]["trials"], 5);

    // zero trials is a config error
    let out = polystab(&["campaign", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(2));
}
