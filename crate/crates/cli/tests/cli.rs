//! End-to-end checks of the binary: exit codes, JSON shape, and
//! deterministic output.

use std::process::{Command, Output};

fn rwalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rwalk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stderr).expect("stderr is JSON")
}

#[test]
fn list_models_names_all_six_models() {
    let out = rwalk(&["list-models"]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    let names: Vec<&str> = json["models"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m["name"].as_str().unwrap())
        .collect();
    assert_eq!(
        names,
        [
            "tsetlin",
            "toom-fixed",
            "toom-loan",
            "free-tree",
            "sandpile",
            "exchange-walk"
        ]
    );
}

#[test]
fn analyze_spectrum_reports_exact_fractions_and_verified_traces() {
    let out = rwalk(&[
        "analyze",
        "--model",
        "tsetlin",
        "--k",
        "3",
        "--probs",
        "uniform",
        "--analyses",
        "spectrum",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    let spectrum = &json["spectrum"];
    assert_eq!(spectrum["verified_traces"], true);
    assert_eq!(spectrum["omega_size"], 6);
    // per-node slots cover the whole lattice; the merged listing keeps only
    // positive multiplicities
    assert_eq!(spectrum["eigenvalues"].as_array().unwrap().len(), 5);
    let merged: Vec<(&str, u64)> = spectrum["merged"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["lambda"].as_str().unwrap(), e["multiplicity"].as_u64().unwrap()))
        .collect();
    assert_eq!(merged, [("1", 1), ("1/3", 3), ("0", 2)]);
}

#[test]
fn analyze_retains_flagged_null_multiplicity_slots() {
    let out = rwalk(&[
        "analyze",
        "--model",
        "toom-loan",
        "--m",
        "2",
        "--shelf",
        "2",
        "--analyses",
        "spectrum",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    let entries = json["spectrum"]["eigenvalues"].as_array().unwrap();
    assert!(entries
        .iter()
        .any(|e| e["null_multiplicity"] == true && e["multiplicity"] == 0));
    assert!(json["spectrum"]["merged"]
        .as_array()
        .unwrap()
        .iter()
        .all(|e| e["multiplicity"].as_u64().unwrap() > 0));
}

#[test]
fn unknown_model_is_a_validation_error() {
    let out = rwalk(&["analyze", "--model", "no-such-model"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err = stderr_json(&out);
    assert_eq!(err["kind"], "validation");
    assert!(err["error"].as_str().unwrap().contains("no-such-model"));
}

#[test]
fn element_budget_exhaustion_exits_with_code_three() {
    let out = rwalk(&[
        "analyze",
        "--model",
        "free-tree",
        "--n",
        "3",
        "--budget-elements",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stderr_json(&out)["kind"], "budget");
}

#[test]
fn identical_requests_produce_byte_identical_output() {
    let args = [
        "analyze",
        "--model",
        "toom-fixed",
        "--content",
        "2,2",
        "--analyses",
        "structure,spectrum,stationary,bounds",
        "--probs",
        "1/10,1/5,3/10,2/5",
    ];
    let first = rwalk(&args);
    let second = rwalk(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);

    let sim_args = [
        "simulate",
        "--model",
        "tsetlin",
        "--k",
        "2",
        "--seed",
        "7",
        "--steps",
        "10",
        "--trials",
        "2000",
    ];
    let first = rwalk(&sim_args);
    let second = rwalk(&sim_args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn verify_passes_on_the_exchange_walk() {
    let out = rwalk(&["verify", "--model", "exchange-walk", "--system", "A2xA1"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let json = stdout_json(&out);
    let checks = json["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["pass"] == true));
}

#[test]
fn verify_runs_the_conjecture_sweep_for_the_loan_model() {
    let out = rwalk(&[
        "verify",
        "--model",
        "toom-loan",
        "--m",
        "2",
        "--shelf",
        "2",
        "--conjecture",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    assert_eq!(json["conjecture"]["mismatches"], 0);
    assert_eq!(json["conjecture"]["entries"].as_array().unwrap().len(), 9);
}

#[test]
fn conjecture_flag_outside_the_loan_model_is_rejected() {
    let out = rwalk(&["verify", "--model", "tsetlin", "--k", "2", "--conjecture"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["kind"], "validation");
}

#[test]
fn injected_multiplicity_error_fails_verification() {
    let out = rwalk(&[
        "verify",
        "--model",
        "tsetlin",
        "--k",
        "3",
        "--inject-multiplicity-error",
    ]);
    assert_eq!(out.status.code(), Some(4));
    let json = stdout_json(&out);
    let checks = json["checks"].as_array().unwrap();
    assert!(checks
        .iter()
        .any(|c| c["name"] == "trace-identities" && c["pass"] == false));
}

#[test]
fn float_renderings_are_additive_in_the_cli() {
    let plain = rwalk(&[
        "analyze",
        "--model",
        "tsetlin",
        "--k",
        "2",
        "--analyses",
        "spectrum",
    ]);
    let with_float = rwalk(&[
        "analyze",
        "--model",
        "tsetlin",
        "--k",
        "2",
        "--analyses",
        "spectrum",
        "--float",
    ]);
    assert_eq!(plain.status.code(), Some(0));
    assert_eq!(with_float.status.code(), Some(0));
    let plain_text = String::from_utf8(plain.stdout).unwrap();
    let float_text = String::from_utf8(with_float.stdout).unwrap();
    assert!(!plain_text.contains("lambda_float"));
    assert!(float_text.contains("lambda_float"));
    // the exact fractions stay in place either way
    assert!(float_text.contains("\"lambda\": \"1/2\"") || float_text.contains("\"lambda\": \"1\""));
}

#[test]
fn simulate_labels_its_output_as_monte_carlo() {
    let out = rwalk(&[
        "simulate",
        "--model",
        "tsetlin",
        "--k",
        "2",
        "--seed",
        "42",
        "--steps",
        "20",
        "--trials",
        "5000",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    assert_eq!(json["monte_carlo"], true);
    assert_eq!(json["seed"], 42);
    let tv = json["empirical_tv_to_exact"].as_f64().unwrap();
    assert!(tv < 0.05, "tv = {tv}");
}

#[test]
fn csv_and_text_formats_render_without_error() {
    for format in ["csv", "text"] {
        let out = rwalk(&[
            "analyze",
            "--model",
            "tsetlin",
            "--k",
            "2",
            "--analyses",
            "structure",
            "--format",
            format,
        ]);
        assert_eq!(out.status.code(), Some(0), "format {format}");
        assert!(!out.stdout.is_empty());
    }
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = std::env::temp_dir().join("rwalk-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("structure.json");
    let out = rwalk(&[
        "analyze",
        "--model",
        "tsetlin",
        "--k",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let body: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(body["structure"]["r_trivial"], true);
    std::fs::remove_file(&path).unwrap();
}
