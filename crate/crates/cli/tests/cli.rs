//! End-to-end tests that exercise the compiled binary: report schemas,
//! determinism, round-trips, and exit codes.

use std::process::{Command, Output};

fn ringwell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringwell"))
        .args(args)
        .env_remove("RINGWELL_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout_json(args: &[&str]) -> serde_json::Value {
    let out = ringwell(args);
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON report")
}

#[test]
fn insert_reports_the_nodal_identity() {
    let report = stdout_json(&[
        "insert",
        "--state",
        "sin",
        "--barrier",
        "0",
        "--n-trunc",
        "10",
        "--no-timestamp",
    ]);
    assert_eq!(report["command"], "insert");
    assert_eq!(report["version"], env!("CARGO_PKG_VERSION"));
    let rows = report["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 10);
    for row in rows {
        let n = row["n"].as_u64().unwrap();
        let re = row["re"].as_f64().unwrap();
        if n == 2 {
            assert!((re - 1.0).abs() < 1e-12);
        } else {
            assert!(re.abs() < 1e-12, "mode {n} leaked {re}");
        }
    }
    let defect = report["diagnostics"]["parseval_defect"].as_f64().unwrap();
    assert!(defect < 1e-12);
}

#[test]
fn coeffs_table_matches_closed_forms() {
    let report = stdout_json(&[
        "coeffs",
        "--family",
        "a",
        "--alpha",
        "0.7853981633974483",
        "--n-max",
        "5",
        "--no-timestamp",
    ]);
    let rows = report["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    for row in rows {
        assert!(row["abs_error"].as_f64().unwrap() < 1e-10);
    }
    let first = rows[0]["closed_form"].as_f64().unwrap();
    assert!((first - 0.060021).abs() < 1e-6);
    assert!(report["diagnostics"]["quadrature_max_err"].as_f64().unwrap() < 1e-10);
}

#[test]
fn check_loclin_certifies_incompatibility_at_quarter_pi() {
    let report = stdout_json(&[
        "check-loclin",
        "--alpha-grid",
        "50",
        "--alpha-max",
        "pi/4",
        "--n-max",
        "10",
        "--m-max",
        "10",
        "--no-timestamp",
    ]);
    let summary = &report["summary"];
    assert_eq!(summary["verdict"], "incompatible");
    let min = summary["min_joint_residual"].as_f64().unwrap();
    assert!((min - 0.29289).abs() < 1e-5, "min residual {min}");
    let worst_alpha = summary["worst_alpha"].as_f64().unwrap();
    assert!((worst_alpha - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
    assert_eq!(report["rows"].as_array().unwrap().len(), 50 * 100);
}

#[test]
fn reports_are_deterministic_and_thread_count_independent() {
    let args = [
        "check-loclin",
        "--alpha-grid",
        "20",
        "--n-max",
        "4",
        "--m-max",
        "4",
        "--no-timestamp",
    ];
    let first = ringwell(&args);
    let second = ringwell(&args);
    assert!(first.status.success() && second.status.success());
    assert_eq!(first.stdout, second.stdout);

    let mut single = args.to_vec();
    single.extend(["--threads", "1"]);
    let mut quad = args.to_vec();
    quad.extend(["--threads", "4"]);
    assert_eq!(ringwell(&single).stdout, ringwell(&quad).stdout);
}

#[test]
fn timestamp_is_present_by_default_and_isolatable() {
    let stamped = stdout_json(&["insert", "--state", "sin", "--barrier", "0", "--n-trunc", "2"]);
    assert!(stamped["timestamp"].is_string());
    let plain = stdout_json(&[
        "insert",
        "--state",
        "sin",
        "--barrier",
        "0",
        "--n-trunc",
        "2",
        "--no-timestamp",
    ]);
    assert!(plain.get("timestamp").is_none());
}

#[test]
fn json_reports_survive_a_parse_serialize_cycle() {
    let out = ringwell(&[
        "energy",
        "--state",
        "sin",
        "--alpha",
        "pi/4",
        "--n-max",
        "3",
        "--m-max",
        "3",
        "--no-timestamp",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    let reparsed: serde_json::Value =
        serde_json::from_str(&serde_json::to_string(&parsed).unwrap()).unwrap();
    assert_eq!(parsed, reparsed);
    // Numbers keep full precision through the cycle.
    let direct = parsed["rows"][0]["delta_e"].as_f64().unwrap();
    let cycled = reparsed["rows"][0]["delta_e"].as_f64().unwrap();
    assert_eq!(direct.to_bits(), cycled.to_bits());
}

#[test]
fn csv_has_a_header_and_full_precision_cells() {
    let out = ringwell(&[
        "insert",
        "--state",
        "sin",
        "--barrier",
        "0",
        "--n-trunc",
        "3",
        "--no-timestamp",
        "--output",
        "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "chamber,n,re,im");
    let second_mode = lines.nth(1).unwrap();
    let cells: Vec<&str> = second_mode.split(',').collect();
    assert_eq!(cells[0], "well");
    assert_eq!(cells[1], "2");
    let value: f64 = cells[2].parse().unwrap();
    assert!((value - 1.0).abs() < 1e-12);
    assert!(!text.contains(';'), "no locale-dependent separators");
}

#[test]
fn output_file_matches_stdout() {
    let dir = std::env::temp_dir().join("ringwell-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let to_file = ringwell(&[
        "coeffs",
        "--family",
        "f",
        "--n-max",
        "4",
        "--no-timestamp",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(to_file.status.success());
    let from_file = std::fs::read(&path).unwrap();
    let to_stdout = ringwell(&["coeffs", "--family", "f", "--n-max", "4", "--no-timestamp"]);
    assert_eq!(from_file, to_stdout.stdout);
}

#[test]
fn usage_errors_exit_with_code_one() {
    let unknown_flag = ringwell(&["insert", "--state", "sin", "--nonsense"]);
    assert_eq!(unknown_flag.status.code(), Some(1));

    let bad_angle = ringwell(&[
        "insert",
        "--state",
        "sin",
        "--barrier",
        "pie",
        "--n-trunc",
        "4",
    ]);
    assert_eq!(bad_angle.status.code(), Some(1));

    let bad_family = ringwell(&["coeffs", "--family", "x", "--n-max", "3"]);
    assert_eq!(bad_family.status.code(), Some(1));

    let missing_shift = ringwell(&[
        "insert",
        "--state",
        "shifted-sin",
        "--barrier",
        "0",
        "--n-trunc",
        "4",
    ]);
    assert_eq!(missing_shift.status.code(), Some(1));

    let double_off_origin = ringwell(&[
        "insert",
        "--state",
        "sin",
        "--barrier",
        "0.5",
        "--second-barrier",
        "pi/4",
        "--n-trunc",
        "4",
    ]);
    assert_eq!(double_off_origin.status.code(), Some(1));
}

#[test]
fn numerical_failure_exits_with_code_two_and_names_the_integral() {
    let out = ringwell(&[
        "coeffs",
        "--family",
        "a",
        "--alpha",
        "pi/4",
        "--n-max",
        "40",
        "--rel-tol",
        "1e-15",
        "--max-subdivisions",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("overlap of mode"), "stderr was: {stderr}");
}

#[test]
fn env_var_controls_threads() {
    let out = Command::new(env!("CARGO_BIN_EXE_ringwell"))
        .args([
            "check-loclin",
            "--alpha-grid",
            "8",
            "--n-max",
            "3",
            "--m-max",
            "3",
            "--no-timestamp",
        ])
        .env("RINGWELL_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    let default_run = ringwell(&[
        "check-loclin",
        "--alpha-grid",
        "8",
        "--n-max",
        "3",
        "--m-max",
        "3",
        "--no-timestamp",
    ]);
    assert_eq!(out.stdout, default_run.stdout);

    let bad = Command::new(env!("CARGO_BIN_EXE_ringwell"))
        .args(["check-loclin", "--alpha-grid", "4"])
        .env("RINGWELL_THREADS", "abc")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn radius_override_rescales_energies() {
    let unit = stdout_json(&[
        "energy", "--state", "sin", "--alpha", "pi/4", "--n-max", "2", "--m-max", "2",
        "--no-timestamp",
    ]);
    let scaled = stdout_json(&[
        "energy", "--state", "sin", "--alpha", "pi/4", "--n-max", "2", "--m-max", "2",
        "--radius", "2", "--no-timestamp",
    ]);
    for (a, b) in unit["rows"]
        .as_array()
        .unwrap()
        .iter()
        .zip(scaled["rows"].as_array().unwrap())
    {
        let unit_value = a["delta_e"].as_f64().unwrap();
        let scaled_value = b["delta_e"].as_f64().unwrap();
        assert!((scaled_value - unit_value / 4.0).abs() < 1e-12);
    }
    let bad = ringwell(&[
        "energy", "--state", "sin", "--alpha", "pi/4", "--n-max", "1", "--m-max", "1",
        "--radius", "0",
    ]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn shifted_state_insert_matches_the_rotated_identity() {
    let report = stdout_json(&[
        "insert",
        "--state",
        "shifted-sin",
        "--shift",
        "pi/4",
        "--barrier",
        "pi/4",
        "--n-trunc",
        "8",
        "--no-timestamp",
    ]);
    for row in report["rows"].as_array().unwrap() {
        let n = row["n"].as_u64().unwrap();
        let re = row["re"].as_f64().unwrap();
        if n == 2 {
            assert!((re - 1.0).abs() < 1e-12);
        } else {
            assert!(re.abs() < 1e-12);
        }
    }
}
