//! End-to-end runs of the binary: pinned CSV headers, deterministic output,
//! and error exit codes.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ampcred"))
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin()
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).expect("output file exists")
}

#[test]
fn fig1_headers_rows_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["fig1", "--grid-points", "3", "--trials", "400"],
    );
    let text = stdout(&out);
    assert!(text.contains("fig1: wrote 3 rows"));
    let first = read(dir.path(), "fig1.csv");
    let mut lines = first.lines();
    assert_eq!(
        lines.next().unwrap(),
        "p,prob_frequency,prob_amplitude,prob_arcsine"
    );
    assert_eq!(first.lines().count(), 4);

    let again = run_in(
        dir.path(),
        &["fig1", "--grid-points", "3", "--trials", "400"],
    );
    stdout(&again);
    assert_eq!(
        first,
        read(dir.path(), "fig1.csv"),
        "rerun must be byte-identical"
    );
}

#[test]
fn fig1_endpoints_are_certain() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &[
            "fig1",
            "--grid-points",
            "3",
            "--trials",
            "200",
            "--include-endpoints",
        ],
    );
    stdout(&out);
    let text = read(dir.path(), "fig1.csv");
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    let first_row: Vec<&str> = lines[1].split(',').collect();
    let last_row: Vec<&str> = lines[5].split(',').collect();
    assert_eq!(first_row[0].parse::<f64>().unwrap(), 0.0);
    assert_eq!(last_row[0].parse::<f64>().unwrap(), 1.0);
    for row in [&first_row, &last_row] {
        for value in &row[1..] {
            assert_eq!(value.parse::<f64>().unwrap(), 1.0);
        }
    }
}

#[test]
fn fig3_header_and_coincidence_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["fig3", "--grid-points", "9", "--trials", "400"],
    );
    let text = stdout(&out);
    assert!(text.contains("max |endpoint_prob_eta - endpoint_prob_chi|"));
    let csv = read(dir.path(), "fig3.csv");
    assert_eq!(
        csv.lines().next().unwrap(),
        "p,endpoint_prob_eta,endpoint_prob_chi"
    );
    assert_eq!(csv.lines().count(), 10);
}

#[test]
fn fig4_header_and_degenerate_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["fig4", "--grid-points", "3", "--include-endpoints"],
    );
    stdout(&out);
    let csv = read(dir.path(), "fig4.csv");
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "p_j,n_times_D2_at_N100,n_times_D2_at_N4000,asymptote"
    );
    assert_eq!(lines.len(), 6);
    let last: Vec<f64> = lines[5].split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(last[0], 1.0);
    assert_eq!(last[1], 0.0);
    assert_eq!(last[2], 0.0);
    assert_eq!(last[3], 0.0);
}

#[test]
fn fig5_identity_rotation_keeps_columns_equal() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &[
            "fig5",
            "--grid-points",
            "5",
            "--trials",
            "300",
            "--rotation",
            "0,50,110",
        ],
    );
    stdout(&out);
    let csv = read(dir.path(), "fig5.csv");
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "p1,D2_eta1,D2_eta2,D2_eta_total,D2_psi1,D2_psi2,D2_psi_total"
    );
    for line in &lines[1..] {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[1], cells[4], "row {line}");
        assert_eq!(cells[2], cells[5], "row {line}");
        assert_eq!(cells[3], cells[6], "row {line}");
    }
}

#[test]
fn klevel_ladder_and_enumeration_column() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["klevel", "--trials", "64", "--outcomes", "3", "--oracle"],
    );
    stdout(&out);
    let csv = read(dir.path(), "klevel.csv");
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "N,n_times_D2,asymptote,relative_gap,enumeration_n_times_D2"
    );
    let ns: Vec<u64> = lines[1..]
        .iter()
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(ns, vec![8, 16, 32, 64]);
    for line in &lines[1..] {
        let cells: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        assert!(
            (cells[1] - cells[4]).abs() < 1e-12,
            "enumeration disagrees: {line}"
        );
        assert_eq!(cells[2], 0.5);
    }
}

#[test]
fn klevel_without_oracle_has_four_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["klevel", "--trials", "16"]);
    stdout(&out);
    let csv = read(dir.path(), "klevel.csv");
    assert_eq!(
        csv.lines().next().unwrap(),
        "N,n_times_D2,asymptote,relative_gap"
    );
}

#[test]
fn transform_identity_reports_zero_residuals() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["transform", "--trials", "200", "--outcomes", "3"],
    );
    let text = stdout(&out);
    assert!(text.contains("composed unitary from 0 factor(s)"));
    assert!(text.contains("unitarity residual 0.000e0"));
    assert!(text.contains("conservation residual 0.000e0"));
    let csv = read(dir.path(), "transform.csv");
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "component,n_times_D2_before,n_times_D2_after");
    assert_eq!(lines.len(), 4);
    for line in &lines[1..] {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[1], cells[2], "identity must keep bytes equal: {line}");
    }
}

#[test]
fn transform_rejects_bad_factor_indices() {
    let dir = tempfile::tempdir().unwrap();
    for factors in ["2:1:10:10:10", "0:1:10:10:10", "1:3:10:10:10"] {
        let out = run_in(
            dir.path(),
            &["transform", "--outcomes", "2", "--factors", factors],
        );
        assert!(!out.status.success(), "factors {factors} must be rejected");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn mc_check_passes_and_reports_cells() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["mc-check", "--reps", "2000"]);
    let text = stdout(&out);
    assert_eq!(
        text.matches("[PASS]").count() + text.matches("[FAIL]").count(),
        20
    );
    assert!(text.contains("cells within 3 standard errors"));
    assert!(text.contains("ChaCha8"));
}

#[test]
fn unwritable_output_path_fails() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &[
            "fig1",
            "--grid-points",
            "1",
            "--trials",
            "10",
            "--out",
            "missing-dir/fig1.csv",
        ],
    );
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("cannot write output file"), "stderr: {err}");
}

#[test]
fn zero_grid_points_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["fig1", "--grid-points", "0"]);
    assert!(!out.status.success());
}
