//! End-to-end sweeps: report shape, determinism and failure handling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use robin_spectra::harness::*;
use robin_spectra::Error;

fn circle_spec(alphas: &[f64]) -> ProblemSpec {
    let text = format!(
        r#"{{"geometry": {{"shape": "circle:1"}}, "ell": {}, "alpha_grid": {:?}, "n_max": 2,
            "grids": {{"n_s": 64, "n_t": 32, "n_1d": 512}}}}"#,
        std::f64::consts::PI,
        alphas
    );
    ProblemSpec::from_json(&text).unwrap()
}

#[test]
fn circle_sweep_report() {
    let spec = circle_spec(&[20.0, 40.0, 80.0]);
    let report = run_sweep(&spec, 1).unwrap();
    assert_eq!(report.rows.len(), 6);
    assert!(report.metadata.failures.is_empty());
    assert!(report.metadata.sandwich_violations.is_empty(), "{:?}", report.metadata.sandwich_violations);
    assert!(report.metadata.ordering_violations.is_empty());
    for row in &report.rows {
        assert_eq!(row.regime, Regime::Constant);
        assert_eq!(row.residual, row.e_strip - row.e_predicted);
        assert!(row.e_lambda_prime - row.e_lambda_rho >= 0.0);
    }
    for n in 1..=2 {
        let res: Vec<f64> = report.rows.iter().filter(|r| r.n == n).map(|r| r.residual.abs()).collect();
        assert!(res.windows(2).all(|w| w[1] < w[0]), "n = {n}: {res:?}");
        let fit = report.fitted_exponents[n - 1].fit.unwrap();
        assert!(fit.slope < 0.0);
    }
    let csv = report.to_csv();
    assert_eq!(csv.lines().next().unwrap(), CSV_HEADER);
    assert_eq!(csv.lines().count(), 7);
    let first: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(first.len(), 11);
    assert_eq!(first[0], "2.0000000000000000e1");
    assert_eq!(first[7], "constant");
}

#[test]
fn sweep_is_deterministic_across_worker_counts() {
    let spec = circle_spec(&[20.0, 30.0, 40.0]);
    let a = run_sweep(&spec, 1).unwrap().to_csv();
    let b = run_sweep(&spec, 3).unwrap().to_csv();
    let c = run_sweep(&spec, 1).unwrap().to_csv();
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn failing_alpha_becomes_failed_row() {
    // α = 2 gives depth r ≈ 0.71, outside the admissible tube of the unit circle
    let spec = circle_spec(&[2.0, 20.0, 40.0]);
    let report = run_sweep(&spec, 1).unwrap();
    assert_eq!(report.rows.len(), 6);
    assert_eq!(report.metadata.failures.len(), 1);
    assert_eq!(report.metadata.failures[0].alpha, 2.0);
    assert!(report.rows[0].failed() && report.rows[1].failed());
    assert!(report.rows[2..].iter().all(|r| !r.failed()));
    let csv = report.to_csv();
    assert!(csv.lines().nth(1).unwrap().contains("NaN"));
}

#[test]
fn report_files_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let report = run_sweep(&circle_spec(&[20.0, 25.0, 30.0]), 1).unwrap();
    let (csv, json) = report.write(dir.path()).unwrap();
    assert_eq!(std::fs::read_to_string(csv).unwrap(), report.to_csv());
    let meta: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(meta["metadata"]["regime"], "constant");
    assert_eq!(meta["metadata"]["sigma"], 0.5);
    assert!(meta["metadata"]["bound_a"].as_array().unwrap().len() == 3);
}

#[test]
fn invalid_specs_are_rejected() {
    let text = r#"{"geometry": {"shape": "circle:1"}, "ell": 1.0, "alpha_grid": [], "n_max": 1}"#;
    assert!(matches!(ProblemSpec::from_json(text), Err(Error::InvalidInput(_))));
    let text = r#"{"geometry": {"shape": "square:1"}, "ell": 1.0, "alpha_grid": [1, 2, 3], "n_max": 1}"#;
    let spec = ProblemSpec::from_json(text).unwrap();
    assert!(run_sweep(&spec, 1).is_err());
}

#[test]
fn noisy_power_law_fit() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let xs: Vec<f64> = (0..12).map(|i| 10f64.powf(1.0 + 0.25 * i as f64)).collect();
    let ys: Vec<f64> = xs.iter().map(|x| 2.5 * x.powf(-0.25) * (1.0 + rng.gen_range(-0.01..0.01))).collect();
    let fit = fit_exponent(&xs, &ys).unwrap();
    assert!((fit.slope + 0.25).abs() < 0.05);
    assert!(fit.r2 > 0.99);
}

#[test]
fn sandwich_slack_formula() {
    assert!((sandwich_slack(16.0, 0.5) - 10.0 * 0.5).abs() < 1e-15);
    assert!((sandwich_slack(1e4, 0.5) - 10.0 * 0.1).abs() < 1e-15);
}
