//! Model spectra against an ODE-integration oracle and exact identities.

mod common;

use common::oracles::{airy_zero_oracle, rk4, AI0, AIP0};
use robin_spectra::model_operators::*;
use robin_spectra::Error;

#[test]
fn airy_zeros_match_ode_oracle() {
    let oracle = airy_zero_oracle(8);
    let zeros = airy_zeros(8);
    for (z, o) in zeros.iter().zip(&oracle) {
        assert!((z - o).abs() < 1e-10, "{z} vs {o}");
    }
    assert!((zeros[0] - 2.338_107_410_459_767).abs() < 1e-12);
    assert!((zeros[2] - 5.520_559_828_095_551).abs() < 1e-12);
}

#[test]
fn airy_function_matches_oracle_values() {
    let (v, d) = airy_ai(0.0);
    assert!((v - AI0).abs() < 1e-15 && (d - AIP0).abs() < 1e-15);
    let (mut x, mut y) = (0.0, [AI0, AIP0]);
    for _ in 0..10_000 {
        y = rk4(x, y, -1e-3);
        x -= 1e-3;
    }
    let (v, d) = airy_ai(-10.0);
    assert!((v - y[0]).abs() < 1e-10 && (d - y[1]).abs() < 1e-9, "{v} vs {}", y[0]);
}

#[test]
fn linear_well_eigenvalues_are_airy_zeros() {
    let s = power_well_spectrum(1, 1.0, true, 5).unwrap();
    for (e, a) in s.eigenvalues.iter().zip(airy_zeros(5)) {
        assert!((e - a).abs() < 1e-6);
    }
    let s = power_well_spectrum(1, 7.0, true, 3).unwrap();
    for (e, a) in s.eigenvalues.iter().zip(airy_zeros(3)) {
        assert!((e - 7f64.powf(2.0 / 3.0) * a).abs() < 1e-6 * e);
    }
}

#[test]
fn harmonic_oscillators() {
    let half = power_well_spectrum(2, 1.0, true, 5).unwrap();
    let line = power_well_spectrum(2, 1.0, false, 10).unwrap();
    for n in 1..=5 {
        assert!((half.eigenvalues[n - 1] - (4 * n - 1) as f64).abs() < 1e-6);
        assert!((line.eigenvalues[n - 1] - (2 * n - 1) as f64).abs() < 1e-6);
        // odd oscillator states vanish at the origin
        assert!((half.eigenvalues[n - 1] - line.eigenvalues[2 * n - 1]).abs() < 1e-6);
    }
    assert!(half.eigenvalues.windows(2).all(|w| w[1] > w[0]));
    assert!(matches!(power_well_spectrum(3, 1.0, false, 2), Err(Error::InvalidInput(_))));
}

#[test]
fn scaling_law_holds() {
    for m in 1..=4u32 {
        let unit = power_well_spectrum(m, 1.0, true, 3).unwrap();
        for beta in [0.5, 2.0, 7.0] {
            let s = power_well_spectrum(m, beta, true, 3).unwrap();
            let f = beta.powf(2.0 / (2.0 + m as f64));
            for (e, u) in s.eigenvalues.iter().zip(&unit.eigenvalues) {
                assert!((e - f * u).abs() <= 1e-6 * e.abs(), "m = {m}, β = {beta}: {e} vs {}", f * u);
            }
        }
    }
}

#[test]
fn slab_ground_state_asymptotics() {
    for ar in [5.0, 10.0, 20.0] {
        let (alpha, r) = (10.0, ar / 10.0);
        let g = slab_ground(alpha, r).unwrap();
        let small = (-ar).exp();
        assert!((g.e1 + alpha * alpha).abs() <= 10.0 * alpha * alpha * small);
        assert!((g.psi0_sq - 2.0 * alpha).abs() <= 10.0 * alpha * small);
        assert!((g.kappa - alpha * (g.kappa * r).tanh()).abs() <= 1e-12 * g.kappa);
    }
    assert!(matches!(slab_ground(1.0, 0.5), Err(Error::OutOfRegime(_))));
}

#[test]
fn slab_ratio_increases_to_one() {
    let mut prev = 0.0;
    // beyond αr ≈ 18, tanh(κr) rounds to 1 and κ = α in floating point
    for j in 0..12 {
        let ar = 1.5 * 1.25f64.powi(j);
        let g = slab_ground(4.0, ar / 4.0).unwrap();
        let q = g.kappa / 4.0;
        assert!(q < 1.0 && q >= prev, "κ/α = {q} at αr = {ar}");
        prev = q;
    }
}

#[test]
fn slab_positive_spectrum() {
    let e = slab_positive_eigs(10.0, 1.0, 3).unwrap();
    assert!(e[0] > 0.0 && e.windows(2).all(|w| w[1] > w[0]));
    let d = slab_positive_eigs(1e-9, 1.0, 3).unwrap();
    for (n, x) in d.iter().enumerate() {
        let want = ((n as f64 + 0.5) * std::f64::consts::PI).powi(2);
        assert!((x - want).abs() < 1e-6 * want, "{x} vs {want}");
    }
}
