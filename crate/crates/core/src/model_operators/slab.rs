//! The Robin–Dirichlet slab operator: −f'' on (0, r) with f'(0) = −αf(0)
//! and f(r) = 0.

use serde::Serialize;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlabGroundState {
    pub alpha: f64,
    pub r: f64,
    /// positive root of κ = α tanh(κ r)
    pub kappa: f64,
    /// the negative eigenvalue −κ²
    pub e1: f64,
    /// |ψ(0)|² for the L²-normalized ground state
    pub psi0_sq: f64,
}

/// Unique negative eigenvalue and boundary value of the normalized ground state.
pub fn slab_ground(alpha: f64, r: f64) -> Result<SlabGroundState> {
    if !(alpha > 0.0 && r > 0.0) {
        return Err(Error::InvalidInput(format!("slab needs α > 0 and r > 0 (α = {alpha}, r = {r})")));
    }
    if alpha * r <= 1.0 {
        return Err(Error::OutOfRegime(format!("αr = {} ≤ 1: no negative eigenvalue", alpha * r)));
    }
    let g = |k: f64| k - alpha * (k * r).tanh();
    let dg = |k: f64| 1.0 - alpha * r / (k * r).cosh().powi(2);
    let mut lo = 0.5 * alpha * (alpha * r).tanh();
    while g(lo) >= 0.0 {
        lo *= 0.5;
        if lo < 1e-300 {
            return Err(Error::ConvergenceFailure("cannot bracket the slab root".into()));
        }
    }
    let mut hi = alpha;
    if g(hi) <= 0.0 {
        // tanh(αr) rounds to one: κ = α to machine precision
        hi = alpha;
        lo = alpha;
    }
    let mut kappa = 0.5 * (lo + hi);
    for _ in 0..200 {
        let f = g(kappa);
        if f == 0.0 || hi - lo <= 1e-15 * alpha {
            break;
        }
        if f < 0.0 {
            lo = kappa;
        } else {
            hi = kappa;
        }
        let newton = kappa - f / dg(kappa);
        kappa = if newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
    }
    let x = kappa * r;
    // sinh²(x) / ∫₀^r sinh²(κu) du, scaled by e^{-2x} to avoid overflow
    let e2 = (-2.0 * x).exp();
    let num = 0.25 * (1.0 - e2).powi(2);
    let den = (1.0 - e2 * e2) / (8.0 * kappa) - 0.5 * r * e2;
    Ok(SlabGroundState { alpha, r, kappa, e1: -kappa * kappa, psi0_sq: num / den })
}

/// The `n` lowest positive eigenvalues k², with k = α tan(k r).
pub fn slab_positive_eigs(alpha: f64, r: f64, n: usize) -> Result<Vec<f64>> {
    if !(alpha >= 0.0 && r > 0.0) {
        return Err(Error::InvalidInput(format!("slab needs α ≥ 0 and r > 0 (α = {alpha}, r = {r})")));
    }
    // h(k) = α sin(kr) − k cos(kr) vanishes at the eigenvalues; branch j lives in
    // (jπ, jπ + π/2)/r, where h changes sign
    let h = |k: f64| alpha * (k * r).sin() - k * (k * r).cos();
    let dh = |k: f64| alpha * r * (k * r).cos() - (k * r).cos() + k * r * (k * r).sin();
    let first_branch = if alpha * r >= 1.0 { 1 } else { 0 };
    let mut out = Vec::with_capacity(n);
    for j in first_branch..first_branch + n {
        let jf = j as f64;
        let mut lo = (jf * std::f64::consts::PI).max(0.0) / r;
        // slightly past the pole so that α = 0 (root at the pole) stays bracketed
        let mut hi = ((jf + 0.5) * std::f64::consts::PI + 1e-7) / r;
        if j == 0 {
            lo = 1e-12 / r;
        }
        let (mut flo, fhi) = (h(lo), h(hi));
        if flo * fhi > 0.0 {
            return Err(Error::ConvergenceFailure(format!("no sign change on branch {j}")));
        }
        let mut k = 0.5 * (lo + hi);
        for _ in 0..200 {
            let f = h(k);
            if f == 0.0 || hi - lo <= 1e-15 * hi {
                break;
            }
            if (f < 0.0) == (flo < 0.0) {
                lo = k;
                flo = f;
            } else {
                hi = k;
            }
            let newton = k - f / dh(k);
            k = if newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        }
        out.push(k * k);
    }
    Ok(out)
}
