//! The one-dimensional effective operators on the Robin arc.
//!
//! `Λ'_α` acts on (0, ℓ) with Dirichlet ends; `Λ_{α,ρ}` acts on the whole
//! boundary circle with the same potential on the arc and a penalty
//! α^{2−ρ} on the complement. Both share the arc mesh, so the discrete
//! min-max ordering `E_n(Λ_{α,ρ}) ≤ E_n(Λ'_α)` holds exactly.

use serde::Serialize;

use crate::geometry::{CurvatureMaxInfo, LocationClass, RobinArc, SampledGeometry};
use crate::harness::fit_exponent;
use crate::spectra1d::{assemble_form_1d, form_eigs, graded_mesh, Bc1d, Mesh1d, Spectrum};
use crate::{Error, Result};

/// Default element degree of the effective discretization.
pub const EFFECTIVE_DEGREE: usize = 3;
/// Points required inside one semiclassical length of the curvature maximum.
const POINTS_PER_SEMICLASSICAL_LENGTH: f64 = 64.0;

/// The arc potential α(k_* − k) + (k_*² − 2kk_* − k²)/4 and the penalty level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EffectivePotential {
    pub alpha: f64,
    pub rho: Option<f64>,
    pub k_star: f64,
    /// sup over the arc of |k_*² − 2kk_* − k²| / 4
    pub a: f64,
}

impl EffectivePotential {
    pub fn new(geom: &SampledGeometry, arc: RobinArc, info: &CurvatureMaxInfo, alpha: f64, rho: Option<f64>) -> Result<Self> {
        let k_star = info.k_star;
        let mut a = 0.0f64;
        for (i, &s) in geom.s_grid.iter().enumerate() {
            if s <= arc.ell {
                a = a.max(Self::bounded_part(k_star, geom.k[i]).abs());
            }
        }
        a = a.max(Self::bounded_part(k_star, geom.frame(arc.ell)?.k).abs());
        Ok(Self { alpha, rho, k_star, a })
    }

    /// (k_*² − 2kk_* − k²)/4
    pub fn bounded_part(k_star: f64, k: f64) -> f64 {
        (k_star * k_star - 2.0 * k * k_star - k * k) / 4.0
    }

    /// Potential on the arc at curvature `k`.
    pub fn on_arc(&self, k: f64) -> f64 {
        self.alpha * (self.k_star - k) + Self::bounded_part(self.k_star, k)
    }

    pub fn penalty(&self) -> f64 {
        match self.rho {
            Some(rho) => self.alpha.powf(2.0 - rho),
            None => f64::INFINITY,
        }
    }
}

/// Geometry, arc and curvature data shared by both effective operators.
#[derive(Debug, Clone)]
pub struct EffectiveProblem<'a> {
    pub geom: &'a SampledGeometry,
    pub arc: RobinArc,
    pub info: CurvatureMaxInfo,
    pub degree: usize,
}

impl<'a> EffectiveProblem<'a> {
    pub fn new(geom: &'a SampledGeometry, arc: RobinArc, info: CurvatureMaxInfo) -> Self {
        Self { geom, arc, info, degree: EFFECTIVE_DEGREE }
    }

    /// Length scale α^{−1/(m+2)} on which low eigenfunctions localize.
    pub fn semiclassical_length(&self, alpha: f64) -> Option<f64> {
        match self.info.location_class {
            LocationClass::Constant => None,
            _ if alpha > 0.0 => Some(alpha.powf(-1.0 / (self.info.m as f64 + 2.0))),
            _ => None,
        }
    }

    /// Mesh of [0, ℓ] with at least `n_grid` nodes, refined around s_*.
    pub fn arc_mesh(&self, alpha: f64, n_grid: usize) -> Result<Mesh1d> {
        if n_grid < 256 {
            return Err(Error::BadGrid(format!("n_grid = {n_grid}, at least 256 required")));
        }
        let ell = self.arc.ell;
        let p = self.degree as f64;
        let min_cells = (n_grid as f64 / p).ceil() as usize;
        let h_coarse = ell / min_cells as f64;
        match self.semiclassical_length(alpha) {
            None => Mesh1d::uniform(0.0, ell, min_cells),
            Some(delta) => {
                // element size such that nodes are POINTS_PER_SEMICLASSICAL_LENGTH per δ
                let h_fine = (p * delta / POINTS_PER_SEMICLASSICAL_LENGTH).min(h_coarse);
                let s_star = self.info.s_star;
                graded_mesh(
                    0.0,
                    ell,
                    |s| {
                        let d = ((s - s_star).abs() - delta).max(0.0);
                        (h_fine + 0.15 * d).min(h_coarse)
                    },
                    min_cells,
                )
            }
        }
    }

    fn arc_potential(&self, pot: EffectivePotential) -> impl Fn(f64) -> f64 + '_ {
        move |s: f64| {
            let k = self.geom.frame(s).map(|f| f.k).unwrap_or(f64::NAN);
            pot.on_arc(k)
        }
    }

    /// Lowest `n` eigenvalues of Λ'_α (Dirichlet at 0 and ℓ).
    pub fn lambda_prime_eigs(&self, alpha: f64, n: usize, n_grid: usize) -> Result<Spectrum> {
        if !(alpha >= 0.0) {
            return Err(Error::InvalidInput(format!("α = {alpha} must be non-negative")));
        }
        let pot = EffectivePotential::new(self.geom, self.arc, &self.info, alpha, None)?;
        let mesh = self.arc_mesh(alpha, n_grid)?;
        let form = assemble_form_1d(&mesh, self.degree, |_| 1.0, self.arc_potential(pot), Bc1d::Dirichlet)?;
        form_eigs(&form, n, None)
    }

    /// Mesh of the complement [ℓ, L], refined at both ends to resolve the
    /// penalty boundary layer.
    fn outside_mesh(&self, alpha: f64, rho: f64, arc_mesh: &Mesh1d) -> Result<Mesh1d> {
        let (ell, len) = (self.arc.ell, self.geom.length);
        let layer = alpha.powf(-(2.0 - rho) / 2.0);
        let p = self.degree as f64;
        let h_fine = (p * layer / 8.0).min(arc_mesh.max_spacing());
        let h_coarse = (len - ell) / 32.0;
        graded_mesh(
            ell,
            len,
            |s| {
                let d = (s - ell).min(len - s);
                (h_fine + 0.2 * (d - layer).max(0.0)).min(h_coarse)
            },
            8,
        )
    }

    /// Lowest `n` eigenvalues of Λ_{α,ρ} on the boundary circle.
    pub fn lambda_rho_eigs(&self, alpha: f64, rho: f64, n: usize, n_grid: usize) -> Result<Spectrum> {
        if !(rho > 0.0 && rho < 1.0) {
            return Err(Error::InvalidInput(format!("ρ = {rho} must lie in (0, 1)")));
        }
        if !(alpha >= 1.0) {
            return Err(Error::InvalidInput(format!("α = {alpha} must be at least 1")));
        }
        let pot = EffectivePotential::new(self.geom, self.arc, &self.info, alpha, Some(rho))?;
        let arc_mesh = self.arc_mesh(alpha, n_grid)?;
        let mesh = arc_mesh.join(&self.outside_mesh(alpha, rho, &arc_mesh)?)?;
        let ell = self.arc.ell;
        let inside = self.arc_potential(pot);
        let penalty = pot.penalty();
        // element edges sit at 0 and ℓ, so quadrature points never straddle the switch
        let q = |s: f64| if s <= ell { inside(s) } else { penalty };
        let form = assemble_form_1d(&mesh, self.degree, |_| 1.0, q, Bc1d::Periodic)?;
        form_eigs(&form, n, None)
    }

    /// Slope of log E_n(Λ'_α) against log α over `alpha_grid`.
    /// Constant curvature gives α-independent eigenvalues and slope 0.
    pub fn apriori_bound_check(&self, alpha_grid: &[f64], n: usize, n_grid: usize) -> Result<f64> {
        if self.info.location_class == LocationClass::Constant {
            return Ok(0.0);
        }
        let mut ys = Vec::with_capacity(alpha_grid.len());
        for &alpha in alpha_grid {
            let s = self.lambda_prime_eigs(alpha, n, n_grid)?;
            ys.push(s.eigenvalues[n - 1]);
        }
        if ys.iter().any(|&y| y <= 0.0) {
            return Err(Error::FitFailure(format!("non-positive eigenvalues {ys:?}")));
        }
        Ok(fit_exponent(alpha_grid, &ys)?.slope)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{arclength_resample, max_curvature_on_arc, BoundaryCurve};
    use std::f64::consts::PI;

    #[test]
    fn circle_arc_is_shifted_dirichlet_laplacian() {
        let g = arclength_resample(&BoundaryCurve::circle(1.0, 0.0).unwrap(), 256).unwrap();
        let arc = RobinArc::new(PI, g.length).unwrap();
        let info = max_curvature_on_arc(&g, arc).unwrap();
        let p = EffectiveProblem::new(&g, arc, info);
        let s = p.lambda_prime_eigs(0.0, 3, 256).unwrap();
        for (i, e) in s.eigenvalues.iter().enumerate() {
            let n = (i + 1) as f64;
            assert!((e - (n * n - 0.5)).abs() < 1e-7, "{e}");
        }
    }

    #[test]
    fn coarse_grid_rejected() {
        let g = arclength_resample(&BoundaryCurve::circle(1.0, 0.0).unwrap(), 256).unwrap();
        let arc = RobinArc::new(PI, g.length).unwrap();
        let info = max_curvature_on_arc(&g, arc).unwrap();
        let p = EffectiveProblem::new(&g, arc, info);
        assert!(matches!(p.lambda_prime_eigs(1.0, 1, 100), Err(Error::BadGrid(_))));
        assert!(p.lambda_rho_eigs(10.0, 1.5, 1, 256).is_err());
    }
}
