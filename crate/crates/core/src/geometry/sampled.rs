//! Arclength reparametrization and sampled Frenet data.

use std::f64::consts::PI;
use std::sync::Arc;

use serde::Serialize;

use super::curve::{curvature_from_jet, BoundaryCurve};
use crate::spectra1d::quadrature::gauss_legendre;
use crate::{Error, Result};

pub const TOL_GEO: f64 = 1e-8;
const PANELS: usize = 512;
const PANEL_ORDER: usize = 12;

/// Frenet data at one arclength position.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FramePoint {
    pub s: f64,
    pub gamma: [f64; 2],
    /// unit tangent γ'(s)
    pub tangent: [f64; 2],
    /// outward unit normal, det(ν, γ') = 1
    pub nu: [f64; 2],
    pub k: f64,
    pub k1: f64,
    pub k2: f64,
}

/// A boundary curve together with its arclength map θ ↦ s(θ).
#[derive(Debug, Clone)]
pub struct ArclengthCurve {
    curve: BoundaryCurve,
    length: f64,
    /// cumulative length at panel starts (PANELS + 1 entries)
    cumulative: Vec<f64>,
    gauss: (Vec<f64>, Vec<f64>),
}

impl ArclengthCurve {
    pub fn new(curve: BoundaryCurve) -> Self {
        let gauss = gauss_legendre(PANEL_ORDER);
        let mut cumulative = vec![0.0; PANELS + 1];
        let dth = 2.0 * PI / PANELS as f64;
        for p in 0..PANELS {
            let a = dth * p as f64;
            cumulative[p + 1] = cumulative[p] + Self::integrate(&curve, &gauss, a, a + dth);
        }
        let length = cumulative[PANELS];
        Self { curve, length, cumulative, gauss }
    }

    fn integrate(curve: &BoundaryCurve, gauss: &(Vec<f64>, Vec<f64>), a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        gauss.0.iter().zip(&gauss.1).map(|(x, w)| w * curve.speed(mid + half * x)).sum::<f64>() * half
    }

    pub fn curve(&self) -> &BoundaryCurve {
        &self.curve
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// Arclength from θ = 0 to `theta` ∈ [0, 2π].
    pub fn arclength_at(&self, theta: f64) -> f64 {
        let dth = 2.0 * PI / PANELS as f64;
        let p = ((theta / dth).floor() as usize).min(PANELS - 1);
        let a = dth * p as f64;
        self.cumulative[p] + Self::integrate(&self.curve, &self.gauss, a, theta)
    }

    /// Parameter θ with s(θ) = `s` (after reduction modulo the length).
    pub fn theta_at(&self, s: f64) -> Result<f64> {
        let s = s.rem_euclid(self.length);
        let p = self.cumulative.partition_point(|&c| c <= s).clamp(1, PANELS) - 1;
        let dth = 2.0 * PI / PANELS as f64;
        let (mut lo, mut hi) = (dth * p as f64, dth * (p + 1) as f64);
        let frac = (s - self.cumulative[p]) / (self.cumulative[p + 1] - self.cumulative[p]);
        let mut th = lo + frac * dth;
        for _ in 0..60 {
            let f = self.arclength_at(th) - s;
            if f.abs() <= 1e-15 * self.length {
                return Ok(th);
            }
            if f > 0.0 {
                hi = th;
            } else {
                lo = th;
            }
            let next = th - f / self.curve.speed(th);
            th = if next > lo && next < hi { next } else { 0.5 * (lo + hi) };
            if hi - lo < 1e-15 {
                return Ok(th);
            }
        }
        let f = self.arclength_at(th) - s;
        if f.abs() <= 1e-12 * self.length {
            Ok(th)
        } else {
            Err(Error::ConvergenceFailure(format!("arclength inversion at s = {s}: residual {f:e}")))
        }
    }

    /// Frenet data at arclength `s` (taken modulo the length).
    pub fn frame(&self, s: f64) -> Result<FramePoint> {
        let th = self.theta_at(s)?;
        let j = self.curve.jet(th);
        let v = j[1][0].hypot(j[1][1]);
        let tangent = [j[1][0] / v, j[1][1] / v];
        let (k, k1, k2) = curvature_from_jet(&j);
        Ok(FramePoint {
            s,
            gamma: j[0],
            tangent,
            nu: [tangent[1], -tangent[0]],
            k,
            k1,
            k2,
        })
    }
}

/// Arclength-uniform samples of the boundary.
#[derive(Debug, Clone)]
pub struct SampledGeometry {
    curve: Arc<ArclengthCurve>,
    pub s_grid: Vec<f64>,
    pub gamma: Vec<[f64; 2]>,
    pub nu: Vec<[f64; 2]>,
    pub k: Vec<f64>,
    pub k1: Vec<f64>,
    pub k2: Vec<f64>,
    pub length: f64,
    pub h_s: f64,
}

impl SampledGeometry {
    pub fn curve(&self) -> &ArclengthCurve {
        &self.curve
    }

    pub fn n_samples(&self) -> usize {
        self.s_grid.len()
    }

    /// Frenet data at an arbitrary arclength position.
    pub fn frame(&self, s: f64) -> Result<FramePoint> {
        self.curve.frame(s)
    }

    pub fn k_max_abs(&self) -> f64 {
        self.k.iter().fold(0.0f64, |m, k| m.max(k.abs()))
    }

    /// max |ν' − kγ'| with ν' by central differences on the grid.
    pub fn frenet_residual(&self) -> f64 {
        let n = self.n_samples();
        let mut worst = 0.0f64;
        for i in 0..n {
            let (ip, im) = ((i + 1) % n, (i + n - 1) % n);
            let fp = self.curve.frame(self.s_grid[i]).expect("sampled point");
            for c in 0..2 {
                let d = (self.nu[ip][c] - self.nu[im][c]) / (2.0 * self.h_s);
                worst = worst.max((d - self.k[i] * fp.tangent[c]).abs());
            }
        }
        worst
    }

    /// max | |γ'| − 1 | by central differences on the grid.
    pub fn speed_defect(&self) -> f64 {
        let n = self.n_samples();
        (0..n)
            .map(|i| {
                let (p, m) = (self.gamma[(i + 1) % n], self.gamma[(i + n - 1) % n]);
                let d = (p[0] - m[0]).hypot(p[1] - m[1]) / (2.0 * self.h_s);
                (d - 1.0).abs()
            })
            .fold(0.0, f64::max)
    }

    /// (1/2π) ∮ k ds by the trapezoid rule on the periodic grid.
    pub fn turning_number(&self) -> f64 {
        self.k.iter().sum::<f64>() * self.h_s / (2.0 * PI)
    }
}

/// Resamples `curve` at `n_s` arclength-uniform points.
pub fn arclength_resample(curve: &BoundaryCurve, n_s: usize) -> Result<SampledGeometry> {
    if n_s < 64 {
        return Err(Error::InvalidInput(format!("n_s = {n_s}, at least 64 samples required")));
    }
    let arc = Arc::new(ArclengthCurve::new(curve.clone()));
    let length = arc.length();
    let h_s = length / n_s as f64;
    let mut g = SampledGeometry {
        curve: arc.clone(),
        s_grid: Vec::with_capacity(n_s),
        gamma: Vec::with_capacity(n_s),
        nu: Vec::with_capacity(n_s),
        k: Vec::with_capacity(n_s),
        k1: Vec::with_capacity(n_s),
        k2: Vec::with_capacity(n_s),
        length,
        h_s,
    };
    for i in 0..n_s {
        let s = h_s * i as f64;
        let f = arc.frame(s)?;
        g.s_grid.push(s);
        g.gamma.push(f.gamma);
        g.nu.push(f.nu);
        g.k.push(f.k);
        g.k1.push(f.k1);
        g.k2.push(f.k2);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_circle_samples() {
        let c = BoundaryCurve::circle(1.0, 0.0).unwrap();
        let g = arclength_resample(&c, 256).unwrap();
        assert!((g.length - 2.0 * PI).abs() < 1e-13);
        for i in 0..g.n_samples() {
            assert!((g.k[i] - 1.0).abs() < 1e-12);
            assert!(g.k1[i].abs() < 1e-12 && g.k2[i].abs() < 1e-12);
            assert!((g.nu[i][0] - g.gamma[i][0]).abs() < 1e-12);
            assert!((g.nu[i][1] - g.gamma[i][1]).abs() < 1e-12);
        }
    }

    #[test]
    fn circle_radius_two_has_half_curvature() {
        let c = BoundaryCurve::circle(2.0, 0.7).unwrap();
        let g = arclength_resample(&c, 128).unwrap();
        assert!(g.k.iter().all(|k| (k - 0.5).abs() < 1e-12));
        assert!((g.length - 4.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn too_few_samples_rejected() {
        let c = BoundaryCurve::circle(1.0, 0.0).unwrap();
        assert!(arclength_resample(&c, 32).is_err());
    }

    #[test]
    fn orientation_convention_holds() {
        let c = BoundaryCurve::ellipse(2.0, 1.0, 0.4).unwrap();
        let a = ArclengthCurve::new(c);
        for i in 0..10 {
            let f = a.frame(0.9 * i as f64).unwrap();
            let det = f.nu[0] * f.tangent[1] - f.nu[1] * f.tangent[0];
            assert!((det - 1.0).abs() < 1e-14);
        }
    }
}
