//! Closed planar curves given by truncated Fourier series.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Minimum admissible |dγ/dθ| relative to the curve's mean speed.
pub const EPS_REGULAR: f64 = 1e-8;
const PROBE_POINTS: usize = 4096;

/// `x(θ) = Σ_j a_j cos(jθ) + b_j sin(jθ)`, and the same for `y`.
///
/// The curve is traversed counter-clockwise: a clockwise input is reversed at
/// construction. Parameter value θ = 0 sits at raw angle `phase_origin`, which
/// is where the Robin arc starts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryCurve {
    pub fourier_x: Vec<(f64, f64)>,
    pub fourier_y: Vec<(f64, f64)>,
    pub phase_origin: f64,
    /// +1 when the raw parametrization is counter-clockwise, -1 otherwise.
    orientation: f64,
}

/// Position and θ-derivatives of orders 0..=4.
pub type Jet = [[f64; 2]; 5];

fn series_derivative(coeffs: &[(f64, f64)], phi: f64, order: usize) -> f64 {
    let shift = order as f64 * FRAC_PI_2;
    coeffs
        .iter()
        .enumerate()
        .map(|(j, &(a, b))| {
            if j == 0 {
                return if order == 0 { a } else { 0.0 };
            }
            let jf = j as f64;
            let arg = jf * phi + shift;
            jf.powi(order as i32) * (a * arg.cos() + b * arg.sin())
        })
        .sum()
}

impl BoundaryCurve {
    pub fn from_fourier(
        fourier_x: Vec<(f64, f64)>,
        fourier_y: Vec<(f64, f64)>,
        phase_origin: f64,
    ) -> Result<Self> {
        let all = fourier_x.iter().chain(&fourier_y);
        if all.clone().any(|(a, b)| !a.is_finite() || !b.is_finite()) || !phase_origin.is_finite() {
            return Err(Error::DegenerateCurve("non-finite Fourier coefficient".into()));
        }
        let has_mode = |c: &[(f64, f64)]| c.iter().skip(1).any(|&(a, b)| a != 0.0 || b != 0.0);
        if !has_mode(&fourier_x) && !has_mode(&fourier_y) {
            return Err(Error::DegenerateCurve("no non-constant Fourier mode".into()));
        }
        let mut curve = Self { fourier_x, fourier_y, phase_origin, orientation: 1.0 };
        // regularity and orientation on a dense probe grid
        let mut speeds = Vec::with_capacity(PROBE_POINTS);
        let mut area = 0.0;
        for i in 0..PROBE_POINTS {
            let th = 2.0 * PI * i as f64 / PROBE_POINTS as f64;
            let j = curve.jet(th);
            speeds.push(j[1][0].hypot(j[1][1]));
            area += 0.5 * (j[0][0] * j[1][1] - j[0][1] * j[1][0]);
        }
        let mean = speeds.iter().sum::<f64>() / PROBE_POINTS as f64;
        let min = speeds.iter().copied().fold(f64::INFINITY, f64::min);
        if !(mean > 0.0) || min < EPS_REGULAR * mean {
            return Err(Error::DegenerateCurve(format!(
                "|dγ/dθ| drops to {min:e} (mean speed {mean:e})"
            )));
        }
        if area.abs() < 1e-12 * mean * mean {
            return Err(Error::DegenerateCurve("curve encloses no area".into()));
        }
        if area < 0.0 {
            curve.orientation = -1.0;
        }
        Ok(curve)
    }

    /// Circle of radius `r` centred at the origin.
    pub fn circle(r: f64, phase_origin: f64) -> Result<Self> {
        Self::from_fourier(vec![(0.0, 0.0), (r, 0.0)], vec![(0.0, 0.0), (0.0, r)], phase_origin)
    }

    /// Ellipse with semi-axes `a` (along x) and `b` (along y).
    pub fn ellipse(a: f64, b: f64, phase_origin: f64) -> Result<Self> {
        Self::from_fourier(vec![(0.0, 0.0), (a, 0.0)], vec![(0.0, 0.0), (0.0, b)], phase_origin)
    }

    /// Parses `circle:R` or `ellipse:a,b`.
    pub fn from_shape(shape: &str, phase_origin: f64) -> Result<Self> {
        let (kind, args) = shape
            .split_once(':')
            .ok_or_else(|| Error::InvalidInput(format!("shape `{shape}` is not `kind:params`")))?;
        let nums: Vec<f64> = args
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::InvalidInput(format!("shape `{shape}`: {e}")))?;
        match (kind.trim(), nums.as_slice()) {
            ("circle", [r]) if *r > 0.0 => Self::circle(*r, phase_origin),
            ("ellipse", [a, b]) if *a > 0.0 && *b > 0.0 => Self::ellipse(*a, *b, phase_origin),
            _ => Err(Error::InvalidInput(format!("unknown or malformed shape `{shape}`"))),
        }
    }

    pub fn n_modes(&self) -> usize {
        self.fourier_x.len().max(self.fourier_y.len())
    }

    pub fn is_reversed(&self) -> bool {
        self.orientation < 0.0
    }

    /// Position and first four θ-derivatives at parameter `theta`.
    pub fn jet(&self, theta: f64) -> Jet {
        let phi = self.orientation * theta + self.phase_origin;
        let mut out = [[0.0; 2]; 5];
        let mut sign = 1.0;
        for (d, slot) in out.iter_mut().enumerate() {
            slot[0] = sign * series_derivative(&self.fourier_x, phi, d);
            slot[1] = sign * series_derivative(&self.fourier_y, phi, d);
            sign *= self.orientation;
        }
        out
    }

    pub fn point(&self, theta: f64) -> [f64; 2] {
        self.jet(theta)[0]
    }

    /// |dγ/dθ|.
    pub fn speed(&self, theta: f64) -> f64 {
        let j = self.jet(theta);
        j[1][0].hypot(j[1][1])
    }
}

/// Curvature and its first two arclength derivatives from a θ-jet.
///
/// Signed curvature is positive for a convex counter-clockwise curve.
pub fn curvature_from_jet(j: &Jet) -> (f64, f64, f64) {
    let [x1, y1] = j[1];
    let [x2, y2] = j[2];
    let [x3, y3] = j[3];
    let [x4, y4] = j[4];
    let v2 = x1 * x1 + y1 * y1;
    let v = v2.sqrt();
    let v_1 = (x1 * x2 + y1 * y2) / v;
    let v_2 = (x2 * x2 + x1 * x3 + y2 * y2 + y1 * y3) / v - v_1 * v_1 / v;
    let n0 = x1 * y2 - y1 * x2;
    let n1 = x1 * y3 - y1 * x3;
    let n2 = x2 * y3 + x1 * y4 - y2 * x3 - y1 * x4;
    let v3 = v2 * v;
    let v4 = v3 * v;
    let v5 = v4 * v;
    let k = n0 / v3;
    let k_th = n1 / v3 - 3.0 * n0 * v_1 / v4;
    let k_thth = n2 / v3 - 6.0 * n1 * v_1 / v4 - 3.0 * n0 * v_2 / v4 + 12.0 * n0 * v_1 * v_1 / v5;
    let k_s = k_th / v;
    let k_ss = k_thth / v2 - k_th * v_1 / v3;
    (k, k_s, k_ss)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_coefficients_are_degenerate() {
        let r = BoundaryCurve::from_fourier(vec![(0.0, 0.0); 3], vec![(0.0, 0.0); 3], 0.0);
        assert!(matches!(r, Err(Error::DegenerateCurve(_))));
    }

    #[test]
    fn segment_is_degenerate() {
        // x = cos θ, y = 0 traces a segment with stationary points
        let r = BoundaryCurve::from_fourier(vec![(0.0, 0.0), (1.0, 0.0)], vec![(0.0, 0.0)], 0.0);
        assert!(matches!(r, Err(Error::DegenerateCurve(_))));
    }

    #[test]
    fn clockwise_input_is_reversed() {
        let c = BoundaryCurve::from_fourier(vec![(0.0, 0.0), (1.0, 0.0)], vec![(0.0, 0.0), (0.0, -1.0)], 0.0)
            .unwrap();
        assert!(c.is_reversed());
        let (k, _, _) = curvature_from_jet(&c.jet(0.3));
        assert!((k - 1.0).abs() < 1e-14);
    }

    #[test]
    fn ellipse_curvature_matches_closed_form() {
        let (a, b) = (2.0, 1.0);
        let c = BoundaryCurve::ellipse(a, b, 0.0).unwrap();
        for i in 0..17 {
            let th = 0.37 * i as f64;
            let (k, _, _) = curvature_from_jet(&c.jet(th));
            let exact = a * b / (a * a * th.sin().powi(2) + b * b * th.cos().powi(2)).powf(1.5);
            assert!((k - exact).abs() < 1e-13);
        }
    }

    #[test]
    fn shapes_parse() {
        assert!(BoundaryCurve::from_shape("circle:2", 0.0).is_ok());
        assert!(BoundaryCurve::from_shape("ellipse:2,1", 0.0).is_ok());
        assert!(BoundaryCurve::from_shape("ellipse:2", 0.0).is_err());
        assert!(BoundaryCurve::from_shape("square:1", 0.0).is_err());
        assert!(BoundaryCurve::from_shape("circle:-1", 0.0).is_err());
    }
}
