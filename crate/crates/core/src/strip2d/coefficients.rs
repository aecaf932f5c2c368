//! Tubular coordinates and the coefficients of the strip forms.

use crate::geometry::SampledGeometry;
use crate::{Error, Result};

/// Largest admissible strip depth factor: r·max|k| must stay below this.
pub const DEPTH_CURVATURE_LIMIT: f64 = 0.5;
const PROBE_T_POINTS: usize = 64;
const BOUND_MARGIN: f64 = 1.1;

/// Radius R with ‖k‖_∞·R = 1; every depth must stay strictly below it.
pub fn tube_radius(geom: &SampledGeometry) -> f64 {
    let kmax = geom.k_max_abs();
    if kmax > 0.0 {
        1.0 / kmax
    } else {
        f64::INFINITY
    }
}

/// Φ(s, t) = γ(s) − t ν(s).
pub fn tubular_map(geom: &SampledGeometry, s: f64, t: f64) -> Result<[f64; 2]> {
    let radius = tube_radius(geom);
    if !(t >= 0.0) || t >= radius {
        return Err(Error::OutOfTube(format!("t = {t} outside [0, {radius})")));
    }
    let f = geom.frame(s)?;
    Ok([f.gamma[0] - t * f.nu[0], f.gamma[1] - t * f.nu[1]])
}

/// (1 − tk)^{-2}, the coefficient of |∂_s v|².
pub fn metric(k: f64, t: f64) -> f64 {
    let j = 1.0 - t * k;
    1.0 / (j * j)
}

/// V(s, t) = t k″/(2(1−tk)³) + 5t²k′²/(4(1−tk)⁴) + k²/(4(1−tk)²).
pub fn potential(k: f64, k1: f64, k2: f64, t: f64) -> f64 {
    let j = 1.0 - t * k;
    let j2 = j * j;
    t * k2 / (2.0 * j2 * j) + 5.0 * t * t * k1 * k1 / (4.0 * j2 * j2) + k * k / (4.0 * j2)
}

pub fn potential_v(geom: &SampledGeometry, s: f64, t: f64) -> Result<f64> {
    let f = geom.frame(s)?;
    if !(t >= 0.0) || 1.0 - t * f.k <= 0.0 {
        return Err(Error::OutOfTube(format!("1 − tk = {} at s = {s}, t = {t}", 1.0 - t * f.k)));
    }
    Ok(potential(f.k, f.k1, f.k2, t))
}

/// Smallest A with |metric − 1| ≤ At and |V − k²/4| ≤ At at one point.
pub fn pointwise_bound(k: f64, k1: f64, k2: f64, t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let dm = (metric(k, t) - 1.0).abs();
    let dv = (potential(k, k1, k2, t) - 0.25 * k * k).abs();
    dm.max(dv) / t
}

/// The bound constant over curvature samples and a uniform probe in (0, r_probe],
/// enlarged by a 10% margin.
pub fn bound_constant_from_samples(k: &[f64], k1: &[f64], k2: &[f64], r_probe: f64) -> f64 {
    let mut a = 0.0f64;
    for i in 0..k.len() {
        for j in 1..=PROBE_T_POINTS {
            let t = r_probe * j as f64 / PROBE_T_POINTS as f64;
            a = a.max(pointwise_bound(k[i], k1[i], k2[i], t));
        }
    }
    BOUND_MARGIN * a
}

/// The constant A of the two-sided bounds on Π_{R_probe}.
pub fn bound_constant_a(geom: &SampledGeometry, r_probe: f64) -> Result<f64> {
    let radius = tube_radius(geom);
    if !(r_probe > 0.0) || r_probe >= radius {
        return Err(Error::OutOfTube(format!("probe depth {r_probe} outside (0, {radius})")));
    }
    Ok(bound_constant_from_samples(&geom.k, &geom.k1, &geom.k2, r_probe))
}

/// Which of the three strip forms to assemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum StripVariant {
    #[serde(rename = "p")]
    P,
    #[serde(rename = "p+")]
    PPlus,
    #[serde(rename = "p-")]
    PMinus,
}

impl std::str::FromStr for StripVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p" | "P" => Ok(Self::P),
            "p+" | "P+" | "plus" => Ok(Self::PPlus),
            "p-" | "P-" | "minus" => Ok(Self::PMinus),
            _ => Err(Error::InvalidInput(format!("unknown strip variant {s:?}"))),
        }
    }
}

impl std::fmt::Display for StripVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::P => "p",
            Self::PPlus => "p+",
            Self::PMinus => "p-",
        })
    }
}

/// Coefficients of one strip form at depth r.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StripCoefficients {
    pub alpha: f64,
    pub r: f64,
    pub variant: StripVariant,
    pub bound_a: f64,
}

impl StripCoefficients {
    /// Coefficient of |∂_s v|².
    pub fn ds_coeff(&self, k: f64, t: f64) -> f64 {
        match self.variant {
            StripVariant::P => metric(k, t),
            StripVariant::PPlus => 1.0 + self.bound_a * self.r,
            StripVariant::PMinus => 1.0 - self.bound_a * self.r,
        }
    }

    /// Coefficient of |v|² (already carrying its sign).
    pub fn mass_coeff(&self, k: f64, k1: f64, k2: f64, t: f64) -> f64 {
        match self.variant {
            StripVariant::P => -potential(k, k1, k2, t),
            StripVariant::PPlus => self.bound_a * self.r - 0.25 * k * k,
            StripVariant::PMinus => -self.bound_a * self.r - 0.25 * k * k,
        }
    }

    /// Weight of −|v(s, 0)|² on the Robin arc.
    pub fn boundary_coeff(&self, k: f64) -> f64 {
        self.alpha + 0.5 * k
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{arclength_resample, BoundaryCurve};

    #[test]
    fn circle_map_is_radial() {
        let g = arclength_resample(&BoundaryCurve::circle(1.0, 0.0).unwrap(), 128).unwrap();
        for &(s, t) in &[(0.3, 0.1), (2.0, 0.5), (5.5, 0.0)] {
            let p = tubular_map(&g, s, t).unwrap();
            assert!((p[0] - (1.0 - t) * f64::cos(s)).abs() < 1e-10);
            assert!((p[1] - (1.0 - t) * f64::sin(s)).abs() < 1e-10);
        }
        assert!(matches!(tubular_map(&g, 0.0, 1.0), Err(Error::OutOfTube(_))));
    }

    #[test]
    fn potential_at_boundary_and_on_circle() {
        assert_eq!(potential(1.7, 0.3, -2.0, 0.0), 0.25 * 1.7 * 1.7);
        let t = 0.2;
        assert!((potential(1.0, 0.0, 0.0, t) - 1.0 / (4.0 * 0.8 * 0.8)).abs() < 1e-15);
    }

    #[test]
    fn circle_bound_constant() {
        let g = arclength_resample(&BoundaryCurve::circle(1.0, 0.0).unwrap(), 128).unwrap();
        let a = bound_constant_a(&g, 0.25).unwrap();
        // the metric term dominates and is increasing in t
        let expect = 1.1 * (1.0 / 0.75f64.powi(2) - 1.0) / 0.25;
        assert!((a - expect).abs() < 1e-12 * expect, "{a} vs {expect}");
        assert!(bound_constant_a(&g, 0.125).unwrap() <= a);
        assert!(bound_constant_a(&g, 1.0).is_err());
    }

    #[test]
    fn flat_bound_vanishes() {
        let z = vec![0.0; 16];
        assert_eq!(bound_constant_from_samples(&z, &z, &z, 0.3), 0.0);
    }

    #[test]
    fn variants_parse() {
        for v in [StripVariant::P, StripVariant::PPlus, StripVariant::PMinus] {
            assert_eq!(v.to_string().parse::<StripVariant>().unwrap(), v);
        }
        assert!("q".parse::<StripVariant>().is_err());
    }
}
