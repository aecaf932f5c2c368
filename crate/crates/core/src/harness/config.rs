//! Sweep configuration as read from JSON.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::geometry::{arclength_resample, BoundaryCurve, SampledGeometry};
use crate::{Error, Result};

/// Boundary description: a named shape or explicit Fourier coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeometrySpec {
    Shape {
        /// `circle:R` or `ellipse:a,b`
        shape: String,
        #[serde(default, rename = "phase_origin", alias = "phase")]
        phase: f64,
    },
    Fourier {
        fourier_x: Vec<(f64, f64)>,
        fourier_y: Vec<(f64, f64)>,
        #[serde(default, rename = "phase_origin", alias = "phase")]
        phase: f64,
    },
}

impl GeometrySpec {
    pub fn curve(&self) -> Result<BoundaryCurve> {
        match self {
            Self::Shape { shape, phase } => BoundaryCurve::from_shape(shape, *phase),
            Self::Fourier { fourier_x, fourier_y, phase } => {
                BoundaryCurve::from_fourier(fourier_x.clone(), fourier_y.clone(), *phase)
            }
        }
    }

    pub fn sample(&self, n_samples: usize) -> Result<SampledGeometry> {
        arclength_resample(&self.curve()?, n_samples)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    /// Lower bound on s-nodes of the strip mesh.
    #[serde(default = "default_n_s")]
    pub n_s: usize,
    /// Lower bound on t-nodes of the strip mesh.
    #[serde(default = "default_n_t")]
    pub n_t: usize,
    /// Lower bound on nodes of the effective-operator meshes.
    #[serde(default = "default_n_1d")]
    pub n_1d: usize,
}

fn default_n_s() -> usize {
    64
}
fn default_n_t() -> usize {
    32
}
fn default_n_1d() -> usize {
    512
}
fn default_sigma() -> f64 {
    0.5
}
fn default_rho() -> f64 {
    0.25
}
fn default_samples() -> usize {
    1024
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { n_s: default_n_s(), n_t: default_n_t(), n_1d: default_n_1d() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub geometry: GeometrySpec,
    pub ell: f64,
    pub alpha_grid: Vec<f64>,
    #[serde(default = "default_sigma")]
    pub sigma: f64,
    #[serde(default = "default_rho")]
    pub rho: f64,
    pub n_max: usize,
    #[serde(default)]
    pub grids: GridSpec,
    /// Arclength samples used for curvature data.
    #[serde(default = "default_samples")]
    pub n_samples: usize,
    /// Accept curvature-maximum orders beyond the validated ones.
    #[serde(default)]
    pub allow_any_m: bool,
}

impl ProblemSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidInput(m));
        if self.alpha_grid.len() < 3 {
            return bad(format!("alpha_grid needs at least 3 values, got {}", self.alpha_grid.len()));
        }
        if self.alpha_grid.iter().any(|a| !(a.is_finite() && *a > 0.0)) {
            return bad("alpha_grid values must be positive and finite".into());
        }
        if self.alpha_grid.windows(2).any(|w| w[1] <= w[0]) {
            return bad("alpha_grid must be strictly ascending".into());
        }
        if self.n_max < 1 {
            return bad("n_max must be at least 1".into());
        }
        if !(self.sigma > 0.0 && self.sigma < 1.0) {
            return bad(format!("sigma = {} outside (0, 1)", self.sigma));
        }
        if !(self.rho > 0.0 && self.rho < 1.0) {
            return bad(format!("rho = {} outside (0, 1)", self.rho));
        }
        if !(self.ell > 0.0 && self.ell.is_finite()) {
            return bad(format!("ell = {} must be positive", self.ell));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CIRCLE: &str = r#"{
        "geometry": {"shape": "circle:1"},
        "ell": 3.141592653589793,
        "alpha_grid": [20, 40, 80],
        "n_max": 2,
        "grids": {"n_s": 64, "n_t": 32, "n_1d": 512}
    }"#;

    #[test]
    fn parses_shape_and_defaults() {
        let s = ProblemSpec::from_json(CIRCLE).unwrap();
        assert_eq!(s.sigma, 0.5);
        assert_eq!(s.rho, 0.25);
        assert!(matches!(s.geometry, GeometrySpec::Shape { .. }));
        assert!((s.geometry.sample(256).unwrap().length - 2.0 * std::f64::consts::PI).abs() < 1e-10);
    }

    #[test]
    fn parses_fourier() {
        let text = r#"{"geometry": {"fourier_x": [[0,0],[2,0]], "fourier_y": [[0,0],[0,1]], "phase": 0.1},
                       "ell": 1.0, "alpha_grid": [1, 2, 3], "n_max": 1}"#;
        let s = ProblemSpec::from_json(text).unwrap();
        assert!(matches!(s.geometry, GeometrySpec::Fourier { phase, .. } if phase == 0.1));
    }

    #[test]
    fn rejects_bad_grids() {
        let mut s = ProblemSpec::from_json(CIRCLE).unwrap();
        s.alpha_grid.clear();
        assert!(s.validate().is_err());
        s.alpha_grid = vec![3.0, 2.0, 4.0];
        assert!(s.validate().is_err());
        s.alpha_grid = vec![1.0, 2.0, 4.0];
        s.sigma = 1.0;
        assert!(s.validate().is_err());
    }
}
