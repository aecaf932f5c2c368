//! Leading-order eigenvalue predictions in the three curvature regimes.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::geometry::{CurvatureMaxInfo, LocationClass};
use crate::model_operators::{airy_zeros, power_well_spectrum};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Constant,
    InteriorMax,
    EndpointMax,
}

impl Regime {
    pub fn of(info: &CurvatureMaxInfo) -> Self {
        match info.location_class {
            LocationClass::Constant => Self::Constant,
            LocationClass::Interior => Self::InteriorMax,
            LocationClass::Endpoint0 | LocationClass::EndpointEll => Self::EndpointMax,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Constant => "constant",
            Self::InteriorMax => "interior_max",
            Self::EndpointMax => "endpoint_max",
        }
    }
}

/// n-th eigenvalue (1-based) of the model operator matching the maximum:
/// −f″ + t^m f on the half-line (endpoint) or on the line (interior).
pub fn model_eigenvalue(regime: Regime, m: u32, n: usize, allow_any_m: bool) -> Result<f64> {
    let nf = n as f64;
    match (regime, m) {
        (Regime::EndpointMax, 1) => Ok(airy_zeros(n)[n - 1]),
        (Regime::EndpointMax, 2) => Ok(4.0 * nf - 1.0),
        (Regime::InteriorMax, 2) => Ok(2.0 * nf - 1.0),
        (Regime::Constant, _) => Err(Error::InvalidInput("no model operator in the constant regime".into())),
        (Regime::EndpointMax, _) if allow_any_m => Ok(power_well_spectrum(m, 1.0, true, n)?.eigenvalues[n - 1]),
        (Regime::InteriorMax, _) if allow_any_m && m.is_multiple_of(2) => {
            Ok(power_well_spectrum(m, 1.0, false, n)?.eigenvalues[n - 1])
        }
        _ => Err(Error::UnsupportedRegime(format!("{} with m = {m}", regime.as_str()))),
    }
}

/// Leading-order prediction for E_n with n ≥ 1.
pub fn predict(info: &CurvatureMaxInfo, ell: f64, alpha: f64, n: usize, allow_any_m: bool) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidInput("eigenvalue index starts at 1".into()));
    }
    let k = info.k_star;
    let base = -alpha * alpha - k * alpha;
    let regime = Regime::of(info);
    match regime {
        Regime::Constant => {
            let nf = n as f64;
            Ok(base - 0.5 * k * k + PI * PI * nf * nf / (ell * ell))
        }
        _ => {
            let m = info.m;
            let q = 2.0 / (m as f64 + 2.0);
            let e = model_eigenvalue(regime, m, n, allow_any_m)?;
            Ok(base + info.taylor_coefficient().powf(q) * e * alpha.powf(q))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn info(class: LocationClass, m: u32, dm: f64) -> CurvatureMaxInfo {
        CurvatureMaxInfo { k_star: 1.0, s_star: 0.0, location_class: class, m, dm }
    }

    #[test]
    fn constant_circle_value() {
        let e = predict(&info(LocationClass::Constant, 0, 0.0), PI, 100.0, 1, false).unwrap();
        assert!((e + 10099.5).abs() < 1e-9);
    }

    #[test]
    fn endpoint_terms() {
        let a1 = airy_zeros(1)[0];
        let e = predict(&info(LocationClass::Endpoint0, 1, -3.0), 1.0, 8.0, 1, false).unwrap();
        assert!((e - (-64.0 - 8.0 + a1 * 3f64.powf(2.0 / 3.0) * 4.0)).abs() < 1e-12);
        let e = predict(&info(LocationClass::EndpointEll, 2, -8.0), 1.0, 4.0, 2, false).unwrap();
        assert!((e - (-16.0 - 4.0 + 7.0 * 2.0 * 2.0)).abs() < 1e-12);
        let e = predict(&info(LocationClass::Interior, 2, -2.0), 1.0, 9.0, 3, false).unwrap();
        assert!((e - (-81.0 - 9.0 + 5.0 * 3.0)).abs() < 1e-12);
    }

    #[test]
    fn unvalidated_orders() {
        let i = info(LocationClass::Endpoint0, 3, -6.0);
        assert!(matches!(predict(&i, 1.0, 10.0, 1, false), Err(Error::UnsupportedRegime(_))));
        assert!(predict(&i, 1.0, 10.0, 1, true).is_ok());
        let j = info(LocationClass::Interior, 4, -24.0);
        assert!(matches!(predict(&j, 1.0, 10.0, 1, false), Err(Error::UnsupportedRegime(_))));
    }
}
