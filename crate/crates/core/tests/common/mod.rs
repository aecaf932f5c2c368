//! Geometries shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

pub mod oracles;

use std::f64::consts::PI;

use robin_spectra::geometry::*;

pub struct Setup {
    pub geom: SampledGeometry,
    pub arc: RobinArc,
    pub info: CurvatureMaxInfo,
}

fn setup(curve: BoundaryCurve, ell: impl FnOnce(&SampledGeometry) -> f64) -> Setup {
    let geom = arclength_resample(&curve, 1024).unwrap();
    let arc = RobinArc::new(ell(&geom), geom.length).unwrap();
    let info = max_curvature_on_arc(&geom, arc).unwrap();
    Setup { geom, arc, info }
}

/// Unit circle with the Robin condition on a half circle.
pub fn circle() -> Setup {
    setup(BoundaryCurve::circle(1.0, 0.0).unwrap(), |_| PI)
}

/// Raw angle of the first-quadrant point of the ellipse where d²k/ds² = 0.
pub fn inflection_angle(a: f64, b: f64) -> f64 {
    let c = a * a - b * b;
    let u = (-(2.0 * b * b + c) + ((2.0 * b * b + c).powi(2) + 24.0 * c * c).sqrt()) / (4.0 * c);
    0.5 * u.acos()
}

/// 2:1 ellipse whose Robin arc starts where k″ = 0 and k decreases, so the
/// maximum is a first-order endpoint maximum.
pub fn endpoint_ellipse() -> Setup {
    setup(BoundaryCurve::ellipse(2.0, 1.0, inflection_angle(2.0, 1.0)).unwrap(), |g| 0.2 * g.length)
}

/// 2:1 ellipse whose Robin arc is centred on the vertex of largest curvature.
pub fn interior_ellipse() -> Setup {
    let half = 0.6;
    let curve = BoundaryCurve::ellipse(2.0, 1.0, -half).unwrap();
    setup(curve, |g| 2.0 * g.curve().arclength_at(half))
}
