//! Smooth closed boundary curves, their arclength parametrization and the
//! curvature data on the Robin arc.

mod curve;
mod maximum;
mod sampled;

pub use curve::{curvature_from_jet, BoundaryCurve, Jet, EPS_REGULAR};
pub use maximum::{max_curvature_on_arc, CurvatureMaxInfo, LocationClass, RobinArc, TOL_DERIV};
pub use sampled::{arclength_resample, ArclengthCurve, FramePoint, SampledGeometry, TOL_GEO};
