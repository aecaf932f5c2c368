//! The two-dimensional strip Π_r = 𝕋 × (0, r) in tubular coordinates and
//! the Robin forms on it.

mod assembly;
mod coefficients;
mod grid;

pub use assembly::{strip_eigs, StripProblem, StripSolution};
pub use coefficients::{
    bound_constant_a, bound_constant_from_samples, metric, pointwise_bound, potential, potential_v, tube_radius,
    tubular_map, StripCoefficients, StripVariant, DEPTH_CURVATURE_LIMIT,
};
pub use grid::{StripGrid, StripMeshOptions};
