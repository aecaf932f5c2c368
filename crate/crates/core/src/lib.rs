//! Eigenvalues of the planar Laplacian with a strongly attractive Robin
//! condition on a boundary arc and Neumann condition elsewhere.
//!
//! The crate is organised bottom-up:
//!
//! * [`geometry`]: smooth closed boundary curves, arclength resampling and
//!   curvature data on the Robin arc.
//! * [`spectra1d`]: finite-element assembly of symmetric quadratic forms and
//!   a deterministic lowest-eigenpair solver shared by every operator.
//! * [`model_operators`]: the Robin–Dirichlet slab, power wells on the
//!   half-line and the line, and Airy zeros.
//! * [`effective`]: the two one-dimensional effective operators living on the
//!   arc and on the whole boundary circle.
//! * [`strip2d`]: the boundary strip in tubular coordinates and its
//!   bracketing companions, discretised on tensor-product meshes.
//! * [`harness`]: predictions, sweeps over the Robin parameter, fits and
//!   report files.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod effective;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod model_operators;
pub mod spectra1d;
pub mod strip2d;

pub use error::{Error, Result};
