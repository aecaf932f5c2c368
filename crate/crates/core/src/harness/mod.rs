//! Sweeps over α, closed-form predictions, exponent fits and report files.

mod config;
mod fit;
mod predict;
mod report;
mod sweep;

pub use config::{GeometrySpec, GridSpec, ProblemSpec};
pub use fit::{fit_exponent, PowerLawFit};
pub use predict::{model_eigenvalue, predict, Regime};
pub use report::{
    AsymptoticReport, BoundRecord, ExponentFit, ReportMetadata, ReportRow, RowFailure, SandwichViolation, CSV_HEADER,
};
pub use sweep::{run_sweep, sandwich_slack};
