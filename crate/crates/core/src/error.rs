use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate curve: {0}")]
    DegenerateCurve(String),
    #[error("failed to converge: {0}")]
    ConvergenceFailure(String),
    #[error("ambiguous curvature maximum: {0}")]
    AmbiguousMaximum(String),
    #[error("curvature maximum of unsupported order: {0}")]
    DegenerateMaximum(String),
    #[error("factorization failed: {0}")]
    FactorizationFailure(String),
    #[error("eigensolver did not converge: {0}")]
    NoConvergence(String),
    #[error("bad grid: {0}")]
    BadGrid(String),
    #[error("parameters out of regime: {0}")]
    OutOfRegime(String),
    #[error("point outside the tubular neighbourhood: {0}")]
    OutOfTube(String),
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),
    #[error("power-law fit failed: {0}")]
    FitFailure(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
