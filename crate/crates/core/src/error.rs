use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("nonconvex parameters: {0}")]
    NonConvex(String),

    #[error("insufficient modes: projection residual {residual:.3e} exceeds {limit:.1e}")]
    InsufficientModes { residual: f64, limit: f64 },

    #[error("gap violation at index {index}: gap {gap} outside ({lo}, {hi})")]
    GapViolation { index: usize, gap: f64, lo: f64, hi: f64 },

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("invalid rotation number: {0}")]
    InvalidRotation(String),

    #[error("minimization did not converge (residual {residual:.3e})")]
    NonConvergence { residual: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}
