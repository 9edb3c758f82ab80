use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the engine can report.
///
/// The CLI maps these onto process exit codes with [`Error::exit_code`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("matrix is not positive definite (smallest eigenvalue estimate {min_eigenvalue:e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("closed-form square root denominator S1*S2 - S3 = {value:e} is degenerate")]
    DegenerateDenominator { value: f64 },

    #[error("matrix is singular (det = {det:e})")]
    SingularMatrix { det: f64 },

    #[error("vielbein is singular or not upper triangular with positive diagonal: {0}")]
    SingularVielbein(String),

    #[error("invalid Lorentz frame: {0}")]
    InvalidFrame(String),

    #[error("mean metric symmetrization failed: residual {residual:e} exceeds {tolerance:e}")]
    SymmetrizationFailed { residual: f64, tolerance: f64 },

    #[error("invalid ansatz: {0}")]
    InvalidAnsatz(String),

    #[error("syntax error at byte {offset}: expected {}, found {found}", expected.join(" or "))]
    Syntax { offset: usize, expected: Vec<String>, found: String },

    #[error("unknown symbol `{name}` at byte {offset}")]
    UnknownSymbol { name: String, offset: usize },

    #[error("domain error in {func}: argument {value}")]
    Domain { func: String, value: f64 },

    #[error("stencil needs {needed} points along axis {axis}, grid has {available}")]
    InsufficientGhost { axis: usize, needed: usize, available: usize },

    #[error("config error at `{key}`: {reason}")]
    Config { key: String, reason: String },

    #[error("point {point:?} is outside the grid {shape:?}")]
    PointOffGrid { point: [usize; 3], shape: [usize; 3] },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("snapshot format error: {0}")]
    Format(String),

    #[error("snapshot version {found} does not match engine version {expected}")]
    VersionMismatch { found: u32, expected: u32 },

    #[error("check `{check}` failed at grid point {index:?} (coordinates {coords:?}): {source}")]
    CheckFailed {
        check: String,
        index: [usize; 3],
        coords: [f64; 3],
        #[source]
        source: Box<Error>,
    },

    #[error("check `{check}` failed: {detail}")]
    ValidationFailed { check: String, detail: String },
}

impl Error {
    pub fn config(key: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Config { key: key.into(), reason: reason.into() }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// Process exit code: 2 config, 3 failed check, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. }
            | Error::Syntax { .. }
            | Error::UnknownSymbol { .. }
            | Error::PointOffGrid { .. }
            | Error::InsufficientGhost { .. } => 2,
            Error::Io { .. } | Error::Format(_) | Error::VersionMismatch { .. } => 4,
            _ => 3,
        }
    }
}
