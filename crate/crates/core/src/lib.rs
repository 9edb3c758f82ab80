//! Numerical 3+1 and covariant BSSN decomposition of bimetric relativity ansätze.

// index loops read more naturally than iterator chains in tensor code, and
// `!(x <= tol)` is used on purpose so that NaN fails every check
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod checks;
pub mod config;
pub mod error;
pub mod export;
pub mod expr;
pub mod geometry;
pub mod lorentz;
pub mod mat3;
pub mod mean;
pub mod pipeline;
pub mod report;
pub mod sector;
pub mod tolerance;

pub use error::{Error, Result};
pub use mat3::{Mat3, SymMat3, Vec3};
pub use tolerance::ToleranceProfile;
