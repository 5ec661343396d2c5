//! Exact rational bidiagonal representations of the meta q-Hahn algebra, their
//! six (generalized) eigenbases, and the q-Hahn polynomials and biorthogonal
//! rational functions that appear as overlaps between those bases.

pub mod actions;
pub mod bases;
pub mod error;
pub mod linalg;
pub mod qcore;
pub mod report;
pub mod repr;
pub mod specfun;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use linalg::{QMatrix, QVector};
pub use qcore::{ParamContext, QExponent, QScalar};
pub use report::{Check, CheckBuilder, Report, Status};
