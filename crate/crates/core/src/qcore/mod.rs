//! Exact arithmetic kernel: rationals, the q-power lattice, brackets,
//! Pochhammer symbols and terminating basic hypergeometric sums.

mod context;
mod exponent;
pub mod identities;
mod series;

pub use context::ParamContext;
pub use exponent::{int_pow, rat, QExponent, QLattice};
pub use identities::{pochhammer_identity_suite, sears_and_32_transform_suite, SweepRanges};
pub use series::{hyper_terminating, phi21_terminating, phi32_terminating, q_chu_vandermonde, Terminator};

use num::traits::Zero;

use crate::error::{Error, Result};

pub type QScalar = num::BigRational;

/// Division that reports a zero denominator instead of panicking.
pub fn checked_div(num: QScalar, den: QScalar, what: &str) -> Result<QScalar> {
    if den.is_zero() {
        Err(Error::DivisionByZero(what.to_string()))
    } else {
        Ok(num / den)
    }
}
