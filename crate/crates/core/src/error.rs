use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exponent constant {0} is not an integer")]
    NonIntegralExponent(String),

    #[error("division by zero while evaluating {0}")]
    DivisionByZero(String),

    #[error("denominator Pochhammer vanishes at k = {k} before the series terminates at {n}")]
    DenominatorPoleBeforeTermination { k: usize, n: usize },

    #[error("numerator parameter {index} is not q^-{n}")]
    NotTerminating { index: usize, n: usize },

    #[error("invalid parameter context: {0}")]
    InvalidContext(String),

    #[error("degenerate context: {0}")]
    DegenerateContext(String),

    #[error("degenerate eigenvalues: {0}")]
    DegenerateEigenvalues(String),

    #[error("matrix dimensions differ ({0} vs {1})")]
    DimMismatch(usize, usize),

    #[error("Casimir element is not a multiple of the identity")]
    NonScalarCasimir,

    #[error("basis coefficient matrix is singular")]
    SingularBasisMatrix,
}

impl Error {
    /// Errors caused by a vanishing denominator in a closed form; these mark
    /// a non-generic parameter point rather than a wrong identity.
    pub fn is_degenerate(&self) -> bool {
        matches!(
            self,
            Error::DivisionByZero(_)
                | Error::DenominatorPoleBeforeTermination { .. }
                | Error::DegenerateContext(_)
                | Error::DegenerateEigenvalues(_)
                | Error::SingularBasisMatrix
        )
    }
}
