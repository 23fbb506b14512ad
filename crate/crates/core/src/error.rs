use thiserror::Error;

use crate::algebra::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid rational literal `{0}`")]
    ParseRational(String),

    #[error("affine substitution needs a nonzero scale")]
    ZeroScale,

    #[error("integration bounds are reversed: lower {lo} > upper {hi}")]
    ReversedBounds {
        lo: Box<Rational>,
        hi: Box<Rational>,
    },

    #[error("{root} is not a root: remainder {remainder}")]
    NotARoot {
        root: Box<Rational>,
        remainder: Box<Rational>,
    },

    #[error("coefficient a_{k} has degree {degree}, exceeding {k}")]
    DegreeViolation { k: usize, degree: usize },

    #[error("operator has no nonzero coefficient")]
    EmptyOperator,

    #[error("unsupported leading coefficient: {0}")]
    UnsupportedLeadingCoefficient(String),

    #[error("weighted product does not reduce to a polynomial: {0}")]
    NotPolynomialReducible(String),

    #[error("integrand is not integrable: {0}")]
    NonIntegrable(String),

    #[error("quadrature did not converge after {levels} levels (last estimate {estimate}, error {error})")]
    NoConvergence {
        levels: usize,
        estimate: f64,
        error: f64,
    },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("{0}")]
    InvalidArgument(String),
}
