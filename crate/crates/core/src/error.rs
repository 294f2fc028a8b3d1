use thiserror::Error;

/// Errors raised by the library.
///
/// Precondition failures name the hypothesis that was violated so the CLI can
/// surface it verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero has no inverse")]
    ZeroInverse,

    #[error("real point lies in every slice")]
    RealPoint,

    #[error("not an imaginary unit: {0}")]
    NotUnitImaginary(String),

    #[error("imaginary units are not orthogonal (<I,J> = {0:e})")]
    NotOrthogonal(f64),

    #[error("outside ball of validity: |q| = {norm} but radius is {radius}")]
    OutsideBall { norm: f64, radius: f64 },

    #[error("zero of f: f*g vanishes here")]
    ZeroOfF,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("degree {degree} exceeds the supported maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },

    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
