use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("denominator parameter {0} is a non-positive integer reached by the series")]
    DenominatorPole(Complex64),

    #[error("{what} did not converge after {terms} terms")]
    NonConvergent { what: &'static str, terms: usize },

    #[error("{what}: series lost {digits:.1} significant digits to cancellation")]
    PrecisionLoss { what: &'static str, digits: f64 },

    #[error("{what}: result is not representable in double precision")]
    Overflow { what: &'static str },

    #[error("truncation at N = {truncation} leaves a tail of norm² {tail:.3e}")]
    TruncationInsufficient { truncation: usize, tail: f64 },

    #[error("states belong to different models or phase parameters")]
    ModelMismatch,

    #[error("squeezing parameter λ = {0} is degenerate (no normalizable eigenstate)")]
    LambdaDegenerate(Complex64),

    #[error("λ = {0} is outside the analytic domain Re λ > 0")]
    OutsideAnalyticDomain(Complex64),

    #[error("coefficients do not decay by N = {truncation} (tail ratio {tail:.3e}); state is not normalizable")]
    NotNormalizable { truncation: usize, tail: f64 },

    #[error("creation operator spills {spill:.3e} of the norm past the truncation window")]
    SpillTooLarge { spill: f64 },

    #[error("quadrature did not converge (last change {change:.3e})")]
    QuadratureNonConvergent { change: f64 },

    #[error("argument outside the domain: {0}")]
    DomainViolation(String),

    #[error("operation not available for the {0} spectrum")]
    UnsupportedModel(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Coarse classification used to map errors onto process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Config,
    Numeric,
    Domain,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::NonConvergent { .. }
            | Error::PrecisionLoss { .. }
            | Error::Overflow { .. }
            | Error::TruncationInsufficient { .. }
            | Error::NotNormalizable { .. }
            | Error::SpillTooLarge { .. }
            | Error::QuadratureNonConvergent { .. } => ErrorClass::Numeric,
            Error::DenominatorPole(_)
            | Error::LambdaDegenerate(_)
            | Error::OutsideAnalyticDomain(_)
            | Error::DomainViolation(_) => ErrorClass::Domain,
            Error::ModelMismatch | Error::UnsupportedModel(_) | Error::InvalidParameter(_) => ErrorClass::Config,
        }
    }
}
