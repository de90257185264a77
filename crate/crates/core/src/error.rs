use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid prime {p}: {reason}")]
    InvalidPrime { p: u32, reason: &'static str },
    #[error("characteristic {p} is too small for degree {d} (need p > 5d and p not dividing d)")]
    CharacteristicTooSmall { p: u32, d: usize },
    #[error("undefined gcd: both forms are zero")]
    UndefinedGcd,
    #[error("sampling failure: {attempts} consecutive rejections at degree {d}")]
    SamplingFailure { d: usize, attempts: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("curve does not span a hyperplane (span dimension {0})")]
    NotHyperplaneCurve(usize),
    #[error("presentation invalid: curve is not a smooth model")]
    PresentationInvalid,
    #[error("curve not on F")]
    CurveNotOnForm,
    #[error("F is singular at some point of the curve")]
    NotSmoothAlong,
    #[error("irregular within window 1..={window}")]
    IrregularWithinWindow { window: usize },
    #[error("formula not established for {0}")]
    FormulaOutOfRange(String),
    #[error("internal consistency violated: {0}")]
    Inconsistent(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Findings that contradict an expected mathematical identity, as opposed
    /// to bad input or configuration.
    pub fn is_finding(&self) -> bool {
        matches!(
            self,
            Error::Inconsistent(_) | Error::IrregularWithinWindow { .. } | Error::SamplingFailure { .. }
        )
    }
}
