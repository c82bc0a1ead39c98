use thiserror::Error;

/// Errors raised by the numeric, polynomial, set and engine layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("valuation of zero")]
    ValuationOfZero,
    #[error("zero input: {0}")]
    ZeroInput(&'static str),
    #[error("division by zero")]
    DivisionByZero,
    #[error("iteration degree cap exceeded (degree {degree} > cap {cap})")]
    DegreeCapExceeded { degree: u128, cap: u64 },
    #[error("budget exhausted, orbit not resolved ({0})")]
    BudgetExhausted(String),
    #[error("saturation bound exceeded: {0}")]
    SaturationBound(String),
    #[error("synthesis verification failed at ({m}, {n}): formula says {expected}")]
    SynthesisFailed { m: u64, n: u64, expected: bool },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

impl Error {
    /// True for the errors the command line maps to exit status 3.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::DegreeCapExceeded { .. } | Error::BudgetExhausted(_) | Error::SaturationBound(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
