use thiserror::Error;

/// Errors raised by the library. Budget-type failures are distinguished from
/// precondition violations so front ends can map them to separate exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("d = {0} is not square-free")]
    NotSquareFree(i64),
    #[error("d = {0} is excluded (d must not be 0 or 1)")]
    ExcludedValue(i64),
    #[error("fundamental unit search exceeded coefficient bound {0}")]
    SearchBoundExceeded(u64),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("the zero element has no valuation or factorisation")]
    ZeroElement,
    #[error("cannot factor {0}: exceeds the factoring budget")]
    FactoringBudgetExceeded(u128),
    #[error("no closed form: k = {k} does not match the parity of the character ({parity})")]
    ParityMismatch { k: u32, parity: &'static str },
    #[error("window of {0} points exceeds the 20-point limit")]
    WindowTooLarge(usize),
    #[error("element is not a unit (norm {0})")]
    NotAUnit(i128),
    #[error("matrix lies in the stabiliser; no counterexample exists")]
    IsStabilizerElement,
    #[error("search budget exhausted: {0}")]
    SearchBudgetExceeded(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for failures caused by an exhausted search or factoring budget
    /// rather than by invalid input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::SearchBoundExceeded(_)
                | Error::FactoringBudgetExceeded(_)
                | Error::SearchBudgetExceeded(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
