use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a unit: {0}")]
    NotAUnit(String),
    #[error("no quotient within the candidate support after {rounds} growth round(s)")]
    NoSolutionInSupport { rounds: usize },
    #[error("quotient exists over the rationals but is not integral")]
    NonIntegerSolution,
    #[error("index {0} is not available in this trajectory")]
    IndexUnavailable(i64),
    #[error("unsupported case: {0}")]
    UnsupportedCase(String),
    #[error("path enumeration exceeded the budget of {0} paths")]
    BudgetExceeded(u64),
    #[error("commutative division is not exact: {0}")]
    DivisionNotExact(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
