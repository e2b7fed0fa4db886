use thiserror::Error;

/// Every failure mode of the library. Variants map one-to-one onto the
/// error kinds the CLI reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivByZero,
    #[error("context error: {0}")]
    ContextError(String),
    #[error("evaluation error: {0}")]
    EvalError(String),
    #[error("unsupported denominator: {0}")]
    UnsupportedDenominator(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("zero polynomial")]
    ZeroPoly,
    #[error("interval endpoint {0} is a root")]
    EndpointRoot(String),
    #[error("invalid interval: {0}")]
    InvalidInterval(String),
    #[error("division leaves a nonzero remainder")]
    RemainderError,
    #[error("ideal is not zero-dimensional: {0}")]
    NotZeroDimensional(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid fibration: {0}")]
    SpecError(String),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("solution not certified: {0}")]
    UncertifiedSolution(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
