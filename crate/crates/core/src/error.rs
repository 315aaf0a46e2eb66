use thiserror::Error;

/// Every failure the library can report.
///
/// Mathematical assertion failures (a map violating the equation) are not
/// errors; they are recorded as violations in an [`crate::SdReport`]. The
/// variants here cover undefined operations, precondition failures and
/// internal self-check failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    UndefinedGcd,
    #[error("roots of the zero polynomial are undefined")]
    UndefinedRoots,
    #[error("pole at {0}")]
    PoleError(String),
    #[error("elements belong to different fields: {0}")]
    FieldMismatch(String),
    #[error("invalid pair: x = y = {0}")]
    InvalidPair(String),
    #[error("injectivity violation: f({x}) = f({y}) = {value}")]
    InjectivityViolation { x: String, y: String, value: String },
    #[error("recurrence degenerate at n = {0}: f(n) is identically 1")]
    RecurrenceDegenerate(usize),
    #[error("zero term encountered at k = {0}")]
    ZeroTermEncountered(i64),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid quadratic parameter d = {0}: {1}")]
    InvalidD(String, String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
