use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("operator `{0}` has no declared parity")]
    UndeclaredParity(String),
    #[error("operator `{0}` has no bounded degree shift")]
    UnboundedShift(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("FischerSingular: k = 1 − M/2 (k = {k}, M = {big_m})")]
    FischerSingular { k: usize, big_m: i64 },
    #[error("WindowViolation: {0}")]
    WindowViolation(String),
    #[error("no Cartan configuration for {0}")]
    NoCartanConfig(String),
    #[error("rank unstable under cut increase: {lower} at cut {cut}, {upper} at cut {next}")]
    RankUnstable {
        cut: usize,
        next: usize,
        lower: usize,
        upper: usize,
    },
    #[error("syntax error at position {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("expected a pure polynomial, found a spinor factor {0}")]
    NotPolynomial(String),
    #[error("unsupported configuration: {0}")]
    UnsupportedConfig(String),
    #[error("parse error: {0}")]
    Parse(String),
}
