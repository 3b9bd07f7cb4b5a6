use thiserror::Error;

/// Errors raised by the library. Numeric witnesses are carried as `f64`
/// regardless of the scalar type in use.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("descriptor syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("parameter `{name}` = {value} out of range: {expected}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error("weights do not form a simplex: {0}")]
    Weights(String),
    #[error("empty operand list for `{0}`")]
    EmptyOperands(&'static str),
    #[error("operand count mismatch: {0}")]
    Arity(String),
    #[error("argument {x} outside the domain [0, inf)")]
    Domain { x: f64 },
    #[error("density diverges at the origin")]
    DensityDivergesAtOrigin,
    #[error("density evaluation failed at x = {x}")]
    DensityFailure { x: f64 },
    #[error("invalid grid: {0}")]
    Grid(String),
    #[error("non-finite integrand value at v = {at}")]
    NonFiniteIntegrand { at: f64 },
    #[error("quadrature did not reach tolerance: estimate {estimate}, error {error}")]
    QuadratureInconclusive { estimate: f64, error: f64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("not fixed: value at b = {b} is {value}")]
    NotFixed { b: f64, value: f64 },
    #[error("asymptotic slope is zero; function is outside the positive-slope class")]
    ZeroSlope,
    #[error("asymptotic slope estimate did not stabilise")]
    SlopeInconclusive,
    #[error("function is not above the identity at t = {t}")]
    NotAboveIdentity { t: f64 },
    #[error("measure space: {0}")]
    Space(String),
    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
