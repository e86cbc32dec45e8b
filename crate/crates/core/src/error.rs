use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different extension fields")]
    IncompatibleExtension,
    #[error("minimal polynomial is not irreducible over the rationals")]
    ReducibleMinpoly,
    #[error("polynomial is not divisible")]
    NotDivisible,
    #[error("variable {0} does not occur in both polynomials")]
    InvalidElimination(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("singular coordinate change")]
    InvalidTransform,
    #[error("(0:1:0) lies at infinity of the plane curve")]
    NeedsCoordinateChange,
    #[error("truncation too short: {0}")]
    NeedsMoreTerms(String),
    #[error("the input polynomials do not define a curve: {0}")]
    NotACurve(String),
    #[error("no valid projection direction after {0} attempts")]
    NoValidDirection(usize),
    #[error("projection direction is not valid: {0}")]
    InvalidDirection(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
