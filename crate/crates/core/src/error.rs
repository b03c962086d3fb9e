use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("denominator vanishes at the evaluation point")]
    PoleAtEvaluationPoint,
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("variable index {index} out of range for dimension {dim}")]
    InvalidVariable { index: usize, dim: usize },
    #[error("operand uses the extended algebra (x0/e0); use the extended Dirac operator instead")]
    UsesExtendedAlgebra,
    #[error("polynomial is not homogeneous of degree {expected}")]
    NotHomogeneous { expected: usize },
    #[error("linear system is singular")]
    SingularSystem,
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
