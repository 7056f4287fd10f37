use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field parameter {0} is not a square-free integer greater than 1")]
    InvalidField(u64),
    #[error("cannot parse scalar literal {literal:?}: {reason}")]
    Parse { literal: String, reason: String },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("signature ({p},{q}) is not admissible: p + q must be at least 3")]
    InvalidSignature { p: usize, q: usize },
    #[error("vector is zero")]
    ZeroVector,
    #[error("vector is not null for the ambient form")]
    NotNull,
    #[error("point coincides with a removed point")]
    RemovedPoint,
    #[error("the two removed lines coincide")]
    CoincidentLines,
    #[error("matrix does not preserve the ambient form")]
    NotInGroup,
    #[error("matrix is not in the orthogonal Lie algebra")]
    NotInAlgebra,
    #[error("matrix is singular")]
    Singular,
    #[error("witness does not move the origin to the requested point")]
    BadWitness,
    #[error("invalid structure constants: {0}")]
    InvalidStructure(String),
    #[error("vector does not lie in the required span: {0}")]
    NotInSpan(String),
    #[error("closure violation: {0}")]
    ClosureViolation(String),
    #[error("the space of algebraic Weyl tensors is zero-dimensional for n = {0}")]
    EmptyWeylSpace(usize),
    #[error("tensor violates the Weyl symmetries: {0}")]
    NotWeyl(String),
    #[error("inconsistent normalization: {0}")]
    Inconsistent(String),
    #[error("internal check failed: {0}")]
    Internal(String),
    #[error("{0}")]
    Format(String),
}
