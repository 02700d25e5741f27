use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("number of variables must be at least 1")]
    ZeroVariables,
    #[error("vector field component {0} has a nonzero constant term")]
    NonzeroConstantTerm(usize),
    #[error("vector field degree {have} is too small: need at least {need}")]
    InsufficientDegree { have: usize, need: usize },
    #[error("cannot project a jet of order {order} to order {target}")]
    ProjectionOrder { order: usize, target: usize },
    #[error("jet is not in normal coordinates")]
    NotNormal,
    #[error("{0}")]
    InvalidArgument(String),
    #[error("malformed jet document: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
