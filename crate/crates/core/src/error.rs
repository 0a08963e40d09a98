use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("invalid attack: {0}")]
    InvalidAttack(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("internal solver failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
