use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,

    #[error("coefficient index {index} exceeds series order {order}")]
    CoefficientOutOfRange { index: usize, order: usize },

    #[error("series coefficient depends on t")]
    CoefficientDependsOnT,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown check `{name}`; valid checks: {}", valid.join(", "))]
    UnknownCheck { name: String, valid: Vec<String> },

    #[error("nonzero imaginary residue in {0}")]
    ImaginaryResidue(String),

    #[error("expected an integer value, got {0}")]
    NonInteger(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("malformed value `{0}`")]
    Parse(String),
}
