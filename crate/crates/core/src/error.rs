use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Two objects that must live in the same group, ring or field do not.
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    /// A relation or image is not homogeneous for the declared grading.
    #[error("not homogeneous: {what}; components by degree: {components}")]
    NotHomogeneous { what: String, components: String },

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("point is not a fixed point: {0}")]
    NotFixedPoint(String),

    #[error("unsupported construct: {0}")]
    Unsupported(String),

    /// The Diophantine solver exceeded its configured step cap.
    #[error("resource cap exceeded after {steps} frontier expansions")]
    ResourceCap { steps: u64 },

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. }
            | Error::Invalid(_)
            | Error::InvalidPoint(_)
            | Error::AmbientMismatch(_)
            | Error::NotFixedPoint(_) => 2,
            Error::NotHomogeneous { .. } | Error::Unsupported(_) => 3,
            Error::ResourceCap { .. } => 4,
            Error::Internal(_) => 70,
        }
    }
}
