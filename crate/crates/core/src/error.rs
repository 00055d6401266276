use thiserror::Error;

/// Errors raised by the algebra layers.
///
/// `Malformed*` variants indicate ill-formed input data (wrong shapes,
/// mismatched base structures, invalid morphisms). `Domain` indicates a
/// precondition violation of an otherwise well-typed operation, such as
/// asking for the heart normal form of a complex that is not in the heart.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("ext datum mismatch: {0}")]
    DatumMismatch(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("domain error: {0}")]
    Domain(String),
}

impl Error {
    /// True for precondition violations, false for malformed-input errors.
    pub fn is_domain(&self) -> bool {
        matches!(self, Error::Domain(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
