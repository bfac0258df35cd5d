use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeaError {
    #[error("size {n} is too small: need n >= {min}")]
    SizeTooSmall { n: usize, min: usize },

    #[error("size mismatch: expected a permutation of size {expected}, got size {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error("not a permutation: {0}")]
    NotAPermutation(String),
}

pub type Result<T, E = MeaError> = std::result::Result<T, E>;
