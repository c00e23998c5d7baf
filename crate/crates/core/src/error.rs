use thiserror::Error;

use crate::hall::BasisKey;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter {name}={value} outside the supported range 1..={max}")]
    ParameterRange {
        name: &'static str,
        value: usize,
        max: usize,
    },
    #[error("Hall basis for k={k}, s={s} has {t} elements, above the cap of {cap}")]
    BasisTooLarge {
        k: usize,
        s: usize,
        t: u128,
        cap: usize,
    },
    #[error("set of size {size} exceeds the cap of {cap}")]
    SetTooLarge { size: u128, cap: usize },
    #[error("elements belong to different algebras ({left} vs {right})")]
    BasisMismatch { left: BasisKey, right: BasisKey },
    #[error("operation requires {expected}, got {found}")]
    WrongBasis { expected: String, found: BasisKey },
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("set is not symmetric: {0}")]
    NotSymmetric(String),
    #[error("map has no image for a domain element")]
    UndefinedImage,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("i/o failure: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable code, surfaced by the command line front end.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ParameterRange { .. } => "parameter-range",
            Error::BasisTooLarge { .. } => "basis-cap-exceeded",
            Error::SetTooLarge { .. } => "cap-exceeded",
            Error::BasisMismatch { .. } => "basis-mismatch",
            Error::WrongBasis { .. } => "wrong-basis",
            Error::OutOfRange(_) => "out-of-range",
            Error::NotSymmetric(_) => "not-symmetric",
            Error::UndefinedImage => "undefined-image",
            Error::InvalidArgument(_) => "invalid-argument",
            Error::Io(_) => "io",
        }
    }
}
