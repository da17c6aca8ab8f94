use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse {input:?} as a rational at position {position}: {reason}")]
    ParseRational {
        input: String,
        position: usize,
        reason: &'static str,
    },

    #[error("coefficient index {index} outside series of order {order}")]
    OutOfRange { index: usize, order: usize },

    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,

    #[error("division needs valuation(numerator) >= {needed}, found {found}")]
    Valuation { needed: usize, found: usize },

    #[error("leading coefficient of the divisor is not invertible")]
    NotInvertible,

    #[error("divisor series vanishes through its truncation order")]
    ZeroDivisor,

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParam(msg.into())
    }
}
