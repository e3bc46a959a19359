use thiserror::Error;

/// Errors raised by the toolkit. Degenerate or invalid parameters are not
/// errors for `classify`; they only become errors where an operation needs a
/// non-degenerate sequence.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameters (A, B) = ({a}, {b}) are invalid: A·B·(A²−4B) = 0")]
    InvalidParams { a: i64, b: i64 },

    #[error("parameters (A, B) = ({a}, {b}) define a degenerate sequence")]
    Degenerate { a: i64, b: i64 },

    #[error("parameters (A, B) = ({a}, {b}) are not in the {expected} case")]
    WrongCase {
        a: i64,
        b: i64,
        expected: &'static str,
    },

    #[error("{name} = {value} is out of range: {reason}")]
    OutOfRange {
        name: &'static str,
        value: String,
        reason: String,
    },

    #[error("seed ({u}, {v}) does not satisfy x² − 5y² = {t}")]
    NotOnConic { u: i64, v: i64, t: i64 },

    #[error("regression needs at least two distinct sample points with non-zero counts")]
    DegenerateRegression,

    #[error("cannot parse threshold {0:?}")]
    BadThreshold(String),

    #[error("tail certification failed for (A, B) = ({a}, {b}): {reason}")]
    Uncertified { a: i64, b: i64, reason: String },
}

impl Error {
    pub(crate) fn out_of_range(
        name: &'static str,
        value: impl ToString,
        reason: impl Into<String>,
    ) -> Self {
        Error::OutOfRange {
            name,
            value: value.to_string(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
