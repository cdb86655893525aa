use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unbalanced parenthesis word: {0}")]
    Unbalanced(String),
    #[error("a-sequence violates a_i <= 2i-1 or is not increasing: {0}")]
    SequenceBound(String),
    #[error("crossing arches: {0}")]
    Crossing(String),
    #[error("overlapping or incomplete arches: {0}")]
    Overlapping(String),
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("size {size} exceeds the practical bound {bound} for {what}")]
    Resource { what: &'static str, size: usize, bound: usize },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err($crate::Error::Invariant(format!($($arg)*)));
        }
    };
}
pub(crate) use ensure;
