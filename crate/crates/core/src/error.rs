use thiserror::Error;

/// Errors produced by the generalized-determinant routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Shapes or index ranges do not satisfy an operation's domain.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// An oracle was asked to work beyond its fixed size limit.
    #[error("size error: {what} is {got}, limit is {limit}")]
    Size { what: &'static str, got: usize, limit: usize },

    /// The number of maximal minors exceeds the configured cap.
    #[error("minor cap exceeded: C({rows},{cols}) = {count} > {cap}")]
    CapExceeded { rows: usize, cols: usize, count: u128, cap: u128 },

    /// NaN or infinite input entries.
    #[error("numeric input error: non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    /// A computed quantity left its mathematically admissible range.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// The direction matrix of a directional determinant spans no n-volume.
    #[error("degenerate direction: detl(B) = 0")]
    DegenerateDirection,

    /// The system has no solution (vector determinants are not proportional).
    #[error("inconsistent system: column {column}, blade {blade}")]
    Inconsistent { column: usize, blade: String },

    /// The coefficient matrix has rank below its column count.
    #[error("rank-deficient coefficient matrix")]
    RankDeficient,

    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn dim<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Dimension(msg.into()))
}
