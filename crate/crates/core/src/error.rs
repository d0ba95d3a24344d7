use std::fmt;

/// Errors surfaced by the library.
///
/// Violated caller preconditions and unsupported inputs are reported as
/// dedicated variants; `Invariant` marks a broken internal consistency check
/// and always signals a bug rather than bad input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A point count outside the supported range 0..=8.
    PointCountOutOfRange { r: usize },
    /// The operation is not defined at this point count.
    Unsupported { operation: &'static str, r: usize },
    /// A reflection index outside 0..r (or the degree-raising reflection
    /// requested with fewer than three points).
    ReflectionIndex { index: usize, r: usize },
    /// A documented precondition of the operation does not hold.
    Precondition {
        operation: &'static str,
        reason: String,
    },
    /// An internal invariant failed; the result would be unreliable.
    Invariant {
        operation: &'static str,
        reason: String,
    },
    /// Malformed textual input.
    Parse { input: String, reason: String },
    /// An unusable oracle configuration.
    OracleConfig { reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::PointCountOutOfRange { r } => {
                write!(f, "point count {r} out of range (supported: 0..=8)")
            }
            Error::Unsupported { operation, r } => {
                write!(f, "{operation} is not supported at r = {r}")
            }
            Error::ReflectionIndex { index, r } => {
                write!(f, "reflection index {index} invalid for r = {r}")
            }
            Error::Precondition { operation, reason } => {
                write!(f, "{operation}: precondition violated: {reason}")
            }
            Error::Invariant { operation, reason } => {
                write!(f, "{operation}: internal invariant violated: {reason}")
            }
            Error::Parse { input, reason } => {
                write!(f, "cannot parse {input:?}: {reason}")
            }
            Error::OracleConfig { reason } => {
                write!(f, "oracle configuration: {reason}")
            }
        }
    }
}

impl std::error::Error for Error {}

impl Error {
    /// True for errors caused by the input rather than by a library bug.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Invariant { .. })
    }
}

/// Returns an `Invariant` error unless `cond` holds.
macro_rules! invariant {
    ($cond:expr, $op:expr, $($arg:tt)*) => {
        if !$cond {
            return Err($crate::error::Error::Invariant {
                operation: $op,
                reason: format!($($arg)*),
            });
        }
    };
}

pub(crate) use invariant;
