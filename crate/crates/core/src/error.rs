use core::fmt;

use crate::partition::Partition;

/// Errors raised by the scheme computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two partitions (or a partition and a ground set) were expected to have the same size.
    SizeMismatch { expected: usize, found: usize },
    /// `n` is outside the range an operation supports.
    OutOfRange {
        what: &'static str,
        value: usize,
        max: usize,
    },
    /// An operation that needs at least one matching received none.
    EmptySet,
    /// The same matching occurs twice in a set.
    DuplicateMatching,
    /// Matchings on different ground sets were mixed.
    GroundSetMismatch { expected: usize, found: usize },
    /// Text could not be parsed.
    Parse(ParseError),
    /// `mu` does not dominate `lambda`.
    NotDominated { lambda: Partition, mu: Partition },
    /// A quantity that must be an integer is not.
    NonIntegral,
    /// A set of vertices has odd size.
    OddSubset(usize),
    /// The requested value is not a part of the partition.
    NotAPart { part: usize, lambda: Partition },
    /// A construction parameter is not supported.
    Unsupported(&'static str),
    /// An invalid permutation or matching was given.
    Invalid(&'static str),
}

/// Parse failure with a byte position into the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: &'static str,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at position {}", self.message, self.position)
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::SizeMismatch { expected, found } => {
                write!(f, "size mismatch: expected {expected}, found {found}")
            }
            Error::OutOfRange { what, value, max } => {
                write!(f, "{what} = {value} is out of range (maximum {max})")
            }
            Error::EmptySet => f.write_str("the set of matchings is empty"),
            Error::DuplicateMatching => f.write_str("duplicate matching in set"),
            Error::GroundSetMismatch { expected, found } => {
                write!(f, "matching on {found} points where {expected} points were expected")
            }
            Error::Parse(e) => write!(f, "parse error: {e}"),
            Error::NotDominated { lambda, mu } => {
                write!(f, "({mu}) does not dominate ({lambda})")
            }
            Error::NonIntegral => f.write_str("result is not an integer"),
            Error::OddSubset(k) => write!(f, "vertex subset has odd size {k}"),
            Error::NotAPart { part, lambda } => write!(f, "{part} is not a part of ({lambda})"),
            Error::Unsupported(what) => write!(f, "unsupported: {what}"),
            Error::Invalid(what) => write!(f, "invalid {what}"),
        }
    }
}

impl core::error::Error for Error {}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}

pub type Result<T> = core::result::Result<T, Error>;
