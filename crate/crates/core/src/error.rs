//! Error type shared by all modules of the crate.

use std::fmt;

/// Everything that can go wrong while building geometry or series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Fewer than three distinct hull vertices: the input does not span a
    /// two-dimensional polygon.
    DegenerateHull,
    /// A primitive direction or an inverse linear form was requested for the
    /// zero vector.
    ZeroVector,
    /// A decomposition step was requested for a cone that is already
    /// unimodular.
    NotNeeded,
    /// An operation requiring a unimodular, positively oriented cone was
    /// called with something else.
    NotUnimodular,
    /// A series coefficient outside the truncation order was requested.
    OrderExceeded,
    /// A differential operator was applied to a polynomial of higher degree
    /// than the series order supports.
    OrderTooLow,
    /// A quasi-polynomial coefficient index beyond the degree bound.
    IndexOutOfRange,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DegenerateHull => write!(f, "points do not span a two-dimensional polygon"),
            Error::ZeroVector => write!(f, "the zero vector has no direction"),
            Error::NotNeeded => write!(f, "cone is already unimodular"),
            Error::NotUnimodular => {
                write!(f, "cone is not unimodular with positive orientation")
            }
            Error::OrderExceeded => write!(f, "coefficient index exceeds truncation order"),
            Error::OrderTooLow => write!(f, "series order too low for the requested operation"),
            Error::IndexOutOfRange => write!(f, "coefficient index out of range"),
        }
    }
}

impl std::error::Error for Error {}
