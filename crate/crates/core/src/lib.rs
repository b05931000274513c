//! Exact summation of polynomial functions over the lattice points of rational
//! convex polygons.
//!
//! Two independent computation routes are provided:
//!
//! * [`brion`] sums a monomial (or polynomial) weight over the integer points
//!   of a polygon by decomposing each vertex cone into signed unimodular cones
//!   and reading one coefficient off the resulting truncated Laurent series.
//! * [`ehrhart`] computes the full weighted Ehrhart quasi-polynomial of the
//!   dilated polygon via local Euler-Maclaurin operators attached to the
//!   faces, with periodic coefficients kept symbolic as `fmod(p*t, q)`.
//!
//! All arithmetic is exact: big integers and big rationals throughout, no
//! floating point anywhere.

pub mod brion;
pub mod cone;
pub mod ehrhart;
pub mod error;
pub mod geometry;
pub mod periodic;
pub mod poly;
pub mod series;

pub use brion::{number_points_polygon, sum_monomial_polygon, sum_polynomial_polygon};
pub use cone::{AffineCone, SignedCone, TieBreak};
pub use ehrhart::{coeff_t_ehrhart, ehrhart_quasipolynomial};
pub use error::Error;
pub use geometry::{convex_hull, IntVec2, Polygon, RatPoint2};
pub use periodic::{PeriodicPolynomial, PeriodicSymbol, QuasiPolynomial};
pub use poly::{Poly2, Weight};

/// Arbitrary-precision integer used throughout the crate.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational used throughout the crate.
pub type Rat = num_rational::BigRational;

/// Convenience constructor for a rational from two machine integers.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Convenience constructor for a rational from a machine integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}
