//! Exact symbolic toolkit for algebraic characters of Harish-Chandra modules.
//!
//! The crate computes characters as fractions over weight-lattice Laurent
//! polynomials with exact rational coefficients, manipulates window-truncated
//! unbounded Laurent series with exactness certificates, and solves desk-scale
//! branching problems (SL(2) tensor products and restrictions, the
//! SO(3)-in-GL(3) Blattner kernel) with machine-checkable certificates.
//!
//! Module map:
//! - [`lattice`]: weight lattices, invariant forms, root data, parabolic data;
//! - [`series`]: sparse Laurent polynomials and windowed unbounded series;
//! - [`weyl`]: Weyl groups, the sign group, and their actions on series;
//! - [`charring`]: Weyl denominators and characters, Kostant cohomology,
//!   character fractions, restriction, projection and translation;
//! - [`kernel`]: the localization-kernel calculus (sections, kernel bases,
//!   explicit coefficients, regularity strips);
//! - [`branch`]: branching certificates and the regularity condition checkers.

pub mod branch;
pub mod charring;
pub mod error;
pub mod kernel;
pub mod lattice;
pub mod series;
pub mod weyl;

pub use error::{Error, Result};

/// Exact rational coefficient type used throughout the crate.
pub type Rat = num_rational::BigRational;

/// Integer lattice coordinate.
pub type Coord = i64;

pub(crate) fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

pub(crate) fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}
