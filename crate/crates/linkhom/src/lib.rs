//! Exact homological invariants of moduli spaces of closed linkages in `R^d`.
//!
//! A length vector `l = (l_1, ..., l_n)` of positive rationals determines the
//! moduli space `M_d(l)` of closed n-gons in `R^d` with those side lengths, up
//! to rotations and translations. This crate computes the combinatorial
//! invariants of these spaces exactly:
//!
//! * subset classification (short/long/median), genericity, chamber structure
//!   of the subset-sum hyperplane arrangement, and chamber enumeration backed
//!   by an exact rational simplex solver ([`lengths`]);
//! * Betti and Poincaré polynomials in closed form for `d = 3` (four
//!   independent formulas) and odd `d >= 5`, plus the relative pair
//!   polynomials that drive them ([`betti`]);
//! * Euler characteristics and Morse-type Betti bounds for even `d`
//!   ([`euler`]);
//! * the underlying equivariant cell complexes with integral homology via
//!   Smith normal form, so every closed formula can be checked against an
//!   independent chain-level computation ([`chains`], [`oracle`]).
//!
//! All arithmetic is exact: rationals for length comparisons, arbitrary
//! precision integers for polynomial coefficients and homology. There is no
//! floating point anywhere.

pub mod betti;
pub mod chains;
pub mod error;
pub mod euler;
pub mod lengths;
pub mod lp;
pub mod oracle;
pub mod poly;
pub mod render;
pub mod snf;

pub use error::Error;
pub use lengths::{ChamberKey, LengthVector, MorseNumbers, ShortSetStats, SubsetClass, SubsetMask};
pub use poly::IntPolynomial;

/// Convenient result alias for fallible library operations.
pub type Result<T> = std::result::Result<T, Error>;
