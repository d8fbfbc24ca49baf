//! Error type shared across the crate.

use crate::lengths::SubsetMask;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// The length vector admits a median subset and is therefore not generic.
    #[error("length vector is not generic: {witness} is a median subset")]
    NonGeneric { witness: SubsetMask },

    /// The moduli space is empty (`a_0 = 0`), so the requested invariant is
    /// undefined.
    #[error("moduli space is empty (a_0 = 0)")]
    EmptyModuli,

    /// The two largest entries coincide, so the split vectors are undefined;
    /// perturb to a distinct-entry chamber representative first.
    #[error("the two largest entries are equal; perturb to distinct entries first")]
    Degenerate,

    /// An operation requiring a sorted, distinct-entry representative was
    /// called on something else.
    #[error("entries must be sorted ascending and pairwise distinct")]
    Unsorted,

    /// Polynomial division left a nonzero remainder. For the closed formulas
    /// exactness is a theorem, so this signals a transcription bug.
    #[error("inexact polynomial division, remainder {remainder}")]
    InexactDivision { remainder: String },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("{what} = {value} is outside the supported range {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },

    #[error("unsupported ambient dimension d = {d}")]
    UnsupportedDimension { d: i64 },

    /// Rational Betti numbers for even `d >= 4` are not determined by the
    /// Morse data alone, so the odd-dimensional assembly refuses even `d`.
    #[error("d = {d} is even; the filtration only splits for odd d >= 5")]
    EvenDimension { d: i64 },

    #[error("length vector has n = {n} entries; this operation needs n >= {min}")]
    TooShort { n: usize, min: usize },

    /// `k < d - 2`: the relative complex collapses and has no summands.
    #[error("k = {k} < d - 2 = {dm2}: relative complex is empty")]
    EmptyRange { k: i64, dm2: i64 },

    #[error("invalid length vector: {0}")]
    Invalid(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}
