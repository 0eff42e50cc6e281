//! Exact computational models of moment-angle manifolds.
//!
//! The crate turns four kinds of input data into each other and into
//! topological invariants, all over exact rational (or Gaussian rational)
//! arithmetic:
//!
//! * polyhedron presentations `P(A, b)` given by `m` linear inequalities
//!   `<a_i, x> + b_i >= 0` in `R^n`,
//! * quadric systems `Gamma |z|^2 = delta` over Hermitian or real
//!   coordinates,
//! * simplicial complexes with ghost vertices and fan data on top of them,
//! * bigraded differential algebras built from toric cohomology rings.
//!
//! Everything is deterministic: canonical kernel bases via reduced row
//! echelon form, Hermite/Smith normal forms with unimodular witnesses, and
//! an exact simplex solver with Bland's pivoting rule. No floating point
//! appears anywhere.
//!
//! Subset scans (vertex enumeration, nondegeneracy tests, Hochster-style
//! Betti sums) are exponential in `m`; callers facing untrusted input
//! should cap `m` (the bundled CLI enforces `m <= 14` by default).

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod betti;
pub mod complex;
pub mod cubical;
pub mod dga;
pub mod fan;
pub mod gale;
pub mod hodge;
pub mod intmat;
pub mod lagrangian;
pub mod lattice;
pub mod lp;
pub mod matrix;
pub mod presentation;
pub mod psi;
pub mod quadric;
pub mod scalar;
pub mod topology;
pub mod toric;
mod util;

use alloc::string::String;
use core::fmt;

/// Error type shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Matrix or vector dimensions do not match the operation.
    DimensionMismatch { expected: usize, got: usize },
    /// The normal matrix A must have full row rank n.
    RankDeficient { rank: usize, required: usize },
    /// The polyhedron is empty where a nonempty one is required.
    EmptyPolyhedron,
    /// The polyhedron has empty interior (lower-dimensional).
    EmptyInterior,
    /// The presentation is not generic.
    NotGeneric,
    /// The presentation does not have all b_i = 1.
    NotNormalized,
    /// The polyhedron (or quadric level set) is unbounded where a bounded
    /// one is required.
    Unbounded,
    /// The quadric system is degenerate.
    Degenerate,
    /// The operation is defined for the other realm (hermitian vs real).
    WrongRealm,
    /// The simplicial complex is not pure of the expected dimension.
    NotPure,
    /// The fan data does not define a fan.
    NotAFan,
    /// The fan is not complete.
    NotComplete,
    /// The fan is not regular.
    NotRegular,
    /// The vectors do not span the ambient space.
    SpanFailure,
    /// Integer input required (lattice or Smith normal form context).
    NonIntegerEntry,
    /// A vector does not lie in the lattice.
    NotInLattice,
    /// An index set refers to elements outside the ground set.
    IndexOutOfRange { index: usize, bound: usize },
    /// The linear system has no solution.
    InconsistentSystem,
    /// m - n must be even to build a complex structure.
    OddCodimension { m: usize, n: usize },
    /// A supplied Psi map failed verification.
    InvalidPsi(String),
    /// Ground-set size exceeds what the bit-mask representation holds.
    GroundSetTooLarge { m: usize, max: usize },
    /// An internal cross-check failed; indicates a bug, not bad input.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::RankDeficient { rank, required } => {
                write!(f, "rank deficient: rank {rank}, required {required}")
            }
            Error::EmptyPolyhedron => write!(f, "the polyhedron is empty"),
            Error::EmptyInterior => write!(f, "the polyhedron has empty interior"),
            Error::NotGeneric => write!(f, "the presentation is not generic"),
            Error::NotNormalized => write!(f, "presentation must have all b_i = 1"),
            Error::Unbounded => write!(f, "unbounded where bounded input is required"),
            Error::Degenerate => write!(f, "the quadric system is degenerate"),
            Error::WrongRealm => {
                write!(f, "operation is defined for the other realm (hermitian vs real)")
            }
            Error::NotPure => write!(f, "the complex is not pure of the expected dimension"),
            Error::NotAFan => write!(f, "the data does not define a fan"),
            Error::NotComplete => write!(f, "the fan is not complete"),
            Error::NotRegular => write!(f, "the fan is not regular"),
            Error::SpanFailure => write!(f, "the vectors do not span the ambient space"),
            Error::NonIntegerEntry => write!(f, "integer entries required"),
            Error::NotInLattice => write!(f, "vector does not lie in the lattice"),
            Error::IndexOutOfRange { index, bound } => {
                write!(f, "index {index} out of range (ground set size {bound})")
            }
            Error::InconsistentSystem => write!(f, "linear system has no solution"),
            Error::OddCodimension { m, n } => write!(
                f,
                "m - n = {} is odd; add a ghost vertex first (m = {m}, n = {n})",
                m - n
            ),
            Error::InvalidPsi(msg) => write!(f, "invalid Psi map: {msg}"),
            Error::GroundSetTooLarge { m, max } => {
                write!(f, "ground set size {m} exceeds supported maximum {max}")
            }
            Error::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
