//! Pattern avoidance, quasisymmetric generating functions and the
//! intersecting-family machinery behind lower bounds for symmetrically
//! avoided pattern sets.
//!
//! The algebra is generic over the coefficient ring ([`scalar::Coefficient`])
//! and, for the linear-algebra certificates, over a field
//! ([`scalar::Field`]). The aliases below fix the exact arbitrary-precision
//! choices used throughout the verification harness.

pub mod error;
pub mod family;
pub mod perm;
pub mod qsym;
pub mod scalar;
pub mod shape;
pub mod verify;

use num_bigint::BigInt;
use num_rational::Ratio;

pub use error::{Error, Result};
pub use family::{classify, extract_family, IntersectionProfile, SetFamily};
pub use perm::{PermSet, Permutation};
pub use shape::{Composition, Partition};

/// Exact integer coefficients.
pub type Integer = BigInt;
/// Exact rationals, always reduced with a positive denominator.
pub type Rational = Ratio<BigInt>;
/// `QSym_n` elements with exact integer coefficients.
pub type QSym = qsym::QSymElement<BigInt>;
/// `Sym_n` elements in the monomial symmetric basis.
pub type Sym = qsym::SymElement<BigInt>;
/// `Sym_n` elements in the Schur basis.
pub type Schur = qsym::SchurExpansion<BigInt>;
