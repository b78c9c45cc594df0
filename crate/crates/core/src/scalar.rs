//! Scalar abstractions shared by the algebraic modules.
//!
//! Coefficients of quasisymmetric and symmetric functions live in an ordered
//! ring of integers ([`Coefficient`]); the linear-algebra certificates of the
//! `family` module need a field ([`Field`]). Both are blanket-implemented, so
//! `i64`, `i128` and `BigInt` are coefficients, and `Ratio<BigInt>`,
//! `Ratio<i64>`, `f64` are fields.

use std::fmt::{Debug, Display};

use num_traits::{FromPrimitive, Num, Signed};

/// Exact integer coefficient ring.
pub trait Coefficient: Clone + Num + Signed + Ord + FromPrimitive + Display + Debug + Send + Sync {
    fn from_count(count: u64) -> Self {
        Self::from_u64(count).expect("count fits the coefficient type")
    }
}

impl<T> Coefficient for T where T: Clone + Num + Signed + Ord + FromPrimitive + Display + Debug + Send + Sync {}

/// Field used for exact (or floating) elimination.
pub trait Field: Clone + Num + Debug {}

impl<T> Field for T where T: Clone + Num + Debug {}
