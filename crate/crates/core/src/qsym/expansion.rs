use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use crate::error::{Error, Result};
use crate::scalar::Coefficient;
use crate::shape::Partition;

use super::{BasisTerms, Term};

/// A basis of `Sym_n` indexed by partitions.
pub trait Basis: fmt::Debug + Clone + Copy + PartialEq + Eq + Default {
    const SYMBOL: &'static str;
}

/// Monomial symmetric functions `m_λ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Monomial;

/// Schur functions `s_λ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Schur;

impl Basis for Monomial {
    const SYMBOL: &'static str = "m";
}

impl Basis for Schur {
    const SYMBOL: &'static str = "s";
}

/// Sparse expansion `∑ c_λ b_λ` over partitions of `n`; zero coefficients
/// are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartitionExpansion<T, B> {
    n: usize,
    coeffs: BTreeMap<Partition, T>,
    basis: PhantomData<B>,
}

pub type SymElement<T> = PartitionExpansion<T, Monomial>;
pub type SchurExpansion<T> = PartitionExpansion<T, Schur>;

impl<T: Coefficient, B: Basis> PartitionExpansion<T, B> {
    pub fn zero(n: usize) -> Self {
        Self { n, coeffs: BTreeMap::new(), basis: PhantomData }
    }

    /// Collects terms, summing repeated keys and dropping zeros.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Partition, T)>,
    {
        let mut out = Self::zero(n);
        for (lambda, c) in terms {
            if lambda.size() != n {
                return Err(Error::DegreeMismatch { expected: n, found: lambda.size() });
            }
            let slot = out.coeffs.entry(lambda).or_insert_with(T::zero);
            *slot = slot.clone() + c;
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, lambda: &Partition) -> T {
        self.coeffs.get(lambda).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Non-zero terms, `(n)` first.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &T)> {
        self.coeffs.iter()
    }
}

impl<T: Coefficient, B: Basis> BasisTerms for PartitionExpansion<T, B> {
    fn basis_terms(&self) -> Vec<Term> {
        self.coeffs
            .iter()
            .map(|(lambda, c)| Term { basis: B::SYMBOL, key: lambda.parts().to_vec(), coefficient: c.to_string() })
            .collect()
    }
}

impl<T: Coefficient, B: Basis> fmt::Display for PartitionExpansion<T, B> {
    /// Renders e.g. `s(4,1) + s(3,1,1) - s(3,2)`; the zero element is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (lambda, c)) in self.coeffs.iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !magnitude.is_one() {
                write!(f, "{magnitude}·")?;
            }
            write!(f, "{}{lambda}", B::SYMBOL)?;
        }
        Ok(())
    }
}
