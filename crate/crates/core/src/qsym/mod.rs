//! Quasisymmetric and symmetric functions with exact integer coefficients.
//!
//! Elements of `QSym_n` are kept in the monomial basis `M_α`, indexed densely
//! by the subset mask `S_α`. Symmetric functions are kept in either the
//! monomial symmetric basis `m_λ` or the Schur basis `s_λ`; Schur functions
//! themselves are never materialised, only transition coefficients through
//! Kostka numbers.

mod expansion;
mod kostka;

use std::ops::{Add, Sub};
use std::sync::OnceLock;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::perm::PermSet;
use crate::scalar::Coefficient;
use crate::shape::{enumerate_compositions, enumerate_partitions, Composition, Partition, SubsetMask, COMPOSITION_CAP};

pub use expansion::{Basis, Monomial, PartitionExpansion, Schur, SchurExpansion, SymElement};
pub use kostka::{kostka, kostka_cache, kostka_uncached, KostkaCache};

/// One reported term: basis symbol, index shape, coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub basis: &'static str,
    pub key: Vec<usize>,
    pub coefficient: String,
}

/// Anything that reports itself as `(basis, key, coefficient)` triples in
/// canonical key order.
pub trait BasisTerms {
    fn basis_terms(&self) -> Vec<Term>;
}

/// An element of `QSym_n` written as `∑ c_α M_α`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QSymElement<T> {
    n: usize,
    coeffs: Vec<T>,
}

fn check_degree(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Precondition("degree must be positive".into()));
    }
    if n > COMPOSITION_CAP {
        return Err(Error::CapExceeded { what: "quasisymmetric expansion", n, cap: COMPOSITION_CAP });
    }
    Ok(())
}

impl<T: Coefficient> QSymElement<T> {
    pub fn zero(n: usize) -> Result<Self> {
        check_degree(n)?;
        Ok(Self { n, coeffs: vec![T::zero(); 1 << (n - 1)] })
    }

    /// Builds `∑_π F_{Des(π)}` from a stream of descent masks, through
    /// `c_α = #{π : Des(π) ⊆ S_α}`.
    pub fn from_descent_masks<I>(n: usize, masks: I) -> Result<Self>
    where
        I: IntoIterator<Item = SubsetMask>,
    {
        check_degree(n)?;
        let width = n - 1;
        let mut counts = vec![0u64; 1 << width];
        for m in masks {
            counts[m as usize] += 1;
        }
        // Subset-sum (zeta) transform.
        for bit in 0..width {
            for mask in 0..counts.len() {
                if mask >> bit & 1 == 1 {
                    counts[mask] += counts[mask ^ (1 << bit)];
                }
            }
        }
        Ok(Self { n, coeffs: counts.into_iter().map(T::from_count).collect() })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, alpha: &Composition) -> T {
        if alpha.size() != self.n {
            return T::zero();
        }
        self.coeffs[alpha.mask() as usize].clone()
    }

    pub fn coeff_by_mask(&self, mask: SubsetMask) -> &T {
        &self.coeffs[mask as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Non-zero terms in canonical composition order.
    pub fn terms(&self) -> Vec<(Composition, T)> {
        let mut out: Vec<(Composition, T)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (Composition::from_mask(m as SubsetMask, self.n), c.clone()))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch { expected: self.n, found: other.n });
        }
        Ok(Self { n: self.n, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect() })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }
}

impl<T: Coefficient> Add for &QSymElement<T> {
    type Output = QSymElement<T>;

    /// Panics on degree mismatch; see [`QSymElement::checked_add`].
    fn add(self, rhs: Self) -> QSymElement<T> {
        self.checked_add(rhs).expect("degree mismatch in QSym addition")
    }
}

impl<T: Coefficient> Sub for &QSymElement<T> {
    type Output = QSymElement<T>;

    fn sub(self, rhs: Self) -> QSymElement<T> {
        self.checked_sub(rhs).expect("degree mismatch in QSym subtraction")
    }
}

impl<T: Coefficient> BasisTerms for QSymElement<T> {
    fn basis_terms(&self) -> Vec<Term> {
        self.terms()
            .into_iter()
            .map(|(alpha, c)| Term { basis: "M", key: alpha.parts().to_vec(), coefficient: c.to_string() })
            .collect()
    }
}

/// `F_α = ∑_{β ≤ α} M_β`.
pub fn fundamental_to_monomial<T: Coefficient>(alpha: &Composition) -> Result<QSymElement<T>> {
    let mut out = QSymElement::zero(alpha.size())?;
    let s = alpha.mask();
    for (mask, c) in out.coeffs.iter_mut().enumerate() {
        if s & !(mask as SubsetMask) == 0 {
            *c = T::one();
        }
    }
    Ok(out)
}

/// `Q_n(S) = ∑_{π ∈ S} F_{Des(π)} = ∑_α |S(α)| M_α`.
pub fn generating_function<T: Coefficient>(set: &PermSet) -> Result<QSymElement<T>> {
    QSymElement::from_descent_masks(set.degree(), set.descent_masks())
}

/// The `∼`-classes of compositions of `n`, as lists of subset masks, in
/// reverse-lexicographic order of their sorted representative.
pub struct SymmetryClasses {
    n: usize,
    classes: Vec<(Partition, Vec<SubsetMask>)>,
}

impl SymmetryClasses {
    fn build(n: usize) -> Self {
        let partitions = enumerate_partitions(n).expect("degree checked");
        let mut classes: Vec<(Partition, Vec<SubsetMask>)> = partitions.into_iter().map(|p| (p, Vec::new())).collect();
        for alpha in enumerate_compositions(n).expect("degree checked") {
            let lambda = crate::shape::sort_to_partition(&alpha);
            let slot =
                classes.binary_search_by(|(p, _)| p.cmp(&lambda)).expect("every composition sorts to a partition");
            classes[slot].1.push(alpha.mask());
        }
        Self { n, classes }
    }

    /// Shared, lazily built classes for degree `n`.
    pub fn get(n: usize) -> Result<&'static SymmetryClasses> {
        static CACHE: [OnceLock<SymmetryClasses>; COMPOSITION_CAP + 1] =
            [const { OnceLock::new() }; COMPOSITION_CAP + 1];
        check_degree(n)?;
        Ok(CACHE[n].get_or_init(|| SymmetryClasses::build(n)))
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> &[(Partition, Vec<SubsetMask>)] {
        &self.classes
    }

    pub fn is_symmetric<T: Coefficient>(&self, f: &QSymElement<T>) -> bool {
        debug_assert_eq!(f.n, self.n);
        self.classes.iter().all(|(_, masks)| {
            let first = &f.coeffs[masks[0] as usize];
            masks[1..].iter().all(|&m| &f.coeffs[m as usize] == first)
        })
    }
}

/// Coefficients constant on every `∼`-class.
pub fn is_symmetric<T: Coefficient>(f: &QSymElement<T>) -> bool {
    SymmetryClasses::get(f.n).expect("element degree is always within the cap").is_symmetric(f)
}

/// Rewrites a symmetric `f` in the `m_λ` basis.
pub fn to_monomial_symmetric<T: Coefficient>(f: &QSymElement<T>) -> Result<SymElement<T>> {
    let classes = SymmetryClasses::get(f.n)?;
    if !classes.is_symmetric(f) {
        return Err(Error::NotSymmetric);
    }
    SymElement::from_terms(
        f.n,
        classes.classes.iter().map(|(lambda, masks)| (lambda.clone(), f.coeffs[masks[0] as usize].clone())),
    )
}

/// Solves `g = ∑_λ d_λ s_λ` by back-substitution along the partition order.
pub fn monomial_to_schur<T: Coefficient>(g: &SymElement<T>) -> Result<SchurExpansion<T>> {
    let n = g.degree();
    let partitions = enumerate_partitions(n)?;
    let mut solved: Vec<(Partition, T)> = Vec::new();
    for lambda in &partitions {
        let mut d = g.coeff(lambda);
        for (nu, dn) in &solved {
            if dn.is_zero() {
                continue;
            }
            let k = kostka(nu, lambda)?;
            if k != 0 {
                d = d - dn.clone() * T::from_count(k);
            }
        }
        solved.push((lambda.clone(), d));
    }
    SchurExpansion::from_terms(n, solved)
}

/// Re-expands `∑ d_λ s_λ` into `∑_μ (∑_λ d_λ K_{λμ}) m_μ`.
pub fn schur_to_monomial<T: Coefficient>(s: &SchurExpansion<T>) -> Result<SymElement<T>> {
    let n = s.degree();
    let partitions = enumerate_partitions(n)?;
    let mut terms = Vec::with_capacity(partitions.len());
    for mu in &partitions {
        let mut c = T::zero();
        for (lambda, d) in s.terms() {
            let k = kostka(lambda, mu)?;
            if k != 0 {
                c = c + d.clone() * T::from_count(k);
            }
        }
        terms.push((mu.clone(), c));
    }
    SymElement::from_terms(n, terms)
}

/// `(false, None)` when `Q_n(S)` is not symmetric; otherwise whether every
/// Schur coefficient is non-negative, with the expansion. The empty set gives
/// the zero function, which counts as symmetric and Schur-positive.
pub fn is_schur_positive<T: Coefficient>(set: &PermSet) -> Result<(bool, Option<SchurExpansion<T>>)> {
    let q = generating_function::<T>(set)?;
    if !is_symmetric(&q) {
        return Ok((false, None));
    }
    let expansion = monomial_to_schur(&to_monomial_symmetric(&q)?)?;
    let positive = expansion.terms().all(|(_, c)| !c.is_negative());
    Ok((positive, Some(expansion)))
}
