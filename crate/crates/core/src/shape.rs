//! Compositions and partitions of `n`.
//!
//! A composition `α ⊨ n` corresponds to the subset `S_α ⊆ [n-1]` of its
//! partial sums. Subsets of `[n-1]` are stored as `u64` bitmasks with bit
//! `i - 1` standing for the element `i`; this is the representation shared
//! with descent sets in [`crate::perm`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest `n` for which compositions and partitions are enumerated.
pub const COMPOSITION_CAP: usize = 20;

/// A subset of `[n-1]` encoded as a bitmask (bit `i - 1` is element `i`).
pub type SubsetMask = u64;

pub(crate) fn mask_from_elements(elements: &[usize], n: usize) -> Result<SubsetMask> {
    let max = n.saturating_sub(1);
    elements.iter().try_fold(0u64, |mask, &e| {
        if e == 0 || e > max || e > 64 {
            Err(Error::OutOfRange { element: e, max })
        } else {
            Ok(mask | 1 << (e - 1))
        }
    })
}

pub(crate) fn mask_elements(mask: SubsetMask) -> Vec<usize> {
    (0..64).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

fn parse_parts(s: &str) -> Result<Vec<usize>> {
    let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
    inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| Error::InvalidShape(format!("not a positive integer: {t:?}"))))
        .collect()
}

fn write_parts(f: &mut fmt::Formatter<'_>, parts: &[usize]) -> fmt::Result {
    write!(f, "(")?;
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{p}")?;
    }
    write!(f, ")")
}

/// An ordered sequence of positive integers.
///
/// Compositions order first by number of parts and then lexicographically,
/// so `(3) < (1,2) < (2,1) < (1,1,1)`. This is the canonical key order used
/// in reports.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidShape("a composition needs at least one part".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidShape(format!("zero part in {parts:?}")));
        }
        Ok(Self { parts })
    }

    /// The composition of `n` whose partial-sum set is `mask`.
    ///
    /// Bits at or above `n - 1` are ignored.
    pub fn from_mask(mask: SubsetMask, n: usize) -> Self {
        debug_assert!(n >= 1);
        let mut parts = Vec::new();
        let mut last = 0;
        for i in 1..n {
            if mask >> (i - 1) & 1 == 1 {
                parts.push(i - last);
                last = i;
            }
        }
        parts.push(n - last);
        Self { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The integer `n` being composed.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `S_α` as a bitmask.
    pub fn mask(&self) -> SubsetMask {
        let mut acc = 0;
        let mut mask = 0;
        for &p in &self.parts[..self.parts.len() - 1] {
            acc += p;
            mask |= 1 << (acc - 1);
        }
        mask
    }

    /// `S_α`: the partial sums, excluding `n` itself.
    pub fn to_subset(&self) -> Vec<usize> {
        mask_elements(self.mask())
    }
}

impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.parts.len().cmp(&other.parts.len()).then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.parts)
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Composition::new(parse_parts(s)?)
    }
}

/// A non-increasing sequence of positive integers.
///
/// Partitions order reverse-lexicographically: `(n)` is the least and
/// `(1,…,1)` the greatest. This order extends dominance downward, so a
/// partition always precedes every partition it dominates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidShape("a partition needs at least one part".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidShape(format!("zero part in {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidShape(format!("{parts:?} is not non-increasing")));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn as_composition(&self) -> Composition {
        Composition { parts: self.parts.clone() }
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.parts.cmp(&self.parts)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.parts)
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Partition::new(parse_parts(s)?)
    }
}

/// Maps `{i_1 < … < i_k} ⊆ [n-1]` to `(i_1, i_2 - i_1, …, n - i_k)`.
pub fn subset_to_composition(subset: &[usize], n: usize) -> Result<Composition> {
    if n == 0 {
        return Err(Error::InvalidShape("n must be positive".into()));
    }
    if n > 64 {
        return Err(Error::CapExceeded { what: "composition", n, cap: 64 });
    }
    Ok(Composition::from_mask(mask_from_elements(subset, n)?, n))
}

pub fn composition_to_subset(alpha: &Composition) -> Vec<usize> {
    alpha.to_subset()
}

/// `β ≤ α`, i.e. `S_α ⊆ S_β`.
pub fn refines(beta: &Composition, alpha: &Composition) -> Result<bool> {
    if beta.size() != alpha.size() {
        return Err(Error::DegreeMismatch { expected: alpha.size(), found: beta.size() });
    }
    Ok(alpha.mask() & !beta.mask() == 0)
}

/// `α ∼ β`: one is a rearrangement of the other.
pub fn equivalent(alpha: &Composition, beta: &Composition) -> bool {
    sort_to_partition(alpha) == sort_to_partition(beta)
}

pub fn sort_to_partition(alpha: &Composition) -> Partition {
    let mut parts = alpha.parts.clone();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Partition { parts }
}

/// `λ ⊴ μ` in dominance order.
pub fn dominance_leq(lambda: &Partition, mu: &Partition) -> Result<bool> {
    if lambda.size() != mu.size() {
        return Err(Error::DegreeMismatch { expected: mu.size(), found: lambda.size() });
    }
    let len = lambda.len().max(mu.len());
    let (mut a, mut b) = (0, 0);
    for i in 0..len {
        a += lambda.parts.get(i).copied().unwrap_or(0);
        b += mu.parts.get(i).copied().unwrap_or(0);
        if a > b {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_cap(n: usize, what: &'static str) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidShape("n must be positive".into()));
    }
    if n > COMPOSITION_CAP {
        return Err(Error::CapExceeded { what, n, cap: COMPOSITION_CAP });
    }
    Ok(())
}

/// All `2^(n-1)` compositions of `n` in canonical order.
pub fn enumerate_compositions(n: usize) -> Result<Vec<Composition>> {
    check_cap(n, "composition enumeration")?;
    let mut all: Vec<Composition> = (0..1u64 << (n - 1)).map(|mask| Composition::from_mask(mask, n)).collect();
    all.sort();
    Ok(all)
}

/// All partitions of `n` in reverse-lexicographic order.
pub fn enumerate_partitions(n: usize) -> Result<Vec<Partition>> {
    check_cap(n, "partition enumeration")?;
    fn rec(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        for p in (1..=remaining.min(max_part)).rev() {
            prefix.push(p);
            rec(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    Ok(out)
}
