//! Permutations in one-line notation, classical pattern containment and the
//! explicit permutation sets used by the verification harness.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::shape::{mask_elements, Composition, SubsetMask};

/// Degrees are bounded so descent sets fit a [`SubsetMask`].
pub const MAX_DEGREE: usize = 64;

/// Default bound on `n` for full enumeration of `S_n` (10! = 3,628,800).
pub const DEFAULT_ENUMERATION_CAP: usize = 10;

/// A bijection of `[n]` written as `[σ(1), …, σ(n)]`.
///
/// The derived ordering is lexicographic on one-line notation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Permutation {
    entries: Vec<u8>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    Increasing,
    Decreasing,
}

impl Permutation {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty one-line notation".into()));
        }
        if n > MAX_DEGREE {
            return Err(Error::InvalidPermutation(format!("degree {n} exceeds the maximum {MAX_DEGREE}")));
        }
        let mut seen = vec![false; n + 1];
        for &e in &entries {
            if e == 0 || e > n || seen[e] {
                return Err(Error::InvalidPermutation(format!("{entries:?} is not a bijection on 1..={n}")));
            }
            seen[e] = true;
        }
        Ok(Self { entries: entries.into_iter().map(|e| e as u8).collect() })
    }

    pub(crate) fn from_raw(entries: Vec<u8>) -> Self {
        Self { entries }
    }

    pub fn identity(n: usize) -> Self {
        monotone(n, Direction::Increasing)
    }

    pub fn degree(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.entries.iter().map(|&e| e as usize).collect()
    }

    /// `σ(i)` for `1 ≤ i ≤ n`.
    pub fn at(&self, i: usize) -> usize {
        self.entries[i - 1] as usize
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.entries.len()];
        for (i, &e) in self.entries.iter().enumerate() {
            inv[e as usize - 1] = (i + 1) as u8;
        }
        Self { entries: inv }
    }

    /// `Des(σ)` as a bitmask over `[n-1]`.
    pub fn descent_mask(&self) -> SubsetMask {
        self.entries.windows(2).enumerate().filter(|(_, w)| w[0] > w[1]).fold(0, |mask, (i, _)| mask | 1 << i)
    }

    pub fn is_monotone(&self) -> bool {
        let n = self.degree();
        let full = if n <= 1 { 0 } else { u64::MAX >> (65 - n) };
        let d = self.descent_mask();
        d == 0 || d == full
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts whitespace- or comma-separated one-line notation, optionally
    /// wrapped in brackets: `[3,1,2]`, `3 1 2`, `3,1,2`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix('[').unwrap_or(t);
        let t = t.strip_suffix(']').unwrap_or(t);
        let entries = t
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|tok| !tok.is_empty())
            .map(|tok| tok.parse::<usize>().map_err(|_| Error::InvalidPermutation(format!("not an integer: {tok:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(entries)
    }
}

/// `ι_n` or `δ_n`.
pub fn monotone(n: usize, direction: Direction) -> Permutation {
    assert!((1..=MAX_DEGREE).contains(&n), "degree {n} out of range");
    let entries = match direction {
        Direction::Increasing => (1..=n as u8).collect(),
        Direction::Decreasing => (1..=n as u8).rev().collect(),
    };
    Permutation { entries }
}

/// `Des(σ) = { i ∈ [n-1] : σ_i > σ_{i+1} }`, ascending.
pub fn descent_set(sigma: &Permutation) -> Vec<usize> {
    mask_elements(sigma.descent_mask())
}

/// An ordered, duplicate-free list of permutations of a common degree.
///
/// Member order is significant (family extraction indexes members by it).
/// Sets produced by enumeration are in lexicographic order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PermSet {
    degree: usize,
    members: Vec<Permutation>,
}

impl PermSet {
    pub fn new(degree: usize, members: Vec<Permutation>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(members.len());
        for p in &members {
            if p.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: p.degree() });
            }
            if !seen.insert(p) {
                return Err(Error::InvalidPermutation(format!("duplicate member {p}")));
            }
        }
        Ok(Self { degree, members })
    }

    pub fn empty(degree: usize) -> Self {
        Self { degree, members: Vec::new() }
    }

    /// All of `S_n` in lexicographic order.
    pub fn full(n: usize, cap: usize) -> Result<Self> {
        check_enumeration(n, cap)?;
        Ok(Self { degree: n, members: all_permutations(n).collect() })
    }

    /// Parses the pattern-file format: one permutation per line, blank lines
    /// and `#` comments ignored. `degree` is inferred when not given.
    pub fn parse(text: &str, degree: Option<usize>) -> Result<Self> {
        let mut members = Vec::new();
        let mut seen = HashSet::new();
        let mut degree = degree;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let p: Permutation = content.parse().map_err(|e: Error| Error::Parse { line, message: e.to_string() })?;
            match degree {
                None => degree = Some(p.degree()),
                Some(d) if d != p.degree() => {
                    return Err(Error::Parse { line, message: format!("expected degree {d}, found {}", p.degree()) })
                }
                _ => {}
            }
            if !seen.insert(p.clone()) {
                return Err(Error::Parse { line, message: format!("duplicate permutation {p}") });
            }
            members.push(p);
        }
        let degree = degree.ok_or(Error::Parse { line: 0, message: "no permutations and no degree given".into() })?;
        Ok(Self { degree, members })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn members(&self) -> &[Permutation] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.members.contains(p)
    }

    pub fn sorted(mut self) -> Self {
        self.members.sort();
        self
    }

    pub fn descent_masks(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        self.members.iter().map(Permutation::descent_mask)
    }

    /// Members not in `other`, in this set's order.
    pub fn difference(&self, other: &PermSet) -> PermSet {
        let drop: HashSet<&Permutation> = other.members.iter().collect();
        PermSet { degree: self.degree, members: self.members.iter().filter(|p| !drop.contains(p)).cloned().collect() }
    }

    /// One permutation per line in one-line notation.
    pub fn to_text(&self) -> String {
        self.members.iter().map(|p| format!("{p}\n")).collect()
    }
}

impl<'a> IntoIterator for &'a PermSet {
    type Item = &'a Permutation;
    type IntoIter = std::slice::Iter<'a, Permutation>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// Rearranges `v` into the next permutation in lexicographic order.
fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Lexicographic iterator over `S_n`.
pub struct Permutations {
    current: Option<Vec<u8>>,
    leading: Option<u8>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.current.as_mut()?;
        let out = Permutation::from_raw(cur.clone());
        if !next_permutation(cur) || self.leading.is_some_and(|l| cur[0] != l) {
            self.current = None;
        }
        Some(out)
    }
}

pub fn all_permutations(n: usize) -> Permutations {
    Permutations { current: Some((1..=n as u8).collect()), leading: None }
}

/// Permutations of `S_n` with `σ(1) = first`, lexicographically.
fn permutations_starting_with(n: usize, first: u8) -> Permutations {
    let mut start = vec![first];
    start.extend((1..=n as u8).filter(|&v| v != first));
    Permutations { current: Some(start), leading: Some(first) }
}

fn check_enumeration(n: usize, cap: usize) -> Result<()> {
    if n == 0 || n > MAX_DEGREE {
        return Err(Error::Precondition(format!("degree {n} out of range")));
    }
    if n > cap {
        return Err(Error::CapExceeded { what: "permutation enumeration", n, cap });
    }
    Ok(())
}

/// A pattern preprocessed for containment queries.
///
/// For every position `j` the search needs, among earlier positions, the one
/// holding the largest smaller value and the one holding the smallest larger
/// value; the value chosen for `j` must fall strictly between their images.
#[derive(Clone, Debug)]
pub struct CompiledPattern {
    len: usize,
    lower: Vec<Option<usize>>,
    upper: Vec<Option<usize>>,
}

impl CompiledPattern {
    pub fn new(pi: &Permutation) -> Self {
        let e = pi.entries();
        let len = e.len();
        let mut lower = vec![None; len];
        let mut upper = vec![None; len];
        for j in 0..len {
            for jp in 0..j {
                if e[jp] < e[j] && lower[j].is_none_or(|l: usize| e[jp] > e[l]) {
                    lower[j] = Some(jp);
                }
                if e[jp] > e[j] && upper[j].is_none_or(|u: usize| e[jp] < e[u]) {
                    upper[j] = Some(jp);
                }
            }
        }
        Self { len, lower, upper }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn occurs_in(&self, sigma: &[u8]) -> bool {
        if self.len > sigma.len() {
            return false;
        }
        let mut chosen = vec![0u8; self.len];
        self.extend(sigma, &mut chosen, 0, 0)
    }

    fn extend(&self, sigma: &[u8], chosen: &mut [u8], depth: usize, start: usize) -> bool {
        if depth == self.len {
            return true;
        }
        let last_start = sigma.len() - (self.len - depth);
        let lo = self.lower[depth].map_or(0, |l| chosen[l]);
        let hi = self.upper[depth].map_or(u8::MAX, |u| chosen[u]);
        for i in start..=last_start {
            let v = sigma[i];
            if v > lo && v < hi {
                chosen[depth] = v;
                if self.extend(sigma, chosen, depth + 1, i + 1) {
                    return true;
                }
            }
        }
        false
    }
}

/// Whether `sigma` has a subsequence order-isomorphic to `pi`.
pub fn contains_pattern(sigma: &Permutation, pi: &Permutation) -> bool {
    CompiledPattern::new(pi).occurs_in(sigma.entries())
}

/// `S_n(Π)` in lexicographic order, with the default enumeration cap.
pub fn avoiders(n: usize, patterns: &PermSet) -> Result<PermSet> {
    avoiders_capped(n, patterns, DEFAULT_ENUMERATION_CAP)
}

pub fn avoiders_capped(n: usize, patterns: &PermSet, cap: usize) -> Result<PermSet> {
    check_enumeration(n, cap)?;
    let compiled: Vec<CompiledPattern> = patterns.members().iter().map(CompiledPattern::new).collect();
    let avoids = |p: &Permutation| compiled.iter().all(|c| !c.occurs_in(p.entries()));
    let members: Vec<Permutation> = (1..=n as u8)
        .into_par_iter()
        .map(|first| permutations_starting_with(n, first).filter(|p| avoids(p)).collect::<Vec<_>>())
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    Ok(PermSet { degree: n, members })
}

/// `D_J^{-1} = { π ∈ S_k : Des(π^{-1}) = J }`, lexicographically.
pub fn inverse_descent_class(k: usize, descents: &[usize]) -> Result<PermSet> {
    inverse_descent_class_capped(k, descents, DEFAULT_ENUMERATION_CAP)
}

pub fn inverse_descent_class_capped(k: usize, descents: &[usize], cap: usize) -> Result<PermSet> {
    check_enumeration(k, cap)?;
    let target = crate::shape::mask_from_elements(descents, k)?;
    Ok(PermSet { degree: k, members: all_permutations(k).filter(|p| p.inverse().descent_mask() == target).collect() })
}

/// Whether `sigma` increases along every segment of `alpha`.
pub fn respects(sigma: &Permutation, alpha: &Composition) -> Result<bool> {
    if alpha.size() != sigma.degree() {
        return Err(Error::DegreeMismatch { expected: sigma.degree(), found: alpha.size() });
    }
    Ok(sigma.descent_mask() & !alpha.mask() == 0)
}

/// The symmetric, non-Schur-positive set of size `n`:
/// `{[n,1,…,n-1], [1,…,n-2,n,n-1]}` together with every arrangement that
/// inserts the adjacent pair `n, n-1` into `1,…,n-2` at positions
/// `0..=n-3`.
pub fn non_schur_positive_symmetric_set(n: usize) -> Result<PermSet> {
    if !(4..=MAX_DEGREE).contains(&n) {
        return Err(Error::Precondition(format!("need 4 <= n <= {MAX_DEGREE}, got {n}")));
    }
    let n8 = n as u8;
    let mut members = Vec::with_capacity(n);
    let mut first = vec![n8];
    first.extend(1..n8);
    members.push(first);
    let mut second: Vec<u8> = (1..=n8 - 2).collect();
    second.extend([n8, n8 - 1]);
    members.push(second);
    for pos in 0..=n - 3 {
        let mut p: Vec<u8> = (1..=n8 - 2).collect();
        p.splice(pos..pos, [n8, n8 - 1]);
        members.push(p);
    }
    PermSet::new(n, members.into_iter().map(Permutation::from_raw).collect())
}
