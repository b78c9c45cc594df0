//! Ordered set families over `[n]` and their intersection profiles.
//!
//! A family `A_1, …, A_m` is `(ℓ1, ℓ2)`-intersecting when sets at adjacent
//! positions meet in `ℓ1` elements and sets at distance at least two meet in
//! `ℓ2` elements. Adjacency is taken from the stored order; families are
//! never reordered.

mod bitset;
mod linalg;
mod search;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::PermSet;

pub use bitset::BitSet;
pub use linalg::{tridiag_det, tridiagonal, Matrix};
pub(crate) use search::binomial;
pub use search::{
    admissible_extensions, search_extremal, search_extremal_parallel, SearchOptions, SearchOutcome, DEFAULT_NODE_BUDGET,
};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SetFamily {
    ground_n: usize,
    sets: Vec<BitSet>,
}

impl SetFamily {
    /// Builds a family from 1-based element lists.
    pub fn new(ground_n: usize, sets: &[Vec<usize>]) -> Result<Self> {
        let mut out = Vec::with_capacity(sets.len());
        for s in sets {
            let mut b = BitSet::new(ground_n);
            for &e in s {
                if e == 0 || e > ground_n {
                    return Err(Error::OutOfRange { element: e, max: ground_n });
                }
                b.insert(e);
            }
            out.push(b);
        }
        Ok(Self { ground_n, sets: out })
    }

    pub fn from_bitsets(ground_n: usize, sets: Vec<BitSet>) -> Result<Self> {
        if let Some(bad) = sets.iter().find(|s| s.width() != ground_n) {
            return Err(Error::InvalidFamily(format!("set of width {} in a family over [{ground_n}]", bad.width())));
        }
        Ok(Self { ground_n, sets })
    }

    pub fn ground_n(&self) -> usize {
        self.ground_n
    }

    pub fn sets(&self) -> &[BitSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn to_vecs(&self) -> Vec<Vec<usize>> {
        self.sets.iter().map(BitSet::to_vec).collect()
    }

    /// Parses `n=<int>` followed by one comma-separated set per line.
    ///
    /// `#` starts a comment, blank lines are skipped, and `{}` (or `-`)
    /// denotes the empty set. Braces around a set are optional.
    pub fn parse(text: &str) -> Result<Self> {
        let mut ground_n = None;
        let mut sets = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some(n) = ground_n else {
                let value = content
                    .strip_prefix("n=")
                    .or_else(|| content.strip_prefix("n ="))
                    .ok_or_else(|| Error::Parse { line, message: "expected header `n=<int>`".into() })?;
                let n = value
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse { line, message: format!("bad ground size {value:?}") })?;
                ground_n = Some(n);
                continue;
            };
            let body = content.trim_start_matches('{').trim_end_matches('}').trim();
            let mut set = BitSet::new(n);
            if body != "-" {
                for tok in body.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                    let e = tok
                        .parse::<usize>()
                        .map_err(|_| Error::Parse { line, message: format!("not an integer: {tok:?}") })?;
                    if e == 0 || e > n {
                        return Err(Error::Parse { line, message: format!("element {e} outside 1..={n}") });
                    }
                    set.insert(e);
                }
            }
            sets.push(set);
        }
        let ground_n = ground_n.ok_or(Error::Parse { line: 0, message: "missing header `n=<int>`".into() })?;
        Ok(Self { ground_n, sets })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("n={}\n", self.ground_n);
        for s in &self.sets {
            let elems = s.to_vec();
            if elems.is_empty() {
                out.push_str("{}\n");
            } else {
                let parts: Vec<String> = elems.iter().map(usize::to_string).collect();
                out.push_str(&parts.join(","));
                out.push('\n');
            }
        }
        out
    }
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.sets.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ") over [{}]", self.ground_n)
    }
}

/// Whether a quantity is constant over its applicable index pairs.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Constancy {
    Constant(usize),
    /// No index pairs of this kind exist.
    Vacuous,
    Varies,
}

impl Constancy {
    fn of(values: impl IntoIterator<Item = usize>) -> Self {
        let mut it = values.into_iter();
        match it.next() {
            None => Constancy::Vacuous,
            Some(first) => {
                if it.all(|v| v == first) {
                    Constancy::Constant(first)
                } else {
                    Constancy::Varies
                }
            }
        }
    }

    pub fn value(self) -> Option<usize> {
        match self {
            Constancy::Constant(v) => Some(v),
            _ => None,
        }
    }

    /// Constant or vacuous.
    pub fn is_consistent(self) -> bool {
        self != Constancy::Varies
    }

    /// Consistent with the value `v`.
    pub fn admits(self, v: usize) -> bool {
        match self {
            Constancy::Constant(c) => c == v,
            Constancy::Vacuous => true,
            Constancy::Varies => false,
        }
    }
}

impl fmt::Display for Constancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constancy::Constant(v) => write!(f, "{v}"),
            Constancy::Vacuous => write!(f, "vacuous"),
            Constancy::Varies => write!(f, "varies"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct IntersectionProfile {
    pub uniform_k: Constancy,
    pub adjacent_l1: Constancy,
    pub distant_l2: Constancy,
    pub distinct: bool,
}

impl IntersectionProfile {
    /// `k`-uniform and `(ℓ1, ℓ2)`-intersecting for some values.
    pub fn is_uniform_intersecting(&self) -> bool {
        self.uniform_k.is_consistent() && self.adjacent_l1.is_consistent() && self.distant_l2.is_consistent()
    }

    pub fn matches(&self, k: usize, l1: usize, l2: usize) -> bool {
        self.uniform_k.admits(k) && self.adjacent_l1.admits(l1) && self.distant_l2.admits(l2)
    }
}

impl fmt::Display for IntersectionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} l1={} l2={} distinct={}", self.uniform_k, self.adjacent_l1, self.distant_l2, self.distinct)
    }
}

pub fn classify(family: &SetFamily) -> IntersectionProfile {
    let sets = &family.sets;
    let m = sets.len();
    let uniform_k = Constancy::of(sets.iter().map(BitSet::count));
    let adjacent_l1 = Constancy::of(sets.windows(2).map(|w| w[0].intersection_count(&w[1])));
    let distant_l2 = Constancy::of(
        (0..m).flat_map(|i| (i + 2..m).map(move |j| (i, j))).map(|(i, j)| sets[i].intersection_count(&sets[j])),
    );
    let distinct = (0..m).all(|i| (i + 1..m).all(|j| sets[i] != sets[j]));
    IntersectionProfile { uniform_k, adjacent_l1, distant_l2, distinct }
}

/// `A_i = { j ∈ [m] : i ∉ Des(π_j) }` for `1 ≤ i ≤ n-1`, over the ground set
/// `[m]` indexed by the member order of `set`.
pub fn extract_family(set: &PermSet) -> SetFamily {
    let m = set.len();
    let n = set.degree();
    let masks: Vec<u64> = set.descent_masks().collect();
    let sets = (1..n)
        .map(|i| {
            let mut a = BitSet::new(m);
            for (j, d) in masks.iter().enumerate() {
                if d >> (i - 1) & 1 == 0 {
                    a.insert(j + 1);
                }
            }
            a
        })
        .collect();
    SetFamily { ground_n: m, sets }
}

/// The `(m+1) × (m+1)` evaluation matrix of `f_1, …, f_m, g` at the points
/// `v_1, …, v_m, w`, with `f_i(x) = ∑_{j ∈ A_i} x_j - ℓ2`,
/// `g(x) = ∑_j x_j - k` and `w = 0`.
///
/// Entry `(r, c)` is the value of the `c`-th function at the `r`-th point.
pub fn evaluation_matrix(family: &SetFamily, l2: usize) -> Result<Matrix<i64>> {
    let profile = classify(family);
    let k = profile
        .uniform_k
        .value()
        .ok_or_else(|| Error::ProfileMismatch(format!("family is not uniform ({profile})")))?;
    if !profile.adjacent_l1.is_consistent() {
        return Err(Error::ProfileMismatch(format!("adjacent intersections vary ({profile})")));
    }
    if !profile.distant_l2.admits(l2) {
        return Err(Error::ProfileMismatch(format!("distant intersections are not {l2} ({profile})")));
    }
    if !profile.distinct {
        return Err(Error::ProfileMismatch("sets are not distinct".into()));
    }
    let m = family.len();
    let (k, l2) = (k as i64, l2 as i64);
    let sets = &family.sets;
    Ok(Matrix::from_fn(m + 1, m + 1, |r, c| match (r < m, c < m) {
        (true, true) => sets[c].intersection_count(&sets[r]) as i64 - l2,
        (true, false) => 0,
        (false, true) => -l2,
        (false, false) => -k,
    }))
}
