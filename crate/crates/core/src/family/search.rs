//! Backtracking search for `k`-uniform `(ℓ1, ℓ2)`-intersecting families of
//! distinct subsets of `[n]`.
//!
//! Sets are `u64` masks; candidates are the `k`-subsets of `[n]` in
//! lexicographic order of their element lists. `A_1` is pinned to the least
//! candidate `{1, …, k}` (any family can be relabelled so), and every later
//! position ranges over all candidates. The first family found is therefore
//! the lexicographically least sequence with that `A_1`.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;

use super::{BitSet, SetFamily};
use crate::error::{Error, Result};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of candidate extensions examined.
    pub node_budget: u64,
    /// Restrict each new set's previously unused elements to the smallest
    /// unused labels. Sound (unused labels are interchangeable) but drops
    /// the lexicographically-least guarantee.
    pub iso_pruning: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { node_budget: DEFAULT_NODE_BUDGET, iso_pruning: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub family: Option<SetFamily>,
    pub nodes: u64,
}

/// `C(n, k)`, saturating at `u64::MAX`.
pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

fn k_subsets(n: usize, k: usize) -> Vec<u64> {
    fn rec(start: usize, n: usize, left: usize, mask: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(mask);
            return;
        }
        for e in start..=n - left {
            rec(e + 1, n, left - 1, mask | 1 << e, out);
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, 0, &mut out);
    out
}

fn check_params(n: usize, k: usize, l1: usize, l2: usize, m_target: usize, budget: u64) -> Result<()> {
    if n > 64 {
        return Err(Error::Precondition(format!("ground size {n} exceeds 64")));
    }
    if !(k >= 1 && k <= n && l1 < k && l2 < k) {
        return Err(Error::Precondition(format!("need 0 <= l1, l2 < k <= n, got n={n} k={k} l1={l1} l2={l2}")));
    }
    if m_target == 0 {
        return Err(Error::Precondition("target size must be at least 1".into()));
    }
    let count = binomial(n as u64, k as u64);
    if count > budget {
        return Err(Error::BudgetExceeded { budget, needed: count });
    }
    Ok(())
}

struct Searcher<'a> {
    candidates: &'a [u64],
    l1: u32,
    l2: u32,
    m_target: usize,
    full: u64,
    iso: bool,
    budget: u64,
    nodes: &'a AtomicU64,
    /// (lowest subtree index already successful, this subtree's index)
    cancel: Option<(&'a AtomicUsize, usize)>,
    chosen: Vec<u64>,
}

impl Searcher<'_> {
    fn tick(&self) -> Result<()> {
        let visited = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if visited > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget, needed: visited });
        }
        Ok(())
    }

    fn compatible(&self, c: u64) -> bool {
        let Some((&last, earlier)) = self.chosen.split_last() else {
            return true;
        };
        c != last
            && (c & last).count_ones() == self.l1
            && earlier.iter().all(|&a| a != c && (c & a).count_ones() == self.l2)
    }

    fn fresh_is_canonical(&self, c: u64) -> bool {
        let used = self.chosen.iter().fold(0, |acc, &a| acc | a);
        let fresh = c & !used;
        let mut unused = self.full & !used;
        let mut lowest = 0;
        for _ in 0..fresh.count_ones() {
            let bit = unused & unused.wrapping_neg();
            lowest |= bit;
            unused ^= bit;
        }
        fresh == lowest
    }

    fn cancelled(&self) -> bool {
        self.cancel.is_some_and(|(best, mine)| best.load(Ordering::Relaxed) < mine)
    }

    fn dfs(&mut self) -> Result<bool> {
        if self.chosen.len() == self.m_target {
            return Ok(true);
        }
        if self.cancelled() {
            return Ok(false);
        }
        for &c in self.candidates {
            self.tick()?;
            if !self.compatible(c) || (self.iso && !self.fresh_is_canonical(c)) {
                continue;
            }
            self.chosen.push(c);
            if self.dfs()? {
                return Ok(true);
            }
            self.chosen.pop();
        }
        Ok(false)
    }
}

fn to_family(n: usize, masks: &[u64]) -> SetFamily {
    SetFamily::from_bitsets(n, masks.iter().map(|&m| BitSet::from_mask(n, m)).collect()).expect("widths agree")
}

/// Finds a `k`-uniform `(ℓ1, ℓ2)`-intersecting family of `m_target`
/// distinct subsets of `[n]`, or reports that none exists.
pub fn search_extremal(
    n: usize,
    k: usize,
    l1: usize,
    l2: usize,
    m_target: usize,
    options: &SearchOptions,
) -> Result<SearchOutcome> {
    check_params(n, k, l1, l2, m_target, options.node_budget)?;
    let candidates = k_subsets(n, k);
    let nodes = AtomicU64::new(0);
    let mut searcher = Searcher {
        candidates: &candidates,
        l1: l1 as u32,
        l2: l2 as u32,
        m_target,
        full: if n == 64 { u64::MAX } else { (1 << n) - 1 },
        iso: options.iso_pruning,
        budget: options.node_budget,
        nodes: &nodes,
        cancel: None,
        chosen: vec![candidates[0]],
    };
    let found = searcher.dfs()?;
    Ok(SearchOutcome { family: found.then(|| to_family(n, &searcher.chosen)), nodes: nodes.load(Ordering::Relaxed) })
}

/// [`search_extremal`] with the choices of `A_2` split across the rayon
/// pool. The witness is the one from the least `A_2` that succeeds, which is
/// the same family the sequential search returns.
pub fn search_extremal_parallel(
    n: usize,
    k: usize,
    l1: usize,
    l2: usize,
    m_target: usize,
    options: &SearchOptions,
) -> Result<SearchOutcome> {
    check_params(n, k, l1, l2, m_target, options.node_budget)?;
    if m_target <= 2 {
        return search_extremal(n, k, l1, l2, m_target, options);
    }
    let candidates = k_subsets(n, k);
    let nodes = AtomicU64::new(0);
    let best = AtomicUsize::new(usize::MAX);
    let full = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let first = candidates[0];
    let seeds: Vec<u64> =
        candidates.iter().copied().filter(|&c| c != first && (c & first).count_ones() == l1 as u32).collect();
    nodes.fetch_add(candidates.len() as u64, Ordering::Relaxed);
    let outcomes: Vec<Result<Option<Vec<u64>>>> = seeds
        .par_iter()
        .enumerate()
        .map(|(idx, &seed)| {
            let mut searcher = Searcher {
                candidates: &candidates,
                l1: l1 as u32,
                l2: l2 as u32,
                m_target,
                full,
                iso: options.iso_pruning,
                budget: options.node_budget,
                nodes: &nodes,
                cancel: Some((&best, idx)),
                chosen: vec![first, seed],
            };
            if options.iso_pruning && !searcher.fresh_is_canonical_after_first(seed) {
                return Ok(None);
            }
            let found = searcher.dfs()?;
            if found && !searcher.cancelled() {
                best.fetch_min(idx, Ordering::Relaxed);
                Ok(Some(searcher.chosen))
            } else {
                Ok(None)
            }
        })
        .collect();
    let winner = best.load(Ordering::Relaxed);
    for (idx, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Ok(Some(chosen)) if idx == winner => {
                return Ok(SearchOutcome { family: Some(to_family(n, &chosen)), nodes: nodes.load(Ordering::Relaxed) })
            }
            Err(e) if idx < winner => return Err(e),
            _ => {}
        }
    }
    Ok(SearchOutcome { family: None, nodes: nodes.load(Ordering::Relaxed) })
}

impl Searcher<'_> {
    /// The canonical-fresh test for the seed `A_2`, evaluated against `A_1`
    /// alone.
    fn fresh_is_canonical_after_first(&self, seed: u64) -> bool {
        let probe = Searcher { chosen: self.chosen[..1].to_vec(), ..*self };
        probe.fresh_is_canonical(seed)
    }
}

/// Every `k`-subset that could follow `family` in a `k`-uniform
/// `(ℓ1, ℓ2)`-intersecting sequence, ignoring distinctness (so repeats of
/// existing members are reported too).
pub fn admissible_extensions(family: &SetFamily, k: usize, l1: usize, l2: usize) -> Result<Vec<BitSet>> {
    let n = family.ground_n();
    if n > 64 || k > n {
        return Err(Error::Precondition(format!("need k <= n <= 64, got n={n} k={k}")));
    }
    let masks: Vec<u64> = family.sets().iter().map(BitSet::mask).collect();
    Ok(k_subsets(n, k)
        .into_iter()
        .filter(|&c| match masks.split_last() {
            None => true,
            Some((&last, earlier)) => {
                (c & last).count_ones() as usize == l1 && earlier.iter().all(|&a| (c & a).count_ones() as usize == l2)
            }
        })
        .map(|c| BitSet::from_mask(n, c))
        .collect())
}
