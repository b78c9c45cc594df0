//! Exhaustive sweeps over the `size`-subsets of `0..items`, split by first
//! index across the rayon pool.

use rayon::prelude::*;

use crate::family::binomial;

/// Witnesses kept per sweep; hits beyond this are counted only.
pub const WITNESS_LIMIT: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepOutcome {
    pub total: u64,
    pub tested: u64,
    pub hit_count: u64,
    /// The lexicographically first hits, at most [`WITNESS_LIMIT`].
    pub hits: Vec<Vec<usize>>,
}

impl SweepOutcome {
    pub fn complete(&self) -> bool {
        self.tested == self.total
    }
}

/// Advances `idx` to the next increasing sequence with entries below `n`.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Tests `pred` on every `size`-subset of `0..items` in lexicographic order.
///
/// With `limit`, only the first `limit` subsets are swept, so partial
/// coverage is a deterministic lexicographic prefix.
pub fn sweep<F>(items: usize, size: usize, limit: Option<u64>, pred: F) -> SweepOutcome
where
    F: Fn(&[usize]) -> bool + Sync,
{
    let total = binomial(items as u64, size as u64);
    if size == 0 || size > items {
        return SweepOutcome { total, tested: 0, hit_count: 0, hits: Vec::new() };
    }
    let mut firsts = Vec::new();
    let mut budgeted = 0u64;
    for first in 0..=items - size {
        let block = binomial((items - first - 1) as u64, (size - 1) as u64);
        let cap = limit.map_or(block, |l| block.min(l - budgeted));
        if cap == 0 {
            break;
        }
        budgeted += cap;
        firsts.push((first, cap));
    }
    let blocks: Vec<(u64, u64, Vec<Vec<usize>>)> = firsts
        .into_par_iter()
        .map(|(first, cap)| {
            let mut idx: Vec<usize> = (first..first + size).collect();
            let (mut tested, mut count, mut hits) = (0u64, 0u64, Vec::new());
            loop {
                tested += 1;
                if pred(&idx) {
                    count += 1;
                    if hits.len() < WITNESS_LIMIT {
                        hits.push(idx.clone());
                    }
                }
                if tested == cap || !next_combination(&mut idx[1..], items) {
                    break;
                }
            }
            (tested, count, hits)
        })
        .collect();
    let mut out = SweepOutcome { total, tested: 0, hit_count: 0, hits: Vec::new() };
    for (tested, count, hits) in blocks {
        out.tested += tested;
        out.hit_count += count;
        let room = WITNESS_LIMIT - out.hits.len();
        out.hits.extend(hits.into_iter().take(room));
    }
    out
}
