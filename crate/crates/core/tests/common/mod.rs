//! Brute-force oracles, written directly from the definitions and sharing no
//! code with the library.

#![allow(dead_code)]

use std::collections::BTreeMap;

/// `S_n` in lexicographic order, one-line notation.
pub fn perms(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v + 1);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// All `size`-subsets of `0..n` as increasing index vectors, lexicographically.
pub fn index_subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, size, &mut Vec::new(), &mut out);
    out
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Some subsequence of `sigma` is order-isomorphic to `pi`.
pub fn contains(sigma: &[usize], pi: &[usize]) -> bool {
    let k = pi.len();
    index_subsets(sigma.len(), k)
        .iter()
        .any(|pos| (0..k).all(|a| (0..k).all(|b| (sigma[pos[a]] < sigma[pos[b]]) == (pi[a] < pi[b]))))
}

pub fn avoiders(n: usize, patterns: &[Vec<usize>]) -> Vec<Vec<usize>> {
    perms(n).into_iter().filter(|s| patterns.iter().all(|p| !contains(s, p))).collect()
}

pub fn descents(p: &[usize]) -> Vec<usize> {
    (1..p.len()).filter(|&i| p[i - 1] > p[i]).collect()
}

pub fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v - 1] = i + 1;
    }
    inv
}

pub fn is_monotone(p: &[usize]) -> bool {
    p.windows(2).all(|w| w[0] < w[1]) || p.windows(2).all(|w| w[0] > w[1])
}

/// Compositions of `n`, lexicographically.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Partitions of `n`, lexicographically decreasing.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=max.min(n)).rev() {
            for mut rest in go(n - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    go(n, n)
}

/// Partial sums of all but the last part.
pub fn composition_subset(alpha: &[usize]) -> Vec<usize> {
    alpha[..alpha.len().saturating_sub(1)]
        .iter()
        .scan(0, |acc, &a| {
            *acc += a;
            Some(*acc)
        })
        .collect()
}

/// `p` increases along every segment of `alpha`.
pub fn respects(p: &[usize], alpha: &[usize]) -> bool {
    let mut start = 0;
    alpha.iter().all(|&a| {
        let ok = p[start..start + a].windows(2).all(|w| w[0] < w[1]);
        start += a;
        ok
    })
}

/// `|S(α)|`.
pub fn segment_count(set: &[Vec<usize>], alpha: &[usize]) -> usize {
    set.iter().filter(|p| respects(p, alpha)).count()
}

fn sorted_desc(alpha: &[usize]) -> Vec<usize> {
    let mut v = alpha.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// `|S(α)| = |S(β)|` whenever `α` and `β` share their multiset of parts.
pub fn is_symmetric(set: &[Vec<usize>], n: usize) -> bool {
    let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    compositions(n).iter().all(|alpha| {
        let c = segment_count(set, alpha);
        *seen.entry(sorted_desc(alpha)).or_insert(c) == c
    })
}

/// Semistandard tableaux of shape `shape` and content `content`, filled cell
/// by cell in reading order.
pub fn kostka(shape: &[usize], content: &[usize]) -> u64 {
    fn go(cells: &[(usize, usize)], at: usize, grid: &mut [Vec<usize>], left: &mut [usize]) -> u64 {
        if at == cells.len() {
            return 1;
        }
        let (r, c) = cells[at];
        let mut total = 0;
        for v in 1..=left.len() {
            if left[v - 1] == 0 {
                continue;
            }
            if c > 0 && grid[r][c - 1] > v {
                continue;
            }
            if r > 0 && grid[r - 1][c] >= v {
                continue;
            }
            left[v - 1] -= 1;
            grid[r][c] = v;
            total += go(cells, at + 1, grid, left);
            grid[r][c] = 0;
            left[v - 1] += 1;
        }
        total
    }
    if shape.iter().sum::<usize>() != content.iter().sum::<usize>() {
        return 0;
    }
    let cells: Vec<(usize, usize)> =
        shape.iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |c| (r, c))).collect();
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|&len| vec![0; len]).collect();
    go(&cells, 0, &mut grid, &mut content.to_vec())
}

/// `λ ⊵ μ` in dominance order.
pub fn dominates(lambda: &[usize], mu: &[usize]) -> bool {
    let mut a = 0;
    let mut b = 0;
    (0..lambda.len().max(mu.len())).all(|i| {
        a += lambda.get(i).copied().unwrap_or(0);
        b += mu.get(i).copied().unwrap_or(0);
        a >= b
    })
}

/// Schur expansion of a symmetric set: its monomial coefficients are
/// `c_μ = |S(μ)|`, and `c_μ = ∑_λ d_λ K_{λμ}` is solved top-down in
/// lexicographic order.
pub fn schur_expansion(set: &[Vec<usize>], n: usize) -> BTreeMap<Vec<usize>, i64> {
    let parts = partitions(n);
    let mut d: Vec<i64> = Vec::new();
    for (j, mu) in parts.iter().enumerate() {
        let mut c = segment_count(set, mu) as i64;
        for i in 0..j {
            c -= d[i] * kostka(&parts[i], mu) as i64;
        }
        d.push(c);
    }
    parts.into_iter().zip(d).filter(|(_, c)| *c != 0).collect()
}

/// `C_n` by `C_{m+1} = 2(2m+1) C_m / (m+2)`.
pub fn catalan(n: usize) -> u64 {
    (0..n as u64).fold(1, |c, m| c * 2 * (2 * m + 1) / (m + 2))
}

/// Longest increasing subsequence, by the quadratic recurrence.
pub fn lis(p: &[usize]) -> usize {
    let mut best = vec![1; p.len()];
    for i in 0..p.len() {
        for j in 0..i {
            if p[j] < p[i] {
                best[i] = best[i].max(best[j] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

/// All `k`-subsets of `[n]` as sorted vectors, lexicographically.
pub fn k_sets(n: usize, k: usize) -> Vec<Vec<usize>> {
    index_subsets(n, k).into_iter().map(|s| s.into_iter().map(|i| i + 1).collect()).collect()
}

pub fn meet(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|x| b.contains(x)).count()
}

/// Distinct, `k`-uniform, adjacent meets `ℓ1`, distant meets `ℓ2`.
pub fn is_family(sets: &[Vec<usize>], k: usize, l1: usize, l2: usize) -> bool {
    let m = sets.len();
    sets.iter().all(|s| s.len() == k)
        && (0..m).all(|i| {
            (i + 1..m).all(|j| {
                let want = if j == i + 1 { l1 } else { l2 };
                sets[i] != sets[j] && meet(&sets[i], &sets[j]) == want
            })
        })
}

/// The lexicographically first family of `m` sets with `A_1 = {1..k}`,
/// extending sets in lexicographic order.
pub fn first_family(n: usize, k: usize, l1: usize, l2: usize, m: usize) -> Option<Vec<Vec<usize>>> {
    fn go(all: &[Vec<usize>], chosen: &mut Vec<Vec<usize>>, l1: usize, l2: usize, m: usize) -> bool {
        if chosen.len() == m {
            return true;
        }
        let last = chosen.len() - 1;
        for s in all {
            let ok = !chosen.contains(s)
                && chosen.iter().enumerate().all(|(i, a)| meet(a, s) == if i == last { l1 } else { l2 });
            if ok {
                chosen.push(s.clone());
                if go(all, chosen, l1, l2, m) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    if k > n || m == 0 {
        return None;
    }
    let all = k_sets(n, k);
    let mut chosen = vec![(1..=k).collect::<Vec<_>>()];
    go(&all, &mut chosen, l1, l2, m).then_some(chosen)
}

/// Gaussian elimination over the rationals.
pub fn det_by_elimination(mut a: Vec<Vec<num_rational::BigRational>>) -> num_rational::BigRational {
    use num_traits::{One, Zero};
    let n = a.len();
    let mut det = num_rational::BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return num_rational::BigRational::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col].clone();
        let (top, rest) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in rest {
            let factor = row[col].clone() / pivot_row[col].clone();
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= factor.clone() * p.clone();
            }
        }
    }
    det
}
