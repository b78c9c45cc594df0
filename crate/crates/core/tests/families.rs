mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use symavoid::family::{
    classify, evaluation_matrix, search_extremal, search_extremal_parallel, SearchOptions, SetFamily,
};

/// Every `(ℓ1, ℓ2)`-intersecting sequence of distinct `k`-sets over `[n]`
/// starting at `{1..k}`, each prefix reported once.
fn for_each_family(n: usize, k: usize, l1: usize, l2: usize, f: &mut impl FnMut(&[Vec<usize>])) {
    fn go(all: &[Vec<usize>], chosen: &mut Vec<Vec<usize>>, l1: usize, l2: usize, f: &mut impl FnMut(&[Vec<usize>])) {
        f(chosen);
        let last = chosen.len() - 1;
        for s in all {
            let ok = !chosen.contains(s)
                && chosen.iter().enumerate().all(|(i, a)| common::meet(a, s) == if i == last { l1 } else { l2 });
            if ok {
                chosen.push(s.clone());
                go(all, chosen, l1, l2, f);
                chosen.pop();
            }
        }
    }
    let all = common::k_sets(n, k);
    go(&all, &mut vec![(1..=k).collect()], l1, l2, f);
}

fn nonsingular(family: &SetFamily, l2: usize) -> bool {
    let m = evaluation_matrix(family, l2).unwrap();
    !m.map(|&x| BigRational::from_integer(BigInt::from(x))).is_singular()
}

#[test]
fn evaluation_matrix_nonsingular_below_the_boundary() {
    let mut families = 0;
    for n in 1..=6 {
        for k in 1..n {
            for l1 in 0..k {
                for l2 in 0..k {
                    for_each_family(n, k, l1, l2, &mut |sets| {
                        families += 1;
                        let m = sets.len();
                        assert!(m <= n, "{m} sets over [{n}]: {sets:?}");
                        let f = SetFamily::new(n, sets).unwrap();
                        assert!(classify(&f).matches(k, l1, l2));
                        if m >= 4 {
                            assert!(2 * l2 <= l1 + k, "2·{l2} > {l1} + {k} with {sets:?}");
                        }
                        if 2 * l2 < l1 + k {
                            assert!(nonsingular(&f, l2), "singular evaluation matrix for {sets:?}");
                        }
                    });
                }
            }
        }
    }
    assert!(families > 1000);
}

#[test]
fn search_results_have_the_requested_profile() {
    for n in 1..=6 {
        for k in 1..n {
            for l1 in 0..k {
                for l2 in 0..k {
                    for m in 1..=n + 1 {
                        let seq = search_extremal(n, k, l1, l2, m, &SearchOptions::default()).unwrap();
                        let par = search_extremal_parallel(n, k, l1, l2, m, &SearchOptions::default()).unwrap();
                        assert_eq!(seq.family, par.family);
                        let oracle = common::first_family(n, k, l1, l2, m);
                        assert_eq!(
                            seq.family.as_ref().map(SetFamily::to_vecs),
                            oracle,
                            "n={n} k={k} l1={l1} l2={l2} m={m}"
                        );
                        let Some(f) = seq.family else { break };
                        let p = classify(&f);
                        assert!(p.distinct && p.matches(k, l1, l2) && f.len() == m);
                        assert!(m <= n);
                    }
                }
            }
        }
    }
}

#[test]
fn no_six_member_family_on_the_boundary() {
    let options = SearchOptions { iso_pruning: true, ..SearchOptions::default() };
    for k in 1..=6 {
        for l1 in (0..k).filter(|l1| (l1 + k) % 2 == 0) {
            let l2 = (l1 + k) / 2;
            for n in k..=10 {
                let out = search_extremal_parallel(n, k, l1, l2, 6, &options).unwrap();
                assert!(out.family.is_none(), "k={k} l1={l1} n={n}: {:?}", out.family);
            }
        }
    }
}
