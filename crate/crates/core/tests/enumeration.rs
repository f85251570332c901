//! Poset enumeration against a from-scratch generator over all relations.

use std::collections::BTreeSet;

use distlat::canon::isomorphic;
use distlat::{canonical_code, canonical_isomorphic, enumerate_posets, ideal_lattice, Poset};

/// A relation matrix as `n*n` bits, row-major: bit `a*n+b` means `a < b`.
fn is_strict_order(n: usize, r: u64) -> bool {
    let lt = |a: usize, b: usize| r >> (a * n + b) & 1 == 1;
    for a in 0..n {
        if lt(a, a) {
            return false;
        }
        for b in 0..n {
            for c in 0..n {
                if lt(a, b) && lt(b, c) && !lt(a, c) {
                    return false;
                }
            }
        }
    }
    true
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn relabel(n: usize, r: u64, perm: &[usize]) -> u64 {
    let mut out = 0;
    for a in 0..n {
        for b in 0..n {
            if r >> (a * n + b) & 1 == 1 {
                out |= 1 << (perm[a] * n + perm[b]);
            }
        }
    }
    out
}

/// Smallest relabelling of every strict order on `n` points.
fn brute_force_classes(n: usize) -> BTreeSet<u64> {
    let perms = permutations(n);
    (0u64..1 << (n * n))
        .filter(|&r| is_strict_order(n, r))
        .map(|r| perms.iter().map(|p| relabel(n, r, p)).min().unwrap())
        .collect()
}

fn to_relation(p: &Poset) -> u64 {
    let n = p.size();
    let mut r = 0;
    for a in 0..n {
        for b in 0..n {
            if p.lt(a, b) {
                r |= 1 << (a * n + b);
            }
        }
    }
    r
}

fn brute_force_class_of(p: &Poset) -> u64 {
    let n = p.size();
    let r = to_relation(p);
    permutations(n)
        .iter()
        .map(|q| relabel(n, r, q))
        .min()
        .unwrap()
}

#[test]
fn counts_match_brute_force_up_to_four() {
    for n in 0..=4 {
        let want = brute_force_classes(n);
        let got: BTreeSet<u64> = enumerate_posets(n)
            .unwrap()
            .iter()
            .map(|c| brute_force_class_of(&c.to_poset()))
            .collect();
        assert_eq!(got, want, "n = {n}");
        assert_eq!(enumerate_posets(n).unwrap().len(), want.len());
    }
}

#[test]
fn known_counts() {
    let counts: Vec<usize> = (0..=6)
        .map(|n| enumerate_posets(n).unwrap().len())
        .collect();
    assert_eq!(counts, [1, 1, 2, 5, 16, 63, 318]);
}

#[test]
fn codes_are_sorted_and_fixed_points() {
    for n in 0..=5 {
        let codes = enumerate_posets(n).unwrap();
        assert!(codes.windows(2).all(|w| w[0] < w[1]));
        for c in &codes {
            assert_eq!(&canonical_code(&c.to_poset()), c);
        }
    }
}

#[test]
fn distinct_codes_give_non_isomorphic_lattices() {
    let lattices: Vec<_> = (0..=4)
        .flat_map(|n| enumerate_posets(n).unwrap())
        .map(|c| ideal_lattice(&c.to_poset()).unwrap())
        .collect();
    for (i, a) in lattices.iter().enumerate() {
        for (j, b) in lattices.iter().enumerate() {
            assert_eq!(canonical_isomorphic(a, b), i == j, "{i} vs {j}");
        }
    }
}

#[test]
fn isomorphism_agrees_with_brute_force() {
    let posets: Vec<Poset> = (0..=4)
        .flat_map(|n| enumerate_posets(n).unwrap())
        .map(|c| c.to_poset())
        .collect();
    for a in &posets {
        for b in &posets {
            let want = a.size() == b.size() && brute_force_class_of(a) == brute_force_class_of(b);
            assert_eq!(isomorphic(a, b), want);
        }
    }
}
