//! Canonical codes for unlabeled posets.
//!
//! The code of a poset is the lexicographically smallest strict-order
//! adjacency encoding over all relabelings that respect a colour refinement
//! of the elements. Bits are laid out in "shells": position `k` contributes
//! `lt(p_j, p_k)` for `j < k`, then `lt(p_k, p_j)` for `j < k`. A shell only
//! depends on the first `k + 1` positions, which lets the search prune any
//! prefix that is already larger than the best code found.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::poset::Poset;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PosetCode {
    size: usize,
    bits: Vec<bool>,
}

impl PosetCode {
    pub fn size(&self) -> usize {
        self.size
    }

    /// Rebuilds the poset the code describes, naming elements `a`, `b`, ...
    pub fn to_poset(&self) -> Poset {
        let n = self.size;
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for (k, row) in below.iter_mut().enumerate() {
            row.insert(k);
        }
        let mut pos = 0;
        for k in 0..n {
            for j in 0..k {
                if self.bits[pos] {
                    below[k].insert(j);
                }
                pos += 1;
            }
            for j in 0..k {
                if self.bits[pos] {
                    below[j].insert(k);
                }
                pos += 1;
            }
        }
        Poset::from_below(default_names(n), below)
    }
}

pub(crate) fn default_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if n <= 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("p{i}")
            }
        })
        .collect()
}

impl fmt::Display for PosetCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.size)?;
        for chunk in self.bits.chunks(4) {
            let mut nibble = 0u8;
            for (i, &b) in chunk.iter().enumerate() {
                if b {
                    nibble |= 8 >> i;
                }
            }
            write!(f, "{nibble:x}")?;
        }
        Ok(())
    }
}

/// Isomorphism-invariant colour classes by iterated refinement on the
/// multisets of colours strictly below and strictly above each element.
fn refine_colours(p: &Poset) -> Vec<usize> {
    let n = p.size();
    let strict_below: Vec<Vec<usize>> = (0..n)
        .map(|a| p.below(a).ones().filter(|&b| b != a).collect())
        .collect();
    let strict_above: Vec<Vec<usize>> = (0..n)
        .map(|a| p.above(a).ones().filter(|&b| b != a).collect())
        .collect();
    let mut colour = vec![0usize; n];
    let mut classes = usize::from(n > 0);
    loop {
        let sigs: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
            .map(|a| {
                let mut lo: Vec<usize> = strict_below[a].iter().map(|&b| colour[b]).collect();
                let mut hi: Vec<usize> = strict_above[a].iter().map(|&b| colour[b]).collect();
                lo.sort_unstable();
                hi.sort_unstable();
                (colour[a], lo, hi)
            })
            .collect();
        let mut distinct: Vec<&(usize, Vec<usize>, Vec<usize>)> = sigs.iter().collect();
        distinct.sort();
        distinct.dedup();
        let rank: HashMap<&(usize, Vec<usize>, Vec<usize>), usize> =
            distinct.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let next: Vec<usize> = sigs.iter().map(|s| rank[s]).collect();
        let count = distinct.len();
        colour = next;
        if count == classes {
            return colour;
        }
        classes = count;
    }
}

struct Search<'a> {
    poset: &'a Poset,
    target: Vec<usize>,
    colour: Vec<usize>,
    twin: Vec<usize>,
    used: Vec<bool>,
    perm: Vec<usize>,
    cur: Vec<bool>,
    best: Option<Vec<bool>>,
}

impl Search<'_> {
    fn run(&mut self, k: usize) {
        let n = self.poset.size();
        if k == n {
            if self.best.as_ref().is_none_or(|b| self.cur < *b) {
                self.best = Some(self.cur.clone());
            }
            return;
        }
        for v in 0..n {
            if self.used[v] || self.colour[v] != self.target[k] {
                continue;
            }
            // Twins are swapped by an automorphism; one representative suffices.
            if (0..v).any(|u| !self.used[u] && self.twin[u] == self.twin[v]) {
                continue;
            }
            let mark = self.cur.len();
            for j in 0..k {
                let b = self.poset.lt(self.perm[j], v);
                self.cur.push(b);
            }
            for j in 0..k {
                let b = self.poset.lt(v, self.perm[j]);
                self.cur.push(b);
            }
            let keep = match &self.best {
                None => true,
                Some(best) => self.cur[..] <= best[..self.cur.len()],
            };
            if keep {
                self.used[v] = true;
                self.perm.push(v);
                self.run(k + 1);
                self.perm.pop();
                self.used[v] = false;
            }
            self.cur.truncate(mark);
        }
    }
}

/// Canonical code of `p`: equal for two posets iff they are isomorphic.
pub fn canonical_code(p: &Poset) -> PosetCode {
    let n = p.size();
    let colour = refine_colours(p);
    let mut target = colour.clone();
    target.sort_unstable();

    let mut twin: Vec<usize> = (0..n).collect();
    for v in 0..n {
        for u in 0..v {
            if twin[u] == u && p.below(u).count_ones(..) == p.below(v).count_ones(..) {
                let same = (0..n).all(|w| {
                    w == u || w == v || (p.lt(w, u) == p.lt(w, v) && p.lt(u, w) == p.lt(v, w))
                });
                if same && !p.comparable(u, v) {
                    twin[v] = u;
                    break;
                }
            }
        }
    }

    let mut search = Search {
        poset: p,
        target,
        colour,
        twin,
        used: vec![false; n],
        perm: Vec::with_capacity(n),
        cur: Vec::with_capacity(n * n),
        best: None,
    };
    search.run(0);
    PosetCode {
        size: n,
        bits: search.best.unwrap_or_default(),
    }
}

/// Compares two posets up to isomorphism.
pub fn isomorphic(a: &Poset, b: &Poset) -> bool {
    a.size() == b.size()
        && a.covers().len() == b.covers().len()
        && canonical_code(a).cmp(&canonical_code(b)) == Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::build_partial_order;

    #[test]
    fn relabeled_chain_same_code() {
        let a = build_partial_order(&[] as &[&str], &[("b", "a"), ("c", "b")]).unwrap();
        let b = build_partial_order(&[] as &[&str], &[("x", "y"), ("y", "z")]).unwrap();
        assert_eq!(canonical_code(&a), canonical_code(&b));
    }

    #[test]
    fn chain_vs_antichain() {
        let chain = build_partial_order(&[] as &[&str], &[("b", "a")]).unwrap();
        let anti = build_partial_order::<&str>(&["a", "b"], &[]).unwrap();
        assert_ne!(canonical_code(&chain), canonical_code(&anti));
    }

    #[test]
    fn code_round_trips_through_poset() {
        let p = build_partial_order(&["d"], &[("c", "a"), ("c", "b"), ("e", "b")]).unwrap();
        let code = canonical_code(&p);
        let q = code.to_poset();
        assert_eq!(canonical_code(&q), code);
        assert!(isomorphic(&p, &q));
    }

    #[test]
    fn empty_code() {
        let p = build_partial_order::<&str>(&[], &[]).unwrap();
        let code = canonical_code(&p);
        assert_eq!(code.size(), 0);
        assert_eq!(code.to_string(), "0:");
    }

    #[test]
    fn wide_antichain_is_fast() {
        let names: Vec<String> = (0..14).map(|i| format!("e{i}")).collect();
        let p = build_partial_order::<String>(&names, &[]).unwrap();
        let code = canonical_code(&p);
        assert!(code.bits.iter().all(|&b| !b));
    }
}
