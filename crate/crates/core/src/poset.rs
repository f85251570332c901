//! Finite partial orders stored as reflexive comparability tables.
//!
//! A [`Poset`] keeps both the full order (one bit row per element) and its
//! transitive reduction, the cover relation. The same type is used for raw
//! input and for the poset of join irreducibles of a lattice.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{LatticeError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    /// `below[a]` holds every `b` with `b <= a`.
    below: Vec<FixedBitSet>,
    /// `above[a]` holds every `b` with `b >= a`.
    above: Vec<FixedBitSet>,
    lower_covers: Vec<Vec<usize>>,
    upper_covers: Vec<Vec<usize>>,
    covers: Vec<(usize, usize)>,
}

/// A declared cover that the transitive reduction dropped, either because it
/// is implied by other covers or because it was declared twice.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RedundantCover {
    pub upper: String,
    pub lower: String,
}

pub(crate) fn check_name(name: &str) -> Result<()> {
    if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == '#') {
        return Err(LatticeError::InvalidName(name.to_string()));
    }
    Ok(())
}

/// Builds a poset from element names and `(upper, lower)` cover pairs.
///
/// Names appearing only in cover pairs are declared implicitly, in order of
/// first appearance after the explicit names.
pub fn build_partial_order<S: AsRef<str>>(names: &[S], cover_pairs: &[(S, S)]) -> Result<Poset> {
    build_partial_order_with_report(names, cover_pairs).map(|(p, _)| p)
}

/// Like [`build_partial_order`], also returning the declared covers that were
/// reduced away.
pub fn build_partial_order_with_report<S: AsRef<str>>(
    names: &[S],
    cover_pairs: &[(S, S)],
) -> Result<(Poset, Vec<RedundantCover>)> {
    let mut all: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    for name in names {
        let name = name.as_ref();
        check_name(name)?;
        if index.insert(name.to_string(), all.len()).is_some() {
            return Err(LatticeError::DuplicateName(name.to_string()));
        }
        all.push(name.to_string());
    }
    let mut edges = Vec::with_capacity(cover_pairs.len());
    for (upper, lower) in cover_pairs {
        let mut id = |name: &str| -> Result<usize> {
            check_name(name)?;
            Ok(*index.entry(name.to_string()).or_insert_with(|| {
                all.push(name.to_string());
                all.len() - 1
            }))
        };
        let u = id(upper.as_ref())?;
        let l = id(lower.as_ref())?;
        edges.push((u, l));
    }

    let n = all.len();
    let mut succ = vec![Vec::new(); n];
    for &(u, l) in &edges {
        succ[u].push(l);
    }
    let order = topological_order(&all, &succ)?;

    // Lowers come last in `order`, so walk it backwards.
    let mut below = vec![FixedBitSet::with_capacity(n); n];
    for &a in order.iter().rev() {
        let mut row = FixedBitSet::with_capacity(n);
        row.insert(a);
        for &l in &succ[a] {
            row.union_with(&below[l]);
        }
        below[a] = row;
    }

    let poset = Poset::from_below(all, below);
    let mut redundant: Vec<RedundantCover> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for &(u, l) in &edges {
        if !seen.insert((u, l)) || !poset.covers_pair(u, l) {
            redundant.push(RedundantCover {
                upper: poset.names[u].clone(),
                lower: poset.names[l].clone(),
            });
        }
    }
    Ok((poset, redundant))
}

/// Kahn's algorithm over `upper -> lower` edges; on failure walks predecessor
/// links among the leftover nodes to name one concrete cycle.
fn topological_order(names: &[String], succ: &[Vec<usize>]) -> Result<Vec<usize>> {
    let n = names.len();
    let mut indeg = vec![0usize; n];
    for out in succ {
        for &l in out {
            indeg[l] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..n).rev().filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = stack.pop() {
        order.push(v);
        for &l in &succ[v] {
            indeg[l] -= 1;
            if indeg[l] == 0 {
                stack.push(l);
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }
    let mut pred = vec![None; n];
    for (u, out) in succ.iter().enumerate() {
        if indeg[u] == 0 {
            continue;
        }
        for &l in out {
            if indeg[l] > 0 && pred[l].is_none() {
                pred[l] = Some(u);
            }
        }
    }
    let start = (0..n).find(|&v| indeg[v] > 0).expect("leftover node");
    let mut pos = vec![usize::MAX; n];
    let mut walk = Vec::new();
    let mut v = start;
    while pos[v] == usize::MAX {
        pos[v] = walk.len();
        walk.push(v);
        v = pred[v].expect("leftover nodes have a leftover predecessor");
    }
    let mut cycle: Vec<String> = walk[pos[v]..].iter().map(|&i| names[i].clone()).collect();
    cycle.reverse();
    Err(LatticeError::CycleDetected(cycle))
}

impl Poset {
    /// Assembles a poset from a reflexive, antisymmetric, transitive
    /// `below` table. The caller guarantees those properties.
    pub(crate) fn from_below(names: Vec<String>, below: Vec<FixedBitSet>) -> Self {
        let n = names.len();
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for (a, row) in below.iter().enumerate() {
            for b in row.ones() {
                above[b].insert(a);
            }
        }
        let mut lower_covers = vec![Vec::new(); n];
        let mut upper_covers = vec![Vec::new(); n];
        let mut covers = Vec::new();
        for a in 0..n {
            let mut strict = below[a].clone();
            strict.set(a, false);
            let mut reach = FixedBitSet::with_capacity(n);
            for c in strict.ones() {
                let mut sc = below[c].clone();
                sc.set(c, false);
                reach.union_with(&sc);
            }
            strict.difference_with(&reach);
            for l in strict.ones() {
                lower_covers[a].push(l);
                upper_covers[l].push(a);
                covers.push((a, l));
            }
        }
        Self {
            names,
            below,
            above,
            lower_covers,
            upper_covers,
            covers,
        }
    }

    /// Builds the induced order on `keep` (in the given order), preserving names.
    pub fn induced(&self, keep: &[usize]) -> Poset {
        let names = keep.iter().map(|&i| self.names[i].clone()).collect();
        let k = keep.len();
        let below = keep
            .iter()
            .map(|&a| {
                let mut row = FixedBitSet::with_capacity(k);
                for (j, &b) in keep.iter().enumerate() {
                    if self.leq(b, a) {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        Poset::from_below(names, below)
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// `a <= b`.
    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.below[b].contains(a)
    }

    #[inline]
    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// Down-closure of `a`, including `a`.
    pub fn below(&self, a: usize) -> &FixedBitSet {
        &self.below[a]
    }

    /// Up-closure of `a`, including `a`.
    pub fn above(&self, a: usize) -> &FixedBitSet {
        &self.above[a]
    }

    pub fn lower_covers(&self, a: usize) -> &[usize] {
        &self.lower_covers[a]
    }

    pub fn upper_covers(&self, a: usize) -> &[usize] {
        &self.upper_covers[a]
    }

    /// Cover pairs `(upper, lower)`, sorted by upper then lower index.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn covers_pair(&self, upper: usize, lower: usize) -> bool {
        self.lower_covers[upper].binary_search(&lower).is_ok()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.size())
            .filter(|&a| self.lower_covers[a].is_empty())
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.size())
            .filter(|&a| self.upper_covers[a].is_empty())
            .collect()
    }

    /// A linear extension: every element appears after all elements below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.size()).collect();
        order.sort_by_key(|&a| (self.below[a].count_ones(..), a));
        order
    }
}
