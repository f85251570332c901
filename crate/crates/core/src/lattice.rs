//! Validated finite distributive lattices and the Birkhoff correspondence.
//!
//! Join irreducibles are the elements with at most one lower cover, so the
//! bottom element is one of them. With that convention every maximal chain
//! has exactly `|J|` elements, and `|L| - |J|` is the number of elements
//! that are proper joins.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::canon::{self, PosetCode};
use crate::error::{LatticeError, Result};
use crate::poset::Poset;

/// Default bound on the number of down-sets [`ideal_lattice`] will build.
pub const DEFAULT_MAX_ELEMENTS: usize = 1 << 20;

/// Dense index of a lattice element, in `[0, |L|)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementId(pub usize);

impl ElementId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for ElementId {
    fn from(i: usize) -> Self {
        ElementId(i)
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone)]
pub struct DistLattice {
    order: Poset,
    bottom: usize,
    top: usize,
    join: Vec<u32>,
    meet: Vec<u32>,
    join_irreducibles: Vec<usize>,
    /// Position of each element inside `join_irreducibles`, if it is one.
    ji_pos: Vec<Option<usize>>,
    downsets: Vec<FixedBitSet>,
}

fn least_in<'a>(set: &FixedBitSet, closure: impl Fn(usize) -> &'a FixedBitSet) -> Option<usize> {
    set.ones().find(|&u| set.is_subset(closure(u)))
}

/// Checks that `p` is a distributive lattice and fills its tables.
pub fn validate_distributive_lattice(p: &Poset) -> Result<DistLattice> {
    let n = p.size();
    if n == 0 {
        return Err(LatticeError::Empty);
    }
    let mut join = vec![0u32; n * n];
    let mut meet = vec![0u32; n * n];
    for a in 0..n {
        for b in a..n {
            let mut ub = p.above(a).clone();
            ub.intersect_with(p.above(b));
            let j = least_in(&ub, |u| p.above(u)).ok_or_else(|| {
                LatticeError::NotALattice(p.name(a).into(), p.name(b).into(), "least upper bound")
            })?;
            let mut lb = p.below(a).clone();
            lb.intersect_with(p.below(b));
            let m = least_in(&lb, |u| p.below(u)).ok_or_else(|| {
                LatticeError::NotALattice(
                    p.name(a).into(),
                    p.name(b).into(),
                    "greatest lower bound",
                )
            })?;
            join[a * n + b] = j as u32;
            join[b * n + a] = j as u32;
            meet[a * n + b] = m as u32;
            meet[b * n + a] = m as u32;
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = meet[a * n + b] as usize;
            for c in 0..n {
                let lhs = meet[a * n + join[b * n + c] as usize];
                let ac = meet[a * n + c] as usize;
                let rhs = join[ab * n + ac];
                if lhs != rhs {
                    return Err(LatticeError::NotDistributive(
                        p.name(a).into(),
                        p.name(b).into(),
                        p.name(c).into(),
                    ));
                }
            }
        }
    }
    Ok(DistLattice::assemble(p.clone(), join, meet))
}

/// Lattice of down-sets of `p` ordered by inclusion, capped at
/// [`DEFAULT_MAX_ELEMENTS`] elements.
pub fn ideal_lattice(p: &Poset) -> Result<DistLattice> {
    ideal_lattice_capped(p, DEFAULT_MAX_ELEMENTS)
}

/// Down-sets are produced by deciding elements in a linear extension: an
/// element may join the set only once everything below it has.
fn down_sets(p: &Poset, cap: usize) -> Result<Vec<FixedBitSet>> {
    let n = p.size();
    let order = p.linear_extension();
    let mut out = Vec::new();
    let mut cur = FixedBitSet::with_capacity(n);
    fn walk(
        p: &Poset,
        order: &[usize],
        k: usize,
        cur: &mut FixedBitSet,
        out: &mut Vec<FixedBitSet>,
        cap: usize,
    ) -> Result<()> {
        if k == order.len() {
            if out.len() == cap {
                return Err(LatticeError::SizeLimitExceeded {
                    limit: cap,
                    what: "lattice elements",
                });
            }
            out.push(cur.clone());
            return Ok(());
        }
        let x = order[k];
        walk(p, order, k + 1, cur, out, cap)?;
        if p.below(x).ones().all(|y| y == x || cur.contains(y)) {
            cur.insert(x);
            walk(p, order, k + 1, cur, out, cap)?;
            cur.set(x, false);
        }
        Ok(())
    }
    walk(p, &order, 0, &mut cur, &mut out, cap)?;
    Ok(out)
}

pub fn ideal_lattice_capped(p: &Poset, cap: usize) -> Result<DistLattice> {
    let mut sets: Vec<(usize, Vec<usize>, FixedBitSet)> = down_sets(p, cap)?
        .into_iter()
        .map(|s| (s.count_ones(..), s.ones().collect(), s))
        .collect();
    sets.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));

    let mut names: Vec<String> = sets
        .iter()
        .map(|(_, members, _)| {
            let inner: Vec<&str> = members.iter().map(|&i| p.name(i)).collect();
            format!("{{{}}}", inner.join(","))
        })
        .collect();
    let mut uniq = names.clone();
    uniq.sort();
    uniq.dedup();
    if uniq.len() != names.len() {
        names = (0..names.len()).map(|i| format!("d{i}")).collect();
    }

    let n = sets.len();
    let index: HashMap<&FixedBitSet, usize> =
        sets.iter().enumerate().map(|(i, s)| (&s.2, i)).collect();
    let mut join = vec![0u32; n * n];
    let mut meet = vec![0u32; n * n];
    let mut below = vec![FixedBitSet::with_capacity(n); n];
    for a in 0..n {
        for b in 0..n {
            let (sa, sb) = (&sets[a].2, &sets[b].2);
            let mut u = sa.clone();
            u.union_with(sb);
            let mut m = sa.clone();
            m.intersect_with(sb);
            join[a * n + b] = index[&u] as u32;
            meet[a * n + b] = index[&m] as u32;
            if sb.is_subset(sa) {
                below[a].insert(b);
            }
        }
    }
    Ok(DistLattice::assemble(
        Poset::from_below(names, below),
        join,
        meet,
    ))
}

/// The poset of nonzero join irreducibles of `l`, with names preserved.
pub fn birkhoff_poset(l: &DistLattice) -> Poset {
    let keep: Vec<usize> = l
        .join_irreducibles
        .iter()
        .copied()
        .filter(|&j| j != l.bottom)
        .collect();
    l.order.induced(&keep)
}

/// Canonical code of the Birkhoff dual: the isomorphism class of `l`.
pub fn lattice_code(l: &DistLattice) -> PosetCode {
    canon::canonical_code(&birkhoff_poset(l))
}

/// Lattice isomorphism, decided on the join-irreducible posets.
pub fn canonical_isomorphic(a: &DistLattice, b: &DistLattice) -> bool {
    a.size() == b.size()
        && a.join_irreducibles.len() == b.join_irreducibles.len()
        && a.edge_count() == b.edge_count()
        && lattice_code(a) == lattice_code(b)
}

impl DistLattice {
    /// Fills derived data for an order already known to be a distributive
    /// lattice with the given tables.
    pub(crate) fn assemble(order: Poset, join: Vec<u32>, meet: Vec<u32>) -> Self {
        let n = order.size();
        let bottom = (0..n)
            .find(|&a| order.lower_covers(a).is_empty())
            .expect("nonempty lattice");
        let top = (0..n)
            .find(|&a| order.upper_covers(a).is_empty())
            .expect("nonempty lattice");
        let join_irreducibles: Vec<usize> = (0..n)
            .filter(|&a| order.lower_covers(a).len() <= 1)
            .collect();
        let mut ji_pos = vec![None; n];
        for (i, &j) in join_irreducibles.iter().enumerate() {
            ji_pos[j] = Some(i);
        }
        let downsets = (0..n)
            .map(|a| {
                let mut bits = FixedBitSet::with_capacity(join_irreducibles.len());
                for (i, &j) in join_irreducibles.iter().enumerate() {
                    if order.leq(j, a) {
                        bits.insert(i);
                    }
                }
                bits
            })
            .collect();
        Self {
            order,
            bottom,
            top,
            join,
            meet,
            join_irreducibles,
            ji_pos,
            downsets,
        }
    }

    /// Restricts to `keep`, which must be sorted and closed under join and
    /// meet. Names are preserved; indices are renumbered in `keep` order.
    pub(crate) fn sublattice(&self, keep: &[usize]) -> DistLattice {
        let k = keep.len();
        let n = self.size();
        let mut local = vec![usize::MAX; n];
        for (i, &a) in keep.iter().enumerate() {
            local[a] = i;
        }
        let mut join = vec![0u32; k * k];
        let mut meet = vec![0u32; k * k];
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate() {
                let jn = local[self.join_idx(a, b)];
                let mt = local[self.meet_idx(a, b)];
                assert!(jn != usize::MAX && mt != usize::MAX, "subset not closed");
                join[i * k + j] = jn as u32;
                meet[i * k + j] = mt as u32;
            }
        }
        DistLattice::assemble(self.order.induced(keep), join, meet)
    }

    /// True when `set` is closed under the lattice operations.
    pub fn is_closed(&self, set: &[ElementId]) -> bool {
        let mut member = vec![false; self.size()];
        for e in set {
            member[e.0] = true;
        }
        set.iter().all(|a| {
            set.iter()
                .all(|b| member[self.join_idx(a.0, b.0)] && member[self.meet_idx(a.0, b.0)])
        })
    }

    pub fn size(&self) -> usize {
        self.order.size()
    }

    pub fn order(&self) -> &Poset {
        &self.order
    }

    pub fn names(&self) -> &[String] {
        self.order.names()
    }

    pub fn name(&self, a: ElementId) -> &str {
        self.order.name(a.0)
    }

    pub fn id_of(&self, name: &str) -> Result<ElementId> {
        self.order
            .index_of(name)
            .map(ElementId)
            .ok_or_else(|| LatticeError::UnknownElement(name.to_string()))
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.size()).map(ElementId)
    }

    pub fn bottom(&self) -> ElementId {
        ElementId(self.bottom)
    }

    pub fn top(&self) -> ElementId {
        ElementId(self.top)
    }

    #[inline]
    pub(crate) fn join_idx(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size() + b] as usize
    }

    #[inline]
    pub(crate) fn meet_idx(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size() + b] as usize
    }

    pub fn join(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId(self.join_idx(a.0, b.0))
    }

    pub fn meet(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId(self.meet_idx(a.0, b.0))
    }

    /// `(a ∨ b, a ∧ b)`.
    pub fn lattice_ops(&self, a: ElementId, b: ElementId) -> (ElementId, ElementId) {
        (self.join(a, b), self.meet(a, b))
    }

    #[inline]
    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.order.leq(a.0, b.0)
    }

    #[inline]
    pub fn comparable(&self, a: ElementId, b: ElementId) -> bool {
        self.order.comparable(a.0, b.0)
    }

    /// Join irreducibles sorted by index; the bottom element is included.
    pub fn join_irreducibles(&self) -> Vec<ElementId> {
        self.join_irreducibles
            .iter()
            .map(|&j| ElementId(j))
            .collect()
    }

    pub fn j_size(&self) -> usize {
        self.join_irreducibles.len()
    }

    pub fn is_join_irreducible(&self, a: ElementId) -> bool {
        self.ji_pos[a.0].is_some()
    }

    /// `I_a`: bits over positions in [`Self::join_irreducibles`] marking
    /// the join irreducibles below `a`.
    pub fn down_set(&self, a: ElementId) -> &FixedBitSet {
        &self.downsets[a.0]
    }

    /// Members of `I_a` as element ids.
    pub fn down_set_elements(&self, a: ElementId) -> Vec<ElementId> {
        self.downsets[a.0]
            .ones()
            .map(|i| ElementId(self.join_irreducibles[i]))
            .collect()
    }

    pub fn covers(&self, upper: ElementId, lower: ElementId) -> bool {
        self.order.covers_pair(upper.0, lower.0)
    }

    /// Hasse diagram edges `(upper, lower)`.
    pub fn cover_pairs(&self) -> impl Iterator<Item = (ElementId, ElementId)> + '_ {
        self.order
            .covers()
            .iter()
            .map(|&(u, l)| (ElementId(u), ElementId(l)))
    }

    pub fn edge_count(&self) -> usize {
        self.order.covers().len()
    }

    /// The unique join irreducible `b` with `I_upper = I_lower ∪ {b}`.
    pub fn cover_label(&self, upper: ElementId, lower: ElementId) -> Result<ElementId> {
        if !self.covers(upper, lower) {
            return Err(LatticeError::NotACover {
                upper: self.name(upper).into(),
                lower: self.name(lower).into(),
            });
        }
        let mut diff = self.downsets[upper.0].clone();
        diff.difference_with(&self.downsets[lower.0]);
        let mut ones = diff.ones();
        let pos = ones.next().expect("cover adds a join irreducible");
        debug_assert!(ones.next().is_none());
        Ok(ElementId(self.join_irreducibles[pos]))
    }

    /// Smallest and largest number of elements on a maximal chain.
    pub fn chain_length_range(&self) -> (usize, usize) {
        let mut lo = vec![usize::MAX; self.size()];
        let mut hi = vec![0usize; self.size()];
        for a in self.order.linear_extension() {
            let lc = self.order.lower_covers(a);
            if lc.is_empty() {
                lo[a] = 1;
                hi[a] = 1;
            } else {
                lo[a] = lc.iter().map(|&l| lo[l]).min().unwrap() + 1;
                hi[a] = lc.iter().map(|&l| hi[l]).max().unwrap() + 1;
            }
        }
        (lo[self.top], hi[self.top])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::poset::build_partial_order;

    #[test]
    fn diamond_has_three_join_irreducibles() {
        let d = diamond();
        let names: Vec<&str> = d.join_irreducibles().iter().map(|&j| d.name(j)).collect();
        assert_eq!(names, ["bot", "a", "b"]);
    }

    #[test]
    fn m3_rejected_with_atom_triple() {
        let p = build_partial_order(
            &[] as &[&str],
            &[
                ("a", "bot"),
                ("b", "bot"),
                ("c", "bot"),
                ("top", "a"),
                ("top", "b"),
                ("top", "c"),
            ],
        )
        .unwrap();
        let err = validate_distributive_lattice(&p).unwrap_err();
        let LatticeError::NotDistributive(x, y, z) = err else {
            panic!("{err:?}")
        };
        let mut t = vec![x, y, z];
        t.sort();
        assert_eq!(t, ["a", "b", "c"]);
    }

    #[test]
    fn n5_rejected() {
        let p = build_partial_order(
            &[] as &[&str],
            &[
                ("a", "bot"),
                ("c", "a"),
                ("top", "c"),
                ("b", "bot"),
                ("top", "b"),
            ],
        )
        .unwrap();
        assert!(matches!(
            validate_distributive_lattice(&p),
            Err(LatticeError::NotDistributive(..))
        ));
    }

    #[test]
    fn two_maxima_not_a_lattice() {
        let p = build_partial_order(&[] as &[&str], &[("a", "bot"), ("b", "bot")]).unwrap();
        assert!(matches!(
            validate_distributive_lattice(&p),
            Err(LatticeError::NotALattice(_, _, "least upper bound"))
        ));
    }

    #[test]
    fn bowtie_not_a_lattice() {
        let p = build_partial_order(
            &[] as &[&str],
            &[
                ("c", "a"),
                ("c", "b"),
                ("d", "a"),
                ("d", "b"),
                ("a", "z"),
                ("b", "z"),
                ("t", "c"),
                ("t", "d"),
            ],
        )
        .unwrap();
        assert!(matches!(
            validate_distributive_lattice(&p),
            Err(LatticeError::NotALattice(..))
        ));
    }

    #[test]
    fn empty_rejected() {
        let p = build_partial_order::<&str>(&[], &[]).unwrap();
        assert_eq!(
            validate_distributive_lattice(&p).unwrap_err(),
            LatticeError::Empty
        );
    }

    #[test]
    fn ops_on_b3() {
        let b3 = b3();
        let one = b3.id_of("1").unwrap();
        let two = b3.id_of("2").unwrap();
        let (j, m) = b3.lattice_ops(one, two);
        assert_eq!(b3.name(j), "12");
        assert_eq!(b3.name(m), "e");
        for a in b3.elements() {
            assert_eq!(b3.lattice_ops(a, a), (a, a));
        }
    }

    #[test]
    fn ops_on_diamond() {
        let d = diamond();
        let (j, m) = d.lattice_ops(d.id_of("a").unwrap(), d.id_of("b").unwrap());
        assert_eq!((d.name(j), d.name(m)), ("top", "bot"));
    }

    #[test]
    fn comparable_ops_return_endpoints() {
        let c = chain(4);
        for a in c.elements() {
            for b in c.elements() {
                if c.leq(a, b) {
                    assert_eq!(c.lattice_ops(a, b), (b, a));
                }
            }
        }
    }

    #[test]
    fn chain_join_irreducibles() {
        assert_eq!(chain(3).j_size(), 3);
    }

    #[test]
    fn down_sets_on_diamond_and_b3() {
        let d = diamond();
        let names = |l: &DistLattice, a: &str| -> Vec<String> {
            l.down_set_elements(l.id_of(a).unwrap())
                .into_iter()
                .map(|e| l.name(e).to_string())
                .collect()
        };
        assert_eq!(names(&d, "bot"), ["bot"]);
        assert_eq!(names(&d, "a"), ["bot", "a"]);
        let b = b3();
        assert_eq!(names(&b, "12"), ["e", "1", "2"]);
    }

    #[test]
    fn cover_labels() {
        let b = b3();
        let lbl = b
            .cover_label(b.id_of("12").unwrap(), b.id_of("1").unwrap())
            .unwrap();
        assert_eq!(b.name(lbl), "2");
        let d = diamond();
        let lbl = d
            .cover_label(d.id_of("top").unwrap(), d.id_of("a").unwrap())
            .unwrap();
        assert_eq!(d.name(lbl), "b");
        let c = chain(3);
        assert_eq!(
            c.cover_label(ElementId(1), ElementId(0)).unwrap(),
            ElementId(1)
        );
        assert!(matches!(
            c.cover_label(ElementId(2), ElementId(0)),
            Err(LatticeError::NotACover { .. })
        ));
    }

    #[test]
    fn ideal_lattice_examples() {
        let anti2 = build_partial_order::<&str>(&["p", "q"], &[]).unwrap();
        let l = ideal_lattice(&anti2).unwrap();
        assert!(canonical_isomorphic(&l, &diamond()));

        let anti3 = build_partial_order::<&str>(&["p", "q", "r"], &[]).unwrap();
        let l = ideal_lattice(&anti3).unwrap();
        assert_eq!(l.size(), 8);
        assert!(canonical_isomorphic(&l, &b3()));

        let v = build_partial_order(&["p", "q", "r"], &[("r", "p"), ("r", "q")]).unwrap();
        let l = ideal_lattice(&v).unwrap();
        assert_eq!(l.names(), ["{}", "{p}", "{q}", "{p,q}", "{p,q,r}"]);
        assert_eq!(l.bottom(), ElementId(0));
        assert_eq!(l.top(), ElementId(4));
    }

    #[test]
    fn ideal_lattice_cap() {
        let anti = build_partial_order::<&str>(&["p", "q", "r"], &[]).unwrap();
        assert_eq!(
            ideal_lattice_capped(&anti, 7).unwrap_err(),
            LatticeError::SizeLimitExceeded {
                limit: 7,
                what: "lattice elements"
            }
        );
        assert!(ideal_lattice_capped(&anti, 8).is_ok());
    }

    #[test]
    fn birkhoff_examples() {
        let p = birkhoff_poset(&diamond());
        assert_eq!(p.size(), 2);
        assert!(p.covers().is_empty());
        let p = birkhoff_poset(&chain(3));
        assert_eq!(p.size(), 2);
        assert_eq!(p.covers().len(), 1);
        let p = birkhoff_poset(&b3());
        assert_eq!(p.size(), 3);
        assert!(p.covers().is_empty());
    }

    #[test]
    fn isomorphism_examples() {
        let anti2 = build_partial_order::<&str>(&["p", "q"], &[]).unwrap();
        assert!(canonical_isomorphic(
            &diamond(),
            &ideal_lattice(&anti2).unwrap()
        ));
        assert!(!canonical_isomorphic(&chain(3), &diamond()));
        let c3 = build_partial_order(&[] as &[&str], &[("b", "a"), ("c", "b")]).unwrap();
        assert!(!canonical_isomorphic(&b3(), &ideal_lattice(&c3).unwrap()));
    }

    #[test]
    fn chain_lengths_equal_j() {
        for l in [diamond(), b3(), chain(5), v5()] {
            assert_eq!(l.chain_length_range(), (l.j_size(), l.j_size()));
        }
    }
}
