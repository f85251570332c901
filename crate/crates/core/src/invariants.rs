//! The non-comparable pair count `n(L)`, the comparability counts `f(δ)`,
//! diamonds, and the bound expressions built from them.

use std::fmt;

use crate::error::TheoremViolation;
use crate::lattice::{DistLattice, ElementId};
use crate::registry::{Named, Registry};
use crate::structure::is_thick;

/// `Λ_δ` (elements comparable to `delta`, in index order) and `f(δ) = |Λ_δ|`.
pub fn lambda_f(l: &DistLattice, delta: ElementId) -> (Vec<ElementId>, usize) {
    let mut set = l.order().below(delta.index()).clone();
    set.union_with(l.order().above(delta.index()));
    let lambda: Vec<ElementId> = set.ones().map(ElementId).collect();
    let f = lambda.len();
    (lambda, f)
}

pub fn f_vector(l: &DistLattice) -> Vec<usize> {
    l.elements().map(|d| lambda_f(l, d).1).collect()
}

/// Unordered non-comparable pairs by scanning every pair.
pub fn pair_scan_count(l: &DistLattice) -> u64 {
    let mut n = 0;
    for a in l.elements() {
        for b in l.elements().skip(a.index() + 1) {
            if !l.comparable(a, b) {
                n += 1;
            }
        }
    }
    n
}

/// `(|L|² − Σ f(δ)) / 2`.
pub fn identity_count(l: &DistLattice) -> u64 {
    let size = l.size() as u64;
    let f_sum: u64 = f_vector(l).iter().map(|&f| f as u64).sum();
    let twice = size * size - f_sum;
    debug_assert!(twice.is_multiple_of(2));
    twice / 2
}

/// `n(L)`. Both the pair scan and the identity are evaluated and must agree.
pub fn noncomparable_count(l: &DistLattice) -> u64 {
    let scan = pair_scan_count(l);
    let ident = identity_count(l);
    assert_eq!(scan, ident, "pair scan and identity disagree");
    scan
}

/// Interchangeable ways to compute `n(L)`.
pub trait PairCounter: Named + Send + Sync {
    fn count(&self, l: &DistLattice) -> u64;
}

pub struct PairScan;
pub struct IdentityFormula;
pub struct DiamondList;

impl Named for PairScan {
    fn name(&self) -> &'static str {
        "pair-scan"
    }
}
impl PairCounter for PairScan {
    fn count(&self, l: &DistLattice) -> u64 {
        pair_scan_count(l)
    }
}

impl Named for IdentityFormula {
    fn name(&self) -> &'static str {
        "identity"
    }
}
impl PairCounter for IdentityFormula {
    fn count(&self, l: &DistLattice) -> u64 {
        identity_count(l)
    }
}

impl Named for DiamondList {
    fn name(&self) -> &'static str {
        "diamonds"
    }
}
impl PairCounter for DiamondList {
    fn count(&self, l: &DistLattice) -> u64 {
        enumerate_diamonds(l).len() as u64
    }
}

pub fn counters() -> Registry<dyn PairCounter> {
    let mut r: Registry<dyn PairCounter> = Registry::new("counter");
    r.register(Box::new(PairScan))
        .register(Box::new(IdentityFormula))
        .register(Box::new(DiamondList));
    r
}

/// `{θ, δ, θ∨δ, θ∧δ}` for a non-comparable pair, `theta` having the smaller index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diamond {
    pub theta: ElementId,
    pub delta: ElementId,
    pub join: ElementId,
    pub meet: ElementId,
}

impl Diamond {
    pub fn elements(&self) -> [ElementId; 4] {
        [self.theta, self.delta, self.join, self.meet]
    }

    /// The four elements as a sorted set.
    pub fn support(&self) -> [ElementId; 4] {
        let mut s = self.elements();
        s.sort();
        s
    }
}

pub fn enumerate_diamonds(l: &DistLattice) -> Vec<Diamond> {
    let mut out = Vec::new();
    for a in l.elements() {
        for b in l.elements().skip(a.index() + 1) {
            if !l.comparable(a, b) {
                let (join, meet) = l.lattice_ops(a, b);
                out.push(Diamond {
                    theta: a,
                    delta: b,
                    join,
                    meet,
                });
            }
        }
    }
    out
}

/// A non-negative value held as twice itself so halves stay exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Halves(pub u64);

impl fmt::Display for Halves {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}.5", self.0 / 2)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantRecord {
    pub size: usize,
    pub j_size: usize,
    pub n: u64,
    pub e: usize,
    pub f_vector: Vec<usize>,
    pub f_sum: u64,
    /// `|L| − |J|`
    pub lower_rank: i64,
    /// `e − |L| + 1`
    pub lower_edge: i64,
    /// `(|L| − |J|)·|L| / 2`
    pub upper: Halves,
    /// `e − |J|`
    pub conjecture_rhs: i64,
    pub thick: bool,
}

impl InvariantRecord {
    /// Computes every field without checking any bound.
    pub fn compute(l: &DistLattice) -> Self {
        let size = l.size();
        let j_size = l.j_size();
        let e = l.edge_count();
        let f_vector = f_vector(l);
        let f_sum = f_vector.iter().map(|&f| f as u64).sum();
        let (s, j, e_i) = (size as i64, j_size as i64, e as i64);
        Self {
            size,
            j_size,
            n: pair_scan_count(l),
            e,
            f_vector,
            f_sum,
            lower_rank: s - j,
            lower_edge: e_i - s + 1,
            upper: Halves(((s - j) * s) as u64),
            conjecture_rhs: e_i - j,
            thick: is_thick(l),
        }
    }

    /// The proved relations among the fields.
    pub fn check(&self) -> Result<(), TheoremViolation> {
        let sq = (self.size * self.size) as u64;
        if sq < self.f_sum || sq - self.f_sum != 2 * self.n {
            return Err(TheoremViolation::new(
                "identity_eq",
                format!("|L|²={sq}, Σf={}, n={}", self.f_sum, self.n),
            ));
        }
        let n = self.n as i64;
        if n < self.lower_rank {
            return Err(TheoremViolation::new(
                "lower_rank",
                format!("n={} < |L|-|J|={}", self.n, self.lower_rank),
            ));
        }
        if n < self.lower_edge {
            return Err(TheoremViolation::new(
                "lower_edge",
                format!("n={} < e-|L|+1={}", self.n, self.lower_edge),
            ));
        }
        if 2 * self.n > self.upper.0 {
            return Err(TheoremViolation::new(
                "upper",
                format!("n={} > {}", self.n, self.upper),
            ));
        }
        if let Some(f) = self.f_vector.iter().find(|&&f| f < self.j_size) {
            return Err(TheoremViolation::new(
                "f_geq_j",
                format!("f={f} < |J|={}", self.j_size),
            ));
        }
        Ok(())
    }

    /// `Some(n ≥ e − |J|)` on thick lattices, `None` otherwise.
    pub fn conjecture_holds(&self) -> Option<bool> {
        self.thick.then_some(self.n as i64 >= self.conjecture_rhs)
    }
}

pub fn try_bounds_report(l: &DistLattice) -> Result<InvariantRecord, TheoremViolation> {
    let rec = InvariantRecord::compute(l);
    rec.check()?;
    Ok(rec)
}

/// Every field of [`InvariantRecord`]. Panics if a proved bound fails.
pub fn bounds_report(l: &DistLattice) -> InvariantRecord {
    try_bounds_report(l).unwrap_or_else(|v| panic!("{v}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    fn names(l: &DistLattice, ids: &[ElementId]) -> Vec<String> {
        ids.iter().map(|&i| l.name(i).to_string()).collect()
    }

    #[test]
    fn lambda_examples() {
        let d = diamond();
        let (lam, f) = lambda_f(&d, d.bottom());
        assert_eq!((lam.len(), f), (4, 4));
        let (lam, f) = lambda_f(&d, d.id_of("a").unwrap());
        assert_eq!(names(&d, &lam), ["bot", "a", "top"]);
        assert_eq!(f, 3);
        let b = b3();
        let (lam, f) = lambda_f(&b, b.id_of("1").unwrap());
        assert_eq!(names(&b, &lam), ["e", "1", "12", "13", "123"]);
        assert_eq!(f, 5);
    }

    #[test]
    fn counts() {
        assert_eq!(noncomparable_count(&chain(6)), 0);
        assert_eq!(noncomparable_count(&diamond()), 1);
        assert_eq!(noncomparable_count(&b3()), 9);
    }

    #[test]
    fn counters_agree() {
        let reg = counters();
        assert_eq!(reg.names(), ["pair-scan", "identity", "diamonds"]);
        for l in [diamond(), b3(), v5(), diamond_diamond(), chain(4)] {
            let vals: Vec<u64> = reg.iter().map(|c| c.count(&l)).collect();
            assert!(vals.windows(2).all(|w| w[0] == w[1]), "{vals:?}");
        }
    }

    #[test]
    fn diamonds_listed() {
        assert!(enumerate_diamonds(&chain(3)).is_empty());
        let d = diamond();
        let ds = enumerate_diamonds(&d);
        assert_eq!(ds.len(), 1);
        assert_eq!(names(&d, &ds[0].elements()), ["a", "b", "top", "bot"]);
        let b = b3();
        let ds = enumerate_diamonds(&b);
        assert_eq!(ds.len(), 9);
        let first = ds
            .iter()
            .find(|x| b.name(x.theta) == "1" && b.name(x.delta) == "2")
            .unwrap();
        assert_eq!(names(&b, &[first.join, first.meet]), ["12", "e"]);
        let mut supports: Vec<_> = ds.iter().map(|x| x.support()).collect();
        supports.sort();
        supports.dedup();
        assert_eq!(supports.len(), 9);
    }

    #[test]
    fn diamond_record() {
        let r = bounds_report(&diamond());
        assert_eq!((r.n, r.e, r.j_size, r.f_sum), (1, 4, 3, 14));
        assert_eq!((r.lower_rank, r.lower_edge, r.conjecture_rhs), (1, 1, 1));
        assert_eq!(r.upper, Halves(4));
        assert!(r.thick);
        assert_eq!(r.conjecture_holds(), Some(true));
    }

    #[test]
    fn chain_record() {
        let r = bounds_report(&chain(3));
        assert_eq!((r.n, r.lower_rank, r.lower_edge), (0, 0, 0));
        assert_eq!(r.upper, Halves(0));
        assert!(!r.thick);
        assert_eq!(r.conjecture_holds(), None);
    }

    #[test]
    fn b3_record() {
        let r = bounds_report(&b3());
        assert_eq!((r.n, r.e, r.j_size, r.f_sum), (9, 12, 4, 46));
        assert_eq!((r.lower_rank, r.lower_edge, r.conjecture_rhs), (4, 5, 8));
        assert_eq!(r.upper.to_string(), "16");
        assert!(r.thick);
    }

    #[test]
    fn half_upper_renders() {
        let r = bounds_report(&v5());
        assert_eq!(r.upper.to_string(), "2.5");
    }

    #[test]
    fn check_flags_bad_record() {
        let mut r = InvariantRecord::compute(&b3());
        r.n = 3;
        assert_eq!(r.check().unwrap_err().check, "identity_eq");
        r.f_sum = 64 - 6;
        assert_eq!(r.check().unwrap_err().check, "lower_rank");
    }
}
