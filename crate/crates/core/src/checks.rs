//! The theorem suite: one registered check per proved statement about
//! distributive lattices, run against a single lattice at a time.

use crate::canon::PosetCode;
use crate::fixtures;
use crate::hibi::{ideal_generators, minimality_certificate, try_complete_intersection_verdict};
use crate::invariants::{
    enumerate_diamonds, identity_count, lambda_f, pair_scan_count, InvariantRecord,
};
use crate::lattice::{
    birkhoff_poset, canonical_isomorphic, ideal_lattice, lattice_code, DistLattice, ElementId,
};
use crate::registry::{Named, Registry};
use crate::structure::{
    classify_ci_shape, concatenate, cut_elements, decompose_thick, is_thick,
    maximal_join_irreducibles, prune, CiShape, Decomposition, FactorClass,
};

/// Data shared by all checks on one lattice, computed once.
pub struct SuiteContext<'a> {
    pub lattice: &'a DistLattice,
    pub record: InvariantRecord,
    pub decomposition: Decomposition,
    pub shape: CiShape,
}

impl<'a> SuiteContext<'a> {
    pub fn new(lattice: &'a DistLattice) -> Self {
        Self {
            lattice,
            record: InvariantRecord::compute(lattice),
            decomposition: decompose_thick(lattice),
            shape: classify_ci_shape(lattice),
        }
    }
}

pub trait TheoremCheck: Named + Send + Sync {
    fn run(&self, cx: &SuiteContext<'_>) -> bool;
}

macro_rules! check {
    ($ty:ident, $name:literal, |$cx:ident| $body:expr) => {
        pub struct $ty;
        impl Named for $ty {
            fn name(&self) -> &'static str {
                $name
            }
        }
        impl TheoremCheck for $ty {
            fn run(&self, $cx: &SuiteContext<'_>) -> bool {
                $body
            }
        }
    };
}

check!(IdentityEq, "identity_eq", |cx| {
    let r = &cx.record;
    (r.size * r.size) as u64 == 2 * r.n + r.f_sum
});

check!(CountAgreement, "count_agreement", |cx| {
    let l = cx.lattice;
    let scan = pair_scan_count(l);
    scan == identity_count(l) && scan == enumerate_diamonds(l).len() as u64
});

check!(LowerRank, "lower_rank", |cx| cx.record.n as i64
    >= cx.record.lower_rank);

check!(LowerEdge, "lower_edge", |cx| cx.record.n as i64
    >= cx.record.lower_edge);

check!(Upper, "upper", |cx| 2 * cx.record.n <= cx.record.upper.0);

check!(FGeqJ, "f_geq_j", |cx| {
    cx.record.f_vector.iter().all(|&f| f >= cx.record.j_size)
});

check!(LambdaSublattice, "lambda_sublattice", |cx| {
    let l = cx.lattice;
    l.elements().all(|d| {
        let (lambda, _) = lambda_f(l, d);
        let intervals: Vec<ElementId> = l
            .elements()
            .filter(|&x| {
                (l.leq(l.bottom(), x) && l.leq(x, d)) || (l.leq(d, x) && l.leq(x, l.top()))
            })
            .collect();
        lambda == intervals && l.is_closed(&lambda)
    })
});

check!(JoinPrime, "join_prime", |cx| {
    let l = cx.lattice;
    l.join_irreducibles().into_iter().all(|b| {
        l.elements().all(|t| {
            l.elements()
                .all(|d| !l.leq(b, l.join(t, d)) || l.leq(b, t) || l.leq(b, d))
        })
    })
});

check!(CoverUnique, "cover_unique", |cx| {
    let l = cx.lattice;
    let ji = l.join_irreducibles();
    l.cover_pairs().all(|(a, g)| {
        let mut diff = l.down_set(a).clone();
        diff.difference_with(l.down_set(g));
        if diff.count_ones(..) != 1 || !l.down_set(g).is_subset(l.down_set(a)) {
            return false;
        }
        let expected = ji[diff.ones().next().unwrap()];
        match l.cover_label(a, g) {
            Ok(b) => b == expected && (!l.is_join_irreducible(a) || b == a),
            Err(_) => false,
        }
    })
});

check!(ChainLength, "chain_length", |cx| {
    let j = cx.lattice.j_size();
    cx.lattice.chain_length_range() == (j, j)
});

check!(DownsetOrder, "downset_order", |cx| {
    let l = cx.lattice;
    l.elements().all(|a| {
        l.elements()
            .all(|b| l.leq(a, b) == l.down_set(a).is_subset(l.down_set(b)))
    })
});

check!(PruneTheorem, "prune_theorem", |cx| {
    let l = cx.lattice;
    if l.size() < 2 {
        return true;
    }
    let maxima = maximal_join_irreducibles(l);
    !maxima.is_empty()
        && maxima.into_iter().all(|alpha| {
            let Ok(pruned) = prune(l, alpha) else {
                return false;
            };
            let kept: Vec<ElementId> = l.elements().filter(|&b| !l.leq(alpha, b)).collect();
            let mut expected: Vec<&str> = l
                .join_irreducibles()
                .into_iter()
                .filter(|&j| j != alpha)
                .map(|j| l.name(j))
                .collect();
            let mut got: Vec<&str> = pruned
                .join_irreducibles()
                .into_iter()
                .map(|j| pruned.name(j))
                .collect();
            expected.sort_unstable();
            got.sort_unstable();
            l.is_closed(&kept) && pruned.size() == kept.len() && got == expected
        })
});

check!(ThickIffIndecomposable, "thick_iff_indecomposable", |cx| {
    let l = cx.lattice;
    let d = &cx.decomposition;
    if l.size() < 2 {
        return d.factors.len() == 1;
    }
    let factors_ok = d
        .factors
        .iter()
        .all(|f| f.size() >= 2 && (f.size() < 3 || is_thick(f)));
    let cuts_ok = d.cut_elements == cut_elements(l) && d.factors.len() == d.cut_elements.len() + 1;
    factors_ok && cuts_ok && (is_thick(l) == (d.factors.len() == 1))
});

check!(StrictForward, "strict_forward", |cx| {
    let l = cx.lattice;
    let r = &cx.record;
    if !r.thick || l.size() < 2 {
        return true;
    }
    match FactorClass::of(l) {
        FactorClass::Diamond | FactorClass::TwoChain => true,
        _ => r.n as i64 > r.lower_rank,
    }
});

check!(EqualityIff, "equality_iff", |cx| {
    (cx.record.n as i64 == cx.record.lower_rank) == cx.shape.is_equality_case
});

check!(CiIff, "ci_iff", |cx| {
    match try_complete_intersection_verdict(cx.lattice) {
        Ok(v) => v.is_complete_intersection == cx.shape.is_equality_case,
        Err(_) => false,
    }
});

check!(DecomposeRoundtrip, "decompose_roundtrip", |cx| {
    canonical_isomorphic(&cx.decomposition.recompose(), cx.lattice)
});

check!(AdditivitySpot, "additivity_spot", |cx| {
    let l = cx.lattice;
    let d = fixtures::diamond();
    [concatenate(l, &d), concatenate(&d, l)].iter().all(|m| {
        pair_scan_count(m) == cx.record.n + 1
            && m.edge_count() == cx.record.e + 4
            && m.j_size() == cx.record.j_size + 3 - 1
            && m.size() == cx.record.size + 4 - 1
    })
});

check!(Minimality, "minimality", |cx| {
    let l = cx.lattice;
    let gens = ideal_generators(l);
    gens.len() as u64 == cx.record.n
        && minimality_certificate(&gens)
        && gens.iter().all(|g| {
            let (t, d) = g.plus_pair;
            t < d && !l.comparable(t, d) && l.lattice_ops(t, d) == g.minus_pair
        })
});

check!(BirkhoffRoundtrip, "birkhoff_roundtrip", |cx| {
    match ideal_lattice(&birkhoff_poset(cx.lattice)) {
        Ok(back) => canonical_isomorphic(&back, cx.lattice),
        Err(_) => false,
    }
});

/// All proved-statement checks, in reporting order.
pub fn theorem_checks() -> Registry<dyn TheoremCheck> {
    let mut r: Registry<dyn TheoremCheck> = Registry::new("check");
    r.register(Box::new(IdentityEq))
        .register(Box::new(CountAgreement))
        .register(Box::new(LowerRank))
        .register(Box::new(LowerEdge))
        .register(Box::new(Upper))
        .register(Box::new(FGeqJ))
        .register(Box::new(LambdaSublattice))
        .register(Box::new(JoinPrime))
        .register(Box::new(CoverUnique))
        .register(Box::new(ChainLength))
        .register(Box::new(DownsetOrder))
        .register(Box::new(PruneTheorem))
        .register(Box::new(ThickIffIndecomposable))
        .register(Box::new(StrictForward))
        .register(Box::new(EqualityIff))
        .register(Box::new(CiIff))
        .register(Box::new(DecomposeRoundtrip))
        .register(Box::new(AdditivitySpot))
        .register(Box::new(Minimality))
        .register(Box::new(BirkhoffRoundtrip));
    r
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConjectureStatus {
    Holds,
    Violated,
    /// The lattice is not thick.
    NotApplicable,
}

impl ConjectureStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ConjectureStatus::Holds => "holds",
            ConjectureStatus::Violated => "violated",
            ConjectureStatus::NotApplicable => "not-applicable",
        }
    }
}

#[derive(Debug, Clone)]
pub struct TheoremReport {
    pub lattice_id: PosetCode,
    pub record: InvariantRecord,
    pub complete_intersection: bool,
    /// `(check name, passed)` in registry order.
    pub results: Vec<(&'static str, bool)>,
    pub conjecture: ConjectureStatus,
}

impl TheoremReport {
    pub fn passed(&self, check: &str) -> Option<bool> {
        self.results
            .iter()
            .find(|(n, _)| *n == check)
            .map(|&(_, ok)| ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.results.iter().filter(|(_, ok)| !ok).map(|&(n, _)| n)
    }

    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|&(_, ok)| ok)
    }
}

pub fn verify_with(checks: &Registry<dyn TheoremCheck>, l: &DistLattice) -> TheoremReport {
    let cx = SuiteContext::new(l);
    let results = checks.iter().map(|c| (c.name(), c.run(&cx))).collect();
    let conjecture = match cx.record.conjecture_holds() {
        None => ConjectureStatus::NotApplicable,
        Some(true) => ConjectureStatus::Holds,
        Some(false) => ConjectureStatus::Violated,
    };
    TheoremReport {
        lattice_id: lattice_code(l),
        complete_intersection: cx.record.n as i64 == cx.record.lower_rank,
        record: cx.record,
        results,
        conjecture,
    }
}

/// Runs every registered check on `l`.
pub fn verify_theorem_suite(l: &DistLattice) -> TheoremReport {
    verify_with(&theorem_checks(), l)
}
