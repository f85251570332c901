//! Thickness, concatenation `L1 # L2`, decomposition into thick factors,
//! pruning at a maximal join irreducible, and the diamond/chain classifier.

use std::collections::HashSet;
use std::fmt;

use crate::error::{LatticeError, Result};
use crate::invariants::{lambda_f, pair_scan_count};
use crate::lattice::{DistLattice, ElementId};

/// Interior elements comparable to every element of `l`, bottom-up.
pub fn cut_elements(l: &DistLattice) -> Vec<ElementId> {
    let mut cuts: Vec<ElementId> = l
        .elements()
        .filter(|&d| d != l.bottom() && d != l.top() && lambda_f(l, d).1 == l.size())
        .collect();
    cuts.sort_by_key(|&c| l.order().below(c.index()).count_ones(..));
    cuts
}

/// Every element other than the bottom and top has a non-comparable partner.
/// Lattices with at most two elements are thick.
pub fn is_thick(l: &DistLattice) -> bool {
    l.elements()
        .filter(|&d| d != l.bottom() && d != l.top())
        .all(|d| lambda_f(l, d).1 < l.size())
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    /// Thick factors, bottom factor first.
    pub factors: Vec<DistLattice>,
    /// Elements shared by consecutive factors.
    pub cut_elements: Vec<ElementId>,
    /// For each factor, its elements as ids of the original lattice.
    pub embeddings: Vec<Vec<ElementId>>,
}

impl Decomposition {
    /// Concatenates the factors back together in order.
    pub fn recompose(&self) -> DistLattice {
        let mut it = self.factors.iter();
        let first = it.next().expect("at least one factor").clone();
        it.fold(first, |acc, f| concatenate(&acc, f))
    }
}

/// Cuts `l` at every interior element comparable to all of `l`; the factors
/// are the closed intervals between consecutive cut points.
pub fn decompose_thick(l: &DistLattice) -> Decomposition {
    let cuts = cut_elements(l);
    if l.size() == 1 {
        return Decomposition {
            factors: vec![l.clone()],
            cut_elements: cuts,
            embeddings: vec![vec![l.bottom()]],
        };
    }
    let mut points = vec![l.bottom()];
    points.extend(cuts.iter().copied());
    points.push(l.top());
    let mut factors = Vec::with_capacity(points.len() - 1);
    let mut embeddings = Vec::with_capacity(points.len() - 1);
    for w in points.windows(2) {
        let keep: Vec<usize> = l
            .elements()
            .filter(|&x| l.leq(w[0], x) && l.leq(x, w[1]))
            .map(|x| x.index())
            .collect();
        factors.push(l.sublattice(&keep));
        embeddings.push(keep.into_iter().map(ElementId).collect());
    }
    Decomposition {
        factors,
        cut_elements: cuts,
        embeddings,
    }
}

/// `lower # upper`: the top of `lower` is glued to the bottom of `upper`.
///
/// The glued element keeps the name from `lower`. Other names from `upper`
/// that collide get `'` appended until unique.
pub fn concatenate(lower: &DistLattice, upper: &DistLattice) -> DistLattice {
    let n1 = lower.size();
    let glue = lower.top().index();
    let ub = upper.bottom().index();

    let mut names: Vec<String> = lower.names().to_vec();
    let mut taken: HashSet<String> = names.iter().cloned().collect();
    // image of each `upper` element in the result
    let mut image = vec![0usize; upper.size()];
    let mut preimage: Vec<Option<usize>> = vec![None; n1];
    preimage[glue] = Some(ub);
    for x in upper.elements() {
        if x.index() == ub {
            image[ub] = glue;
            continue;
        }
        let mut name = upper.name(x).to_string();
        while taken.contains(&name) {
            name.push('\'');
        }
        taken.insert(name.clone());
        image[x.index()] = names.len();
        names.push(name);
        preimage.push(Some(x.index()));
    }

    let n = names.len();
    let leq = |a: usize, b: usize| -> bool {
        match (a < n1, b < n1) {
            (true, true) => lower.order().leq(a, b),
            (true, false) => true,
            (false, true) => false,
            (false, false) => upper
                .order()
                .leq(preimage[a].unwrap(), preimage[b].unwrap()),
        }
    };
    let mut below = vec![fixedbitset::FixedBitSet::with_capacity(n); n];
    for (b, row) in below.iter_mut().enumerate() {
        for a in 0..n {
            if leq(a, b) {
                row.insert(a);
            }
        }
    }
    let mut join = vec![0u32; n * n];
    let mut meet = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            let (j, m) = if leq(a, b) {
                (b, a)
            } else if leq(b, a) {
                (a, b)
            } else if a < n1 && b < n1 {
                (
                    lower.join(ElementId(a), ElementId(b)).index(),
                    lower.meet(ElementId(a), ElementId(b)).index(),
                )
            } else {
                let (pa, pb) = (
                    ElementId(preimage[a].unwrap()),
                    ElementId(preimage[b].unwrap()),
                );
                (
                    image[upper.join(pa, pb).index()],
                    image[upper.meet(pa, pb).index()],
                )
            };
            join[a * n + b] = j as u32;
            meet[a * n + b] = m as u32;
        }
    }
    let order = crate::poset::Poset::from_below(names, below);
    DistLattice::assemble(order, join, meet)
}

/// Maximal elements of `J ∖ {0̂}`, in index order.
pub fn maximal_join_irreducibles(l: &DistLattice) -> Vec<ElementId> {
    let nonzero: Vec<ElementId> = l
        .join_irreducibles()
        .into_iter()
        .filter(|&j| j != l.bottom())
        .collect();
    nonzero
        .iter()
        .copied()
        .filter(|&a| !nonzero.iter().any(|&b| b != a && l.leq(a, b)))
        .collect()
}

/// `L_α = L ∖ {β : β ≥ α}` for a maximal nonzero join irreducible `α`.
pub fn prune(l: &DistLattice, alpha: ElementId) -> Result<DistLattice> {
    if !maximal_join_irreducibles(l).contains(&alpha) {
        return Err(LatticeError::NotMaximalJoinIrreducible(
            l.name(alpha).to_string(),
        ));
    }
    let keep: Vec<usize> = l
        .elements()
        .filter(|&b| !l.leq(alpha, b))
        .map(|b| b.index())
        .collect();
    Ok(l.sublattice(&keep))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FactorClass {
    /// The one-element lattice; only occurs when `|L| = 1`.
    Point,
    TwoChain,
    Diamond,
    Other,
}

impl FactorClass {
    pub fn of(factor: &DistLattice) -> Self {
        match factor.size() {
            1 => FactorClass::Point,
            2 => FactorClass::TwoChain,
            4 if pair_scan_count(factor) == 1 => FactorClass::Diamond,
            _ => FactorClass::Other,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FactorClass::Point => "point",
            FactorClass::TwoChain => "two_chain",
            FactorClass::Diamond => "diamond",
            FactorClass::Other => "other",
        }
    }
}

impl fmt::Display for FactorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CiShape {
    pub is_equality_case: bool,
    pub factor_classes: Vec<FactorClass>,
}

/// Is `l` a concatenation of diamonds and chains?
pub fn classify_ci_shape(l: &DistLattice) -> CiShape {
    let factor_classes: Vec<FactorClass> = decompose_thick(l)
        .factors
        .iter()
        .map(FactorClass::of)
        .collect();
    let is_equality_case = factor_classes.iter().all(|c| {
        matches!(
            c,
            FactorClass::Point | FactorClass::TwoChain | FactorClass::Diamond
        )
    });
    CiShape {
        is_equality_case,
        factor_classes,
    }
}
