//! Generators of the Hibi ideal `I(L)` and the complete-intersection verdict.
//!
//! Only combinatorics is done here: one binomial
//! `x_θ·x_δ − x_{θ∨δ}·x_{θ∧δ}` per non-comparable pair, and codimension
//! arithmetic with `dim X(L) = |J|` (bottom included).

use crate::error::TheoremViolation;
use crate::invariants::{enumerate_diamonds, pair_scan_count};
use crate::lattice::{DistLattice, ElementId};
use crate::structure::classify_ci_shape;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Binomial {
    /// `(θ, δ)`, non-comparable, smaller index first.
    pub plus_pair: (ElementId, ElementId),
    /// `(θ∨δ, θ∧δ)`.
    pub minus_pair: (ElementId, ElementId),
}

pub fn ideal_generators(l: &DistLattice) -> Vec<Binomial> {
    let mut gens: Vec<Binomial> = enumerate_diamonds(l)
        .into_iter()
        .map(|d| Binomial {
            plus_pair: (d.theta, d.delta),
            minus_pair: (d.join, d.meet),
        })
        .collect();
    gens.sort();
    gens
}

/// No degree-two generator can be a combination of the others when every
/// `x_θ·x_δ` monomial occurs in exactly one of them.
pub fn minimality_certificate(gens: &[Binomial]) -> bool {
    let mut supports: Vec<(ElementId, ElementId)> = gens
        .iter()
        .map(|g| {
            let (a, b) = g.plus_pair;
            (a.min(b), a.max(b))
        })
        .collect();
    supports.sort();
    supports.windows(2).all(|w| w[0] != w[1])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CiVerdict {
    pub ambient_dim: usize,
    pub variety_dim: usize,
    pub codim: usize,
    pub generator_count: u64,
    pub is_complete_intersection: bool,
}

/// The verdict, after checking that the counting criterion and the
/// diamond/chain shape classification agree.
pub fn try_complete_intersection_verdict(l: &DistLattice) -> Result<CiVerdict, TheoremViolation> {
    let ambient_dim = l.size();
    let variety_dim = l.j_size();
    let codim = ambient_dim - variety_dim;
    let generator_count = pair_scan_count(l);
    if generator_count < codim as u64 {
        return Err(TheoremViolation::new(
            "lower_rank",
            format!("{generator_count} generators < codim {codim}"),
        ));
    }
    let is_complete_intersection = generator_count == codim as u64;
    let shape = classify_ci_shape(l);
    if shape.is_equality_case != is_complete_intersection {
        return Err(TheoremViolation::new(
            "ci_iff",
            format!(
                "n = {generator_count}, codim = {codim}, factor classes {:?}",
                shape.factor_classes
            ),
        ));
    }
    Ok(CiVerdict {
        ambient_dim,
        variety_dim,
        codim,
        generator_count,
        is_complete_intersection,
    })
}

pub fn complete_intersection_verdict(l: &DistLattice) -> CiVerdict {
    try_complete_intersection_verdict(l).unwrap_or_else(|v| panic!("{v}"))
}

/// One `x[A]*x[B] - x[C]*x[D]` line per generator, sorted bytewise, each
/// newline-terminated.
pub fn render_ideal<S: AsRef<str>>(gens: &[Binomial], names: &[S]) -> String {
    let name = |e: ElementId| names[e.index()].as_ref();
    let mut lines: Vec<String> = gens
        .iter()
        .map(|g| {
            format!(
                "x[{}]*x[{}] - x[{}]*x[{}]\n",
                name(g.plus_pair.0),
                name(g.plus_pair.1),
                name(g.minus_pair.0),
                name(g.minus_pair.1)
            )
        })
        .collect();
    lines.sort();
    lines.concat()
}

/// `# ideal I(L): <k> generators, ambient <|L|>, codim <|L|-|J|>`
pub fn ideal_header(v: &CiVerdict) -> String {
    format!(
        "# ideal I(L): {} generators, ambient {}, codim {}\n",
        v.generator_count, v.ambient_dim, v.codim
    )
}
