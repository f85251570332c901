//! Finite distributive lattices and the non-comparable pair count `n(L)`.
//!
//! The crate validates lattices given by their Hasse diagrams, moves between
//! a lattice and its poset of join irreducibles, computes `n(L)` three
//! independent ways together with the lower and upper bounds relating it to
//! `|L|`, `|J|` and the edge count, decomposes lattices into thick factors,
//! emits the binomial generators of the Hibi ideal, and enumerates every
//! small distributive lattice to check all of the above exhaustively.
//!
//! Convention: the bottom element counts as join irreducible, so the diamond
//! has `|J| = 3` and every maximal chain has exactly `|J|` elements.

pub mod canon;
pub mod checks;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod hibi;
pub mod invariants;
pub mod lattice;
pub mod poset;
pub mod registry;
pub mod structure;

pub use canon::{canonical_code, PosetCode};
pub use checks::{
    theorem_checks, verify_theorem_suite, ConjectureStatus, TheoremCheck, TheoremReport,
};
pub use enumerate::{conjecture_scan, enumerate_posets, ScanConfig, ScanReport};
pub use error::{LatticeError, TheoremViolation};
pub use hibi::{complete_intersection_verdict, ideal_generators, Binomial, CiVerdict};
pub use invariants::{bounds_report, noncomparable_count, Diamond, InvariantRecord};
pub use lattice::{
    birkhoff_poset, canonical_isomorphic, ideal_lattice, validate_distributive_lattice,
    DistLattice, ElementId,
};
pub use poset::{build_partial_order, Poset};
pub use structure::{
    classify_ci_shape, concatenate, decompose_thick, is_thick, prune, Decomposition, FactorClass,
};
