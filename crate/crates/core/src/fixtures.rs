//! Small named lattices used in tests, examples and reports.

use crate::lattice::{validate_distributive_lattice, DistLattice};
use crate::poset::{build_partial_order, Poset};

fn from_covers(names: &[&str], covers: &[(&str, &str)]) -> DistLattice {
    let p = build_partial_order(names, covers).expect("fixture order");
    validate_distributive_lattice(&p).expect("fixture lattice")
}

/// `bot < a, b < top`.
pub fn diamond() -> DistLattice {
    from_covers(
        &["bot", "a", "b", "top"],
        &[("a", "bot"), ("b", "bot"), ("top", "a"), ("top", "b")],
    )
}

/// Subsets of `{1,2,3}`; the empty set is named `e`.
pub fn b3() -> DistLattice {
    let p = build_partial_order(
        &["e", "1", "2", "3", "12", "13", "23", "123"],
        &[
            ("1", "e"),
            ("2", "e"),
            ("3", "e"),
            ("12", "1"),
            ("12", "2"),
            ("13", "1"),
            ("13", "3"),
            ("23", "2"),
            ("23", "3"),
            ("123", "12"),
            ("123", "13"),
            ("123", "23"),
        ],
    )
    .expect("fixture order");
    validate_distributive_lattice(&p).expect("fixture lattice")
}

/// Chain with `k >= 1` elements named `c0 < c1 < ...`.
pub fn chain(k: usize) -> DistLattice {
    let names: Vec<String> = (0..k).map(|i| format!("c{i}")).collect();
    let covers: Vec<(String, String)> = (1..k)
        .map(|i| (names[i].clone(), names[i - 1].clone()))
        .collect();
    let p = build_partial_order(&names, &covers).expect("fixture order");
    validate_distributive_lattice(&p).expect("fixture lattice")
}

/// Down-sets of the V poset `p, q < r`: a diamond with a top edge glued on.
pub fn v5() -> DistLattice {
    from_covers(
        &["bot", "p", "q", "pq", "top"],
        &[
            ("p", "bot"),
            ("q", "bot"),
            ("pq", "p"),
            ("pq", "q"),
            ("top", "pq"),
        ],
    )
}

/// Two diamonds glued at `mid`.
pub fn diamond_diamond() -> DistLattice {
    from_covers(
        &["bot", "a", "b", "mid", "c", "d", "top"],
        &[
            ("a", "bot"),
            ("b", "bot"),
            ("mid", "a"),
            ("mid", "b"),
            ("c", "mid"),
            ("d", "mid"),
            ("top", "c"),
            ("top", "d"),
        ],
    )
}

/// The modular, non-distributive lattice with three atoms.
pub fn m3_order() -> Poset {
    build_partial_order(
        &["bot", "a", "b", "c", "top"],
        &[
            ("a", "bot"),
            ("b", "bot"),
            ("c", "bot"),
            ("top", "a"),
            ("top", "b"),
            ("top", "c"),
        ],
    )
    .expect("fixture order")
}

/// The pentagon `bot < a < c < top`, `bot < b < top`.
pub fn n5_order() -> Poset {
    build_partial_order(
        &["bot", "a", "b", "c", "top"],
        &[
            ("a", "bot"),
            ("c", "a"),
            ("top", "c"),
            ("b", "bot"),
            ("top", "b"),
        ],
    )
    .expect("fixture order")
}
