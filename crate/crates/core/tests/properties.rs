use distlat::canon::isomorphic;
use distlat::hibi::try_complete_intersection_verdict;
use distlat::invariants::try_bounds_report;
use distlat::{
    birkhoff_poset, build_partial_order, canonical_code, canonical_isomorphic, concatenate,
    decompose_thick, ideal_lattice, is_thick, noncomparable_count, prune,
    structure::maximal_join_irreducibles, verify_theorem_suite, DistLattice, Poset,
};
use proptest::prelude::*;

/// Point `i` is named `p{perm[i]}` and so lands at index `perm[i]`; each bit
/// puts one `i < j` into the order.
fn poset_from(n: usize, bits: &[bool], perm: &[usize]) -> Poset {
    let label = |i: usize| format!("p{}", perm[i]);
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let mut covers = Vec::new();
    let mut k = 0;
    for j in 0..n {
        for i in 0..j {
            if bits[k] {
                covers.push((label(j), label(i)));
            }
            k += 1;
        }
    }
    build_partial_order(&names, &covers).unwrap()
}

fn arb_poset(max: usize) -> impl Strategy<Value = (usize, Vec<bool>, Vec<usize>)> {
    (0..=max).prop_flat_map(|n| {
        (
            Just(n),
            proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2),
            Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
        )
    })
}

fn lattice((n, bits, perm): &(usize, Vec<bool>, Vec<usize>)) -> DistLattice {
    ideal_lattice(&poset_from(*n, bits, perm)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn suite_passes_on_random_lattices(input in arb_poset(7)) {
        let l = lattice(&input);
        let report = verify_theorem_suite(&l);
        prop_assert!(report.all_passed(), "{:?}", report.failures().collect::<Vec<_>>());
        prop_assert!(try_bounds_report(&l).is_ok());
        prop_assert!(try_complete_intersection_verdict(&l).is_ok());
    }

    #[test]
    fn code_ignores_labelling((n, bits, perm) in arb_poset(7)) {
        let a = poset_from(n, &bits, &(0..n).collect::<Vec<_>>());
        let b = poset_from(n, &bits, &perm);
        prop_assert_eq!(canonical_code(&a), canonical_code(&b));
        prop_assert!(isomorphic(&a, &b));
    }

    #[test]
    fn birkhoff_round_trip((n, bits, perm) in arb_poset(7)) {
        let p = poset_from(n, &bits, &perm);
        let l = ideal_lattice(&p).unwrap();
        prop_assert_eq!(l.j_size(), n + 1);
        prop_assert!(isomorphic(&birkhoff_poset(&l), &p));
        let again = ideal_lattice(&birkhoff_poset(&l)).unwrap();
        prop_assert!(canonical_isomorphic(&again, &l));
    }

    #[test]
    fn concatenation_arithmetic(a in arb_poset(5), b in arb_poset(5)) {
        let (l1, l2) = (lattice(&a), lattice(&b));
        let l = concatenate(&l1, &l2);
        prop_assert_eq!(l.size(), l1.size() + l2.size() - 1);
        prop_assert_eq!(l.j_size(), l1.j_size() + l2.j_size() - 1);
        prop_assert_eq!(l.edge_count(), l1.edge_count() + l2.edge_count());
        prop_assert_eq!(
            noncomparable_count(&l),
            noncomparable_count(&l1) + noncomparable_count(&l2)
        );
        if l1.size() > 1 && l2.size() > 1 {
            prop_assert!(!is_thick(&l));
        }
    }

    #[test]
    fn decompose_round_trip(input in arb_poset(7)) {
        let l = lattice(&input);
        let d = decompose_thick(&l);
        prop_assert!(canonical_isomorphic(&d.recompose(), &l));
        for f in &d.factors {
            prop_assert!(is_thick(f));
            prop_assert!(l.size() < 2 || f.size() >= 2);
        }
    }

    #[test]
    fn pruning_drops_one_join_irreducible(input in arb_poset(6)) {
        let l = lattice(&input);
        for alpha in maximal_join_irreducibles(&l) {
            let pruned = prune(&l, alpha).unwrap();
            prop_assert_eq!(pruned.j_size(), l.j_size() - 1);
            let kept: Vec<&str> = pruned.names().iter().map(String::as_str).collect();
            prop_assert!(!kept.contains(&l.name(alpha)));
        }
    }
}
