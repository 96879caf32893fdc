//! Property tests: randomized inputs exercising the algebraic identities
//! the rest of the crate leans on.

use proptest::prelude::*;

use knotperm::decide::{collapse_kink, decide_unknot, find_kinks, CycleVerdict, Kink};
use knotperm::diagram::ur_indices;
use knotperm::tree::{cycle_insert, SignedTree};
use knotperm::{Permutation, Sign};

fn arb_permutation(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n).prop_flat_map(|n| {
        Just((1..=n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|images| Permutation::from_images(images).unwrap())
    })
}

/// A tree grown by a random insertion script, together with the script.
fn arb_tree(max_inserts: usize) -> impl Strategy<Value = SignedTree> {
    proptest::collection::vec((any::<u16>(), any::<bool>()), 0..=max_inserts).prop_map(
        |script| {
            let mut t = SignedTree::root_only();
            for (raw, plus) in script {
                let slot = (raw as usize) % t.slot_count() + 1;
                let sign = if plus { Sign::Plus } else { Sign::Minus };
                t = t.insert_at_slot(slot, sign).unwrap();
            }
            t
        },
    )
}

proptest! {
    #[test]
    fn inverse_is_an_involution(p in arb_permutation(9)) {
        prop_assert_eq!(p.inverse().inverse(), p.clone());
        prop_assert!(p.compose(&p.inverse()).is_identity());
        prop_assert!(p.inverse().compose(&p).is_identity());
    }

    #[test]
    fn inversions_match_under_inverse(p in arb_permutation(9)) {
        prop_assert_eq!(p.inversions(), p.inverse().inversions());
    }

    #[test]
    fn displacement_is_even_and_dominates_its_bound(p in arb_permutation(9)) {
        prop_assert_eq!(p.total_displacement() % 2, 0);
        // dg_gap subtracts the bound; it would panic on a violation.
        let _ = p.dg_gap();
    }

    #[test]
    fn upper_right_corners_are_inverse_invariant(p in arb_permutation(9)) {
        prop_assert_eq!(ur_indices(&p), ur_indices(&p.inverse()));
    }

    #[test]
    fn permutation_text_round_trips(p in arb_permutation(12)) {
        let via_display: Permutation = p.to_string().parse().unwrap();
        prop_assert_eq!(&via_display, &p);
        let via_compact: Permutation = p.compact().parse().unwrap();
        prop_assert_eq!(&via_compact, &p);
    }

    #[test]
    fn tree_text_round_trips(t in arb_tree(7)) {
        let back: SignedTree = t.to_string().parse().unwrap();
        prop_assert_eq!(&back, &t);
    }

    #[test]
    fn canonical_form_is_idempotent(t in arb_tree(6)) {
        let c = t.canonical_form();
        prop_assert_eq!(c.canonical_form(), c.clone());
        prop_assert!(t.equivalent(&c));
    }

    #[test]
    fn negation_is_an_involution_matching_inverse(t in arb_tree(6)) {
        prop_assert_eq!(t.negate().negate(), t.clone());
        prop_assert_eq!(t.negate().to_cycle(), t.to_cycle().inverse());
    }

    #[test]
    fn built_trees_round_trip_through_the_decider(t in arb_tree(6)) {
        let cycle = t.to_cycle();
        prop_assert_eq!(cycle.n(), t.node_count() + 1);
        prop_assert!(cycle.is_single_cycle());
        match decide_unknot(&cycle).unwrap() {
            CycleVerdict::Unknot { tree } => prop_assert_eq!(tree, t.canonical_form()),
            CycleVerdict::Knotted => prop_assert!(false, "a built cycle must collapse"),
        }
    }

    #[test]
    fn every_insert_collapses_back(
        t in arb_tree(5),
        raw_slot in any::<u16>(),
        plus in any::<bool>(),
    ) {
        let base = t.to_cycle();
        let slot = (raw_slot as usize) % base.n() + 1;
        let sign = if plus { Sign::Plus } else { Sign::Minus };
        let grown = cycle_insert(&base, slot, sign).unwrap();
        prop_assert!(grown.is_single_cycle());
        let kink = match sign {
            Sign::Plus => Kink { index: slot, sign },
            Sign::Minus => Kink { index: slot + 1, sign },
        };
        prop_assert!(find_kinks(&grown).contains(&kink));
        prop_assert_eq!(collapse_kink(&grown, kink).unwrap(), base);
    }
}
