//! Cross-module invariants on small ambients, driven by proptest.

use proptest::prelude::*;
use stabcat_core::interval::IntervalCategory;
use stabcat_core::stability::{all_cuts, enumerate_finest, is_coarser, is_finest, refine_to_finest, validate, FinestOptions};
use stabcat_core::torsion::{enumerate_torsion_pairs, is_torsion_pair, pairs_from_data};
use stabcat_core::tube::TubeCategory;
use stabcat_core::{Ambient, Members, StabilityData};

fn ambient(k: u8) -> Ambient {
    match k {
        0 => Ambient::new(Box::new(IntervalCategory::new(2))),
        1 => Ambient::new(Box::new(IntervalCategory::new(3))),
        2 => Ambient::new(Box::new(TubeCategory::new(1))),
        3 => Ambient::new(Box::new(TubeCategory::new(2))),
        _ => Ambient::new(Box::new(TubeCategory::new(3))),
    }
    .unwrap()
}

fn subset(amb: &Ambient, bits: u128) -> Members {
    Members(bits & amb.full().0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_is_a_closure_operator(k in 0u8..5, a in any::<u128>(), b in any::<u128>()) {
        let amb = ambient(k);
        let (a, b) = (subset(&amb, a), subset(&amb, b));
        let ca = amb.closure(a);
        prop_assert!(a.is_subset(ca));
        prop_assert_eq!(amb.closure(ca), ca);
        prop_assert!(amb.is_closed(ca));
        prop_assert!(ca.is_subset(amb.closure(a | b)));
    }

    #[test]
    fn perps_form_a_galois_connection(k in 0u8..5, a in any::<u128>()) {
        let amb = ambient(k);
        let a = subset(&amb, a);
        let r = amb.right_perp(a);
        prop_assert!(!amb.hom_between(a, r));
        prop_assert!(a.is_subset(amb.left_perp(r)));
        prop_assert_eq!(amb.right_perp(amb.left_perp(r)), r);
    }

    #[test]
    fn finest_data_are_valid_and_cut_into_torsion_pairs(k in 0u8..4, pick in any::<usize>()) {
        let amb = ambient(k);
        let classes = enumerate_finest(&amb, FinestOptions::default()).unwrap();
        let d = &classes[pick % classes.len()].data;
        prop_assert!(validate(&amb, d).valid);
        prop_assert!(is_finest(&amb, d).finest);
        for tp in all_cuts(&amb, d) {
            prop_assert!(is_torsion_pair(&amb, &tp));
        }
    }

    #[test]
    fn merging_adjacent_pieces_is_coarser_and_refines_back(k in 0u8..4, pick in any::<usize>(), at in any::<usize>()) {
        let amb = ambient(k);
        let classes = enumerate_finest(&amb, FinestOptions::default()).unwrap();
        let fine = &classes[pick % classes.len()].data;
        let seq = fine.members_sequence();
        prop_assume!(seq.len() >= 2);
        let i = at % (seq.len() - 1);
        let mut merged: Vec<Members> = seq[..i].to_vec();
        merged.push(amb.closure(seq[i] | seq[i + 1]));
        merged.extend_from_slice(&seq[i + 2..]);
        let coarse = StabilityData::from_sequence(&merged);
        prop_assume!(validate(&amb, &coarse).valid);
        prop_assert!(is_coarser(&amb, &coarse, fine).is_some());
        let refined = refine_to_finest(&amb, &coarse).unwrap();
        prop_assert!(is_finest(&amb, &refined).finest);
        prop_assert!(is_coarser(&amb, &coarse, &refined).is_some());
    }
}

#[test]
fn cuts_of_finest_data_exhaust_torsion_pairs_on_small_ambients() {
    for k in 0..4 {
        let amb = ambient(k);
        let data: Vec<StabilityData> = enumerate_finest(&amb, FinestOptions::default()).unwrap().into_iter().map(|c| c.data).collect();
        assert_eq!(pairs_from_data(&amb, &data), enumerate_torsion_pairs(&amb).unwrap(), "{}", amb.spec());
    }
}
