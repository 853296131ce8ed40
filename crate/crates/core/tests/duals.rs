mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use quizzy::duals::{
    loop_count, orbital_classes, orbital_relation, snplus_classes, snplus_count, snplus_orbital_rule,
    snplus_pattern_space_dim, DualMode, DualSpec,
};
use quizzy::Error;

use common::{direct_loops_by_characters, free_loops_brute};

fn spec(orders: &[usize], mode: DualMode) -> DualSpec {
    DualSpec::new(orders.to_vec(), mode).unwrap()
}

const ORDER_SETS: &[&[usize]] = &[&[2], &[3], &[4], &[2, 2], &[2, 3], &[3, 4], &[2, 2, 2], &[4, 4]];

#[test]
fn direct_loops_match_character_sum() {
    for orders in ORDER_SETS {
        for k in 0..=5 {
            assert_eq!(
                loop_count(&spec(orders, DualMode::Direct), k as usize),
                direct_loops_by_characters(orders, k),
                "{orders:?} k={k}"
            );
        }
    }
}

#[test]
fn free_loops_match_word_reduction() {
    for orders in [&[2, 2][..], &[2, 3], &[3], &[2, 2, 2]] {
        for k in 1..=5 {
            assert_eq!(
                loop_count(&spec(orders, DualMode::Free), k as usize),
                free_loops_brute(orders, k),
                "{orders:?} k={k}"
            );
        }
    }
}

#[test]
fn free_never_exceeds_direct() {
    for orders in ORDER_SETS {
        for k in 1..=5 {
            assert!(loop_count(&spec(orders, DualMode::Free), k) <= loop_count(&spec(orders, DualMode::Direct), k));
        }
    }
}

#[test]
fn single_factor_modes_coincide() {
    for n in 2..=5 {
        for k in 1..=6 {
            assert_eq!(loop_count(&spec(&[n], DualMode::Free), k), loop_count(&spec(&[n], DualMode::Direct), k));
            assert_eq!(loop_count(&spec(&[n], DualMode::Free), k), (n as u128).pow(k as u32 - 1));
        }
    }
}

#[test]
fn free_and_direct_separate_by_k4() {
    for orders in [[2, 2], [2, 3]] {
        let d: Vec<u128> = (1..=4).map(|k| loop_count(&spec(&orders, DualMode::Direct), k)).collect();
        let f: Vec<u128> = (1..=4).map(|k| loop_count(&spec(&orders, DualMode::Free), k)).collect();
        assert_eq!(d[..2], f[..2]);
        assert_ne!(d, f);
    }
}

/// Classes of the relation itself, by exhaustive grouping.
fn classes_from_relation(s: &DualSpec, k: usize) -> usize {
    let n = s.n();
    let tuples: Vec<Vec<usize>> = (0..n.pow(k as u32))
        .map(|c| (0..k).map(|t| c / n.pow(t as u32) % n).collect())
        .collect();
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    let mut classes = 0;
    for (i, a) in tuples.iter().enumerate() {
        if seen.contains(&i) {
            continue;
        }
        classes += 1;
        for (j, b) in tuples.iter().enumerate() {
            if orbital_relation(s, a, b) {
                seen.insert(j);
            }
        }
    }
    classes
}

#[test]
fn relation_is_equivalence_and_matches_classes() {
    for orders in [&[2, 2][..], &[2, 3], &[3]] {
        for mode in [DualMode::Direct, DualMode::Free] {
            let s = spec(orders, mode);
            let n = s.n();
            for k in 1..=3 {
                let tuples: Vec<Vec<usize>> = (0..n.pow(k as u32))
                    .map(|c| (0..k).map(|t| c / n.pow(t as u32) % n).collect())
                    .collect();
                for a in &tuples {
                    assert!(orbital_relation(&s, a, a));
                    for b in &tuples {
                        if orbital_relation(&s, a, b) {
                            assert!(orbital_relation(&s, b, a));
                            for c in &tuples {
                                if orbital_relation(&s, b, c) {
                                    assert!(orbital_relation(&s, a, c));
                                }
                            }
                        }
                    }
                }
                assert_eq!(orbital_classes(&s, k).unwrap().total, classes_from_relation(&s, k));
            }
        }
    }
}

#[test]
fn class_totals_and_loops() {
    // Direct mode: class totals equal loop counts for k ≤ 3.
    for orders in [&[2, 2][..], &[2, 3], &[3, 4]] {
        let s = spec(orders, DualMode::Direct);
        for k in 1..=3 {
            assert_eq!(orbital_classes(&s, k).unwrap().total as u128, loop_count(&s, k));
        }
    }
    // Free mode: equal up to k = 2, strictly fewer classes at k = 3.
    let f = spec(&[2, 2], DualMode::Free);
    assert_eq!(orbital_classes(&f, 2).unwrap().total, 6);
    assert_eq!(orbital_classes(&f, 3).unwrap().total, 18);
    assert_eq!(loop_count(&f, 3), 20);
    assert_eq!(orbital_classes(&f, 4), Err(Error::OrbitalOrder(4)));
}

#[test]
fn snplus_rule_counts() {
    for k in 1..=5 {
        assert_eq!(snplus_classes(k, k + 1).len() as u128, snplus_count(k));
    }
    assert_eq!(snplus_pattern_space_dim(3, 4).unwrap(), 4);
}

#[test]
fn invalid_specs() {
    assert!(DualSpec::new(vec![], DualMode::Free).is_err());
    assert!(DualSpec::new(vec![1, 2], DualMode::Free).is_err());
}

proptest! {
    #[test]
    fn snplus_rule_is_equivalence(a in proptest::collection::vec(0usize..3, 4), b in proptest::collection::vec(0usize..3, 4), c in proptest::collection::vec(0usize..3, 4)) {
        prop_assert!(snplus_orbital_rule(&a, &a));
        prop_assert_eq!(snplus_orbital_rule(&a, &b), snplus_orbital_rule(&b, &a));
        if snplus_orbital_rule(&a, &b) && snplus_orbital_rule(&b, &c) {
            prop_assert!(snplus_orbital_rule(&a, &c));
        }
    }
}
