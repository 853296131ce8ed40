mod common;

use num_traits::Zero;
use proptest::prelude::*;
use quizzy::classical::{burnside_orbital_count, FiniteAction};
use quizzy::intertwiner::{
    all_words, exterior_word_moment, fix_dim, liberation_level, parse_word, sudoku_moment,
    twist_expansion, twist_via_mobius, weingarten_integrate, weingarten_word_moment, word_moment,
    xi_twisted, xi_vector, Letter, QuizzySpec,
};
use quizzy::linalg::ExactScalar;
use quizzy::partition::{enumerate, signature, CategoryId, SetPartition};
use quizzy::Budget;

use common::q;

fn budget() -> Budget {
    Budget::default()
}

#[test]
fn twist_via_mobius_matches_signed_vectors() {
    for m in (0..=6).step_by(2) {
        for pi in enumerate(CategoryId::Peven, m) {
            for n in 1..=3 {
                assert_eq!(twist_via_mobius(&pi, n).unwrap(), xi_twisted(&pi, n).unwrap(), "{pi} N={n}");
            }
        }
    }
}

#[test]
fn signed_vector_entries_follow_kernel_signature() {
    // Direct oracle: entry at i is ε(ker i) when ker i ≥ π, else 0.
    let n = 3;
    for pi in enumerate(CategoryId::Peven, 4) {
        let v = xi_twisted(&pi, n).unwrap();
        for code in 0..81u64 {
            let idx = v.decode(code);
            let constant = (0..4).all(|a| (0..4).all(|b| pi.block_of(a) != pi.block_of(b) || idx[a] == idx[b]));
            let want = if constant {
                q(signature(&quizzy::partition::kernel(&idx)).unwrap() as i64)
            } else {
                q(0)
            };
            assert_eq!(v.get(code), want);
        }
    }
}

#[test]
fn crossing_expansion() {
    let cross: SetPartition = "13|24".parse().unwrap();
    let mut terms = twist_expansion(&cross).unwrap();
    terms.sort_by_key(|(_, c)| *c);
    assert_eq!(terms, vec![(cross.clone(), -1), (SetPartition::one_block(4), 2)]);
    let n = 3;
    let mut combo = xi_vector(&SetPartition::one_block(4), n).scaled(&q(2));
    combo.add_scaled(&xi_vector(&cross, n), &q(-1)).unwrap();
    assert_eq!(combo, xi_twisted(&cross, n).unwrap());
}

#[test]
fn twisting_preserves_dimensions() {
    for cat in [CategoryId::P2, CategoryId::Peven] {
        for n in 1..=4 {
            for k in 0..=5 {
                let plain = fix_dim(&QuizzySpec::new(cat, false, n).unwrap(), k, &budget()).unwrap();
                let twisted = fix_dim(&QuizzySpec::new(cat, true, n).unwrap(), k, &budget()).unwrap();
                assert_eq!(plain, twisted, "{cat} N={n} k={k}");
            }
        }
    }
}

#[test]
fn fix_dim_independent_regime_and_monotone() {
    for cat in [CategoryId::P, CategoryId::NC, CategoryId::P2, CategoryId::NC2, CategoryId::Peven, CategoryId::NCeven] {
        for k in 0..=4 {
            let count = enumerate(cat, k).len();
            let dims: Vec<usize> = (1..=k.max(1) + 1)
                .map(|n| fix_dim(&QuizzySpec::untwisted(cat, n).unwrap(), k, &budget()).unwrap())
                .collect();
            for (n, d) in dims.iter().enumerate() {
                if n + 1 >= k {
                    assert_eq!(*d, count, "{cat} N={} k={k}", n + 1);
                }
            }
            assert!(dims.windows(2).all(|w| w[0] <= w[1]), "{cat} k={k}: {dims:?}");
        }
    }
}

#[test]
fn odd_u_words_vanish() {
    for cat in [CategoryId::Peven, CategoryId::NCeven] {
        let spec = QuizzySpec::untwisted(cat, 4).unwrap();
        for k in 1..=4 {
            for w in all_words(k) {
                let us = w.iter().filter(|l| **l == Letter::U).count();
                if us % 2 == 1 {
                    assert_eq!(word_moment(&w, &spec, &budget()).unwrap(), 0);
                }
            }
        }
    }
}

#[test]
fn sudoku_classical_matches_burnside() {
    for n in [4, 5] {
        let action = FiniteAction::hyperoctahedral_segments(n, &budget()).unwrap();
        for k in 1..=4 {
            let b = sudoku_moment(k, n, false, &budget()).unwrap();
            assert_eq!(b.total as u128, burnside_orbital_count(&action, k), "N={n} k={k}");
            assert_eq!(b.terms.len(), 1 << k);
        }
    }
}

#[test]
fn hnplus_word_values() {
    let spec = QuizzySpec::untwisted(CategoryId::NCeven, 5).unwrap();
    for (w, v) in [("puu", 2), ("upu", 2), ("upup", 4), ("pppp", 14), ("uuuu", 3)] {
        let word = parse_word(w).unwrap();
        assert_eq!(word_moment(&word, &spec, &budget()).unwrap(), v, "{w}");
        assert_eq!(weingarten_word_moment(&spec, &word).unwrap(), q(v as i64), "{w}");
    }
}

#[test]
fn weingarten_diagonal_sum_is_fix_dim() {
    for (cat, n, k) in [(CategoryId::P, 3, 3), (CategoryId::P, 4, 2), (CategoryId::NC, 3, 3), (CategoryId::P2, 3, 2), (CategoryId::NCeven, 4, 2)] {
        let spec = QuizzySpec::untwisted(cat, n).unwrap();
        let mut total = ExactScalar::zero();
        for code in 0..n.pow(k as u32) {
            let idx: Vec<usize> = (0..k).map(|t| code / n.pow(t as u32) % n).collect();
            total += weingarten_integrate(&spec, &idx, &idx).unwrap();
        }
        let dim = fix_dim(&spec, k, &budget()).unwrap();
        assert_eq!(total, q(dim as i64), "{cat} N={n} k={k}");
    }
}

#[test]
fn exterior_words_small() {
    // Λ^0 and Λ^N are one-dimensional; Λ^1 ⊗ Λ^1 has one invariant.
    assert_eq!(exterior_word_moment(&[0, 0], 3, &budget()).unwrap(), 1);
    assert_eq!(exterior_word_moment(&[1, 1], 3, &budget()).unwrap(), 1);
    assert_eq!(exterior_word_moment(&[3], 3, &budget()).unwrap(), 0);
    assert_eq!(exterior_word_moment(&[2, 2], 3, &budget()).unwrap(), 1);
    assert_eq!(exterior_word_moment(&[3, 3], 3, &budget()).unwrap(), 1);
}

#[test]
fn liberation_levels() {
    let s = |c, t| QuizzySpec::new(c, t, 5).unwrap();
    for (inner, outer) in [
        (s(CategoryId::Peven, false), s(CategoryId::NCeven, false)),
        (s(CategoryId::Peven, false), s(CategoryId::P2, true)),
        (s(CategoryId::P2, false), s(CategoryId::NC2, false)),
    ] {
        assert_eq!(liberation_level(&inner, &outer, 5, &budget()).unwrap().level, Some(4));
    }
}

#[test]
fn budget_is_enforced() {
    let tight = Budget { max_index_space: 1000, ..Budget::default() };
    let spec = QuizzySpec::untwisted(CategoryId::P, 5).unwrap();
    assert!(fix_dim(&spec, 5, &tight).unwrap_err().is_budget());
    assert!(QuizzySpec::new(CategoryId::P, true, 3).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn weingarten_vanishes_off_kernel(a in proptest::collection::vec(0usize..3, 3), b in proptest::collection::vec(0usize..3, 3)) {
        // For S_N the integral depends only on the kernels and vanishes unless they agree.
        let spec = QuizzySpec::untwisted(CategoryId::P, 4).unwrap();
        let v = weingarten_integrate(&spec, &a, &b).unwrap();
        if quizzy::partition::kernel(&a) != quizzy::partition::kernel(&b) {
            prop_assert!(v.is_zero());
        } else {
            let blocks = quizzy::partition::kernel(&a).num_blocks();
            let want: i64 = (0..blocks as i64).map(|i| 4 - i).product();
            prop_assert_eq!(v, ExactScalar::new(1.into(), want.into()));
        }
    }
}
