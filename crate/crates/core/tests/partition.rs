mod common;

use proptest::prelude::*;
use quizzy::partition::{
    coarser_leq, enumerate, join_coarsen, kernel, mobius, signature, CategoryId, SetPartition,
};

use common::{all_permutations, all_set_partitions, bell, catalan, is_noncrossing, perm_sign};

fn oracle_filter(m: usize, keep: impl Fn(&[Vec<usize>]) -> bool) -> Vec<SetPartition> {
    let mut v: Vec<SetPartition> = all_set_partitions(m)
        .into_iter()
        .filter(|b| keep(b))
        .map(|b| SetPartition::from_blocks(m, &b).unwrap())
        .collect();
    v.sort();
    v
}

fn sorted(mut v: Vec<SetPartition>) -> Vec<SetPartition> {
    v.sort();
    v
}

#[test]
fn counts_match_bell_and_catalan() {
    for m in 0..=8 {
        assert_eq!(enumerate(CategoryId::P, m).len() as u64, bell(m), "Bell m={m}");
        assert_eq!(enumerate(CategoryId::NC, m).len() as u64, catalan(m), "Catalan m={m}");
    }
}

#[test]
fn categories_match_generic_filters() {
    let even = |b: &[Vec<usize>]| b.iter().all(|x| x.len() % 2 == 0);
    let pair = |b: &[Vec<usize>]| b.iter().all(|x| x.len() == 2);
    let small = |b: &[Vec<usize>]| b.iter().all(|x| x.len() <= 2);
    for m in 0..=7 {
        assert_eq!(sorted(enumerate(CategoryId::P, m)), oracle_filter(m, |_| true));
        assert_eq!(sorted(enumerate(CategoryId::NC, m)), oracle_filter(m, is_noncrossing));
        assert_eq!(sorted(enumerate(CategoryId::P2, m)), oracle_filter(m, pair));
        assert_eq!(
            sorted(enumerate(CategoryId::NC2, m)),
            oracle_filter(m, |b| pair(b) && is_noncrossing(b))
        );
        assert_eq!(sorted(enumerate(CategoryId::Peven, m)), oracle_filter(m, even));
        assert_eq!(
            sorted(enumerate(CategoryId::NCeven, m)),
            oracle_filter(m, |b| even(b) && is_noncrossing(b))
        );
        assert_eq!(sorted(enumerate(CategoryId::P12, m)), oracle_filter(m, small));
        assert_eq!(
            sorted(enumerate(CategoryId::NC12, m)),
            oracle_filter(m, |b| small(b) && is_noncrossing(b))
        );
    }
}

#[test]
fn enumeration_is_deterministic_and_canonical() {
    for m in 0..=6 {
        let a = enumerate(CategoryId::P, m);
        assert_eq!(a, enumerate(CategoryId::P, m));
        assert!(a.windows(2).all(|w| w[0].labels() < w[1].labels()));
        for p in &a {
            assert_eq!(SetPartition::from_labels(p.labels()), *p);
        }
    }
}

#[test]
fn coarsening_is_a_partial_order_on_even_partitions() {
    for m in [0, 2, 4, 6] {
        let ps = enumerate(CategoryId::Peven, m);
        for a in &ps {
            assert!(coarser_leq(a, a).unwrap());
            for b in &ps {
                let ab = coarser_leq(a, b).unwrap();
                if ab && coarser_leq(b, a).unwrap() {
                    assert_eq!(a, b);
                }
                if !ab {
                    continue;
                }
                for c in &ps {
                    if coarser_leq(b, c).unwrap() {
                        assert!(coarser_leq(a, c).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn signature_multiplicative_on_pairings() {
    let perms = all_permutations(4);
    for r1 in &perms {
        let s1 = signature(&SetPartition::permutation_pairing(r1)).unwrap();
        assert_eq!(s1 as i64, perm_sign(r1));
        for r2 in &perms {
            let comp: Vec<usize> = (0..4).map(|i| r1[r2[i]]).collect();
            let s2 = signature(&SetPartition::permutation_pairing(r2)).unwrap();
            let s12 = signature(&SetPartition::permutation_pairing(&comp)).unwrap();
            assert_eq!(s12, s1 * s2);
        }
    }
}

#[test]
fn mobius_inversion_on_even_partitions() {
    for m in [2, 4, 6] {
        let ps = enumerate(CategoryId::Peven, m);
        for s in &ps {
            for p in &ps {
                if !coarser_leq(s, p).unwrap() {
                    continue;
                }
                let total: i64 = ps
                    .iter()
                    .filter(|t| coarser_leq(s, t).unwrap() && coarser_leq(t, p).unwrap())
                    .map(|t| mobius(s, t, CategoryId::Peven).unwrap())
                    .sum();
                assert_eq!(total, i64::from(s == p), "σ={s} π={p}");
            }
        }
    }
}

#[test]
fn mobius_on_full_lattice_matches_product_formula() {
    // μ(1̂-block, singletons) in P(m) = (-1)^{m-1} (m-1)!
    for m in 1..=6 {
        let mu = mobius(&SetPartition::one_block(m), &SetPartition::singletons(m), CategoryId::P).unwrap();
        let f: i64 = (1..m as i64).product();
        assert_eq!(mu, if m % 2 == 1 { f } else { -f });
    }
}

#[test]
fn parse_and_display_round_trip() {
    for s in ["13|24", "1,3|2,4", "{1,3}{2,4}"] {
        let p: SetPartition = s.parse().unwrap();
        assert_eq!(p.to_string(), "{1,3}{2,4}");
    }
    assert!("13|4".parse::<SetPartition>().is_err());
    assert!("11|2".parse::<SetPartition>().is_err());
}

fn arb_labels() -> impl Strategy<Value = Vec<u8>> {
    (1usize..=8).prop_flat_map(|m| proptest::collection::vec(0u8..4, m))
}

proptest! {
    #[test]
    fn kernel_is_canonical(labels in arb_labels()) {
        let k = kernel(&labels);
        for i in 0..labels.len() {
            for j in 0..labels.len() {
                prop_assert_eq!(labels[i] == labels[j], k.block_of(i) == k.block_of(j));
            }
        }
        let relabeled: Vec<u8> = labels.iter().map(|x| 7 - x).collect();
        prop_assert_eq!(kernel(&relabeled), k);
    }

    #[test]
    fn join_is_least_upper_bound(a in arb_labels(), seed in any::<u64>()) {
        let m = a.len();
        let b: Vec<u8> = (0..m).map(|i| ((seed >> (2 * i)) & 3) as u8).collect();
        let (pa, pb) = (kernel(&a), kernel(&b));
        let j = join_coarsen(&pa, &pb).unwrap();
        prop_assert!(coarser_leq(&j, &pa).unwrap());
        prop_assert!(coarser_leq(&j, &pb).unwrap());
        for c in enumerate(CategoryId::P, m) {
            if coarser_leq(&c, &pa).unwrap() && coarser_leq(&c, &pb).unwrap() {
                prop_assert!(coarser_leq(&c, &j).unwrap());
            }
        }
    }

    #[test]
    fn crossing_parity_gives_signature_on_pairings(seed in any::<u64>()) {
        let pairings = enumerate(CategoryId::P2, 6);
        let p = &pairings[(seed % pairings.len() as u64) as usize];
        let sign = if p.crossing_count() % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(signature(p).unwrap(), sign);
        prop_assert_eq!(p.is_noncrossing(), p.crossing_count() == 0);
    }
}
