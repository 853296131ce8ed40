//! Duals of direct and free products of cyclic groups inside `S_N^+`, their
//! Cayley-graph loops and orbital classes, and the orbital rule of `S_N^+`.
//!
//! The factor `Z_{N_r}` acts on a block `A_r` of `N_r` consecutive points,
//! with magic unitary entries `u_ij` depending only on `i - j mod N_r`. The
//! generating set `S` is a multiset: it contains every power `g_r^e`,
//! `0 ≤ e < N_r`, of every factor, so the identity occurs once per factor
//! and `|S| = N`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::linalg::{rank, ExactScalar, SparseTensorVector};
use crate::{par, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DualMode {
    Direct,
    Free,
}

impl FromStr for DualMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "direct" | "product" => Ok(DualMode::Direct),
            "free" | "free-product" => Ok(DualMode::Free),
            _ => Err(Error::Invalid(format!("unknown dual mode {s:?} (direct|free)"))),
        }
    }
}

impl fmt::Display for DualMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DualMode::Direct => "direct",
            DualMode::Free => "free",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DualSpec {
    orders: Vec<usize>,
    mode: DualMode,
}

impl DualSpec {
    pub fn new(orders: Vec<usize>, mode: DualMode) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::Invalid("at least one cyclic factor is needed".into()));
        }
        if let Some(&o) = orders.iter().find(|&&o| o < 2) {
            return Err(Error::Invalid(format!("cyclic orders must be at least 2, got {o}")));
        }
        Ok(DualSpec { orders, mode })
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn mode(&self) -> DualMode {
        self.mode
    }

    /// Total number of points `N = Σ N_r`.
    pub fn n(&self) -> usize {
        self.orders.iter().sum()
    }

    /// `Z_2 x Z_3` or `Z_2 * Z_3`.
    pub fn group_name(&self) -> String {
        let sep = match self.mode {
            DualMode::Direct => " x ",
            DualMode::Free => " * ",
        };
        self.orders
            .iter()
            .map(|o| format!("Z_{o}"))
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// The multiset `S` as `(factor, exponent)` pairs.
    pub fn generating_multiset(&self) -> Vec<(usize, usize)> {
        self.orders
            .iter()
            .enumerate()
            .flat_map(|(r, &o)| (0..o).map(move |e| (r, e)))
            .collect()
    }

    /// Factor and in-block position of a point.
    fn locate(&self, point: usize) -> (usize, usize) {
        let mut p = point;
        for (r, &o) in self.orders.iter().enumerate() {
            if p < o {
                return (r, p);
            }
            p -= o;
        }
        panic!("point {point} outside 0..{}", self.n());
    }
}

/// Reduced word of a free product: syllables `(factor, exponent ≠ 0)` with
/// consecutive syllables in distinct factors.
type FreeWord = Vec<(u8, u32)>;

fn free_multiply(word: &FreeWord, (r, e): (usize, usize), orders: &[usize]) -> FreeWord {
    if e == 0 {
        return word.clone();
    }
    let mut out = word.clone();
    match out.last_mut() {
        Some(last) if last.0 as usize == r => {
            let ne = (last.1 as usize + e) % orders[r];
            if ne == 0 {
                out.pop();
            } else {
                last.1 = ne as u32;
            }
        }
        _ => out.push((r as u8, e as u32)),
    }
    out
}

/// Number of length-`k` sequences over the multiset `S` multiplying to the
/// identity: the `k`-loops at `1` on the Cayley graph.
pub fn loop_count(spec: &DualSpec, k: usize) -> u128 {
    if k == 0 {
        return 1;
    }
    let s = spec.generating_multiset();
    let orders = spec.orders.clone();
    let per_first: Vec<u128> = match spec.mode {
        DualMode::Direct => par::map(&s, |&(r, e)| {
            let mut start = vec![0usize; orders.len()];
            start[r] = e;
            let mut dp: HashMap<Vec<usize>, u128> = HashMap::from([(start, 1)]);
            for _ in 1..k {
                let mut next: HashMap<Vec<usize>, u128> = HashMap::new();
                for (state, c) in &dp {
                    for &(r2, e2) in &s {
                        let mut st = state.clone();
                        st[r2] = (st[r2] + e2) % orders[r2];
                        *next.entry(st).or_default() += c;
                    }
                }
                dp = next;
            }
            dp.get(&vec![0; orders.len()]).copied().unwrap_or(0)
        }),
        DualMode::Free => par::map(&s, |&(r, e)| {
            let start = free_multiply(&Vec::new(), (r, e), &orders);
            let mut dp: HashMap<FreeWord, u128> = HashMap::from([(start, 1)]);
            for step in 1..k {
                let remaining = k - step;
                let mut next: HashMap<FreeWord, u128> = HashMap::new();
                for (w, c) in &dp {
                    for &g in &s {
                        let nw = free_multiply(w, g, &orders);
                        // Each step shortens a reduced word by at most one syllable.
                        if nw.len() <= remaining {
                            *next.entry(nw).or_default() += c;
                        }
                    }
                }
                dp = next;
            }
            dp.get(&Vec::new()).copied().unwrap_or(0)
        }),
    };
    per_first.into_iter().sum()
}

/// Whether `u_{i_1 j_1} ... u_{i_k j_k} ≠ 0` (0-based points).
///
/// Every `u_ij` vanishes unless `i, j` share a block. Within a block the
/// entries are the minimal projections of `C^*(Z_{N_r})` indexed by
/// `i - j`. In the direct product all factors commute, so the product is
/// nonzero iff the difference is constant on each factor. In the free
/// product a word alternating between factors is nonzero iff each maximal
/// run inside one factor is, i.e. the difference is constant on each run.
pub fn orbital_relation(spec: &DualSpec, i: &[usize], j: &[usize]) -> bool {
    if i.len() != j.len() {
        return false;
    }
    let mut diffs: HashMap<usize, usize> = HashMap::new();
    let mut prev_factor: Option<usize> = None;
    for (&a, &b) in i.iter().zip(j) {
        let (ra, pa) = spec.locate(a);
        let (rb, pb) = spec.locate(b);
        if ra != rb {
            return false;
        }
        let d = (pa + spec.orders[ra] - pb) % spec.orders[ra];
        if spec.mode == DualMode::Free && prev_factor != Some(ra) {
            diffs.remove(&ra);
        }
        prev_factor = Some(ra);
        if *diffs.entry(ra).or_insert(d) != d {
            return false;
        }
    }
    true
}

/// A group of orbital classes sharing a factor pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassGroup {
    /// Factor (1-based block `A_r`) of each tuple position.
    pub pattern: Vec<usize>,
    /// Number of classes (copies of `A_{r_1} × ... × A_{r_k}`).
    pub copies: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitalClasses {
    pub k: usize,
    pub total: usize,
    pub groups: Vec<ClassGroup>,
}

/// Orbital classes for `k ≤ 3`. Each class is labelled by its canonical
/// tuple: on every factor (direct) or every run (free) the first index is
/// shifted to the block's first point.
pub fn orbital_classes(spec: &DualSpec, k: usize) -> Result<OrbitalClasses> {
    if !(1..=3).contains(&k) {
        return Err(Error::OrbitalOrder(k));
    }
    let n = spec.n();
    let mut by_pattern: BTreeMap<Vec<usize>, std::collections::BTreeSet<Vec<usize>>> = BTreeMap::new();
    let total_tuples = n.pow(k as u32);
    for code in 0..total_tuples {
        let mut t = Vec::with_capacity(k);
        let mut c = code;
        for _ in 0..k {
            t.push(c % n);
            c /= n;
        }
        let located: Vec<(usize, usize)> = t.iter().map(|&p| spec.locate(p)).collect();
        let pattern: Vec<usize> = located.iter().map(|&(r, _)| r + 1).collect();
        let mut shift: HashMap<usize, usize> = HashMap::new();
        let mut prev: Option<usize> = None;
        let canon: Vec<usize> = located
            .iter()
            .map(|&(r, p)| {
                if spec.mode == DualMode::Free && prev != Some(r) {
                    shift.remove(&r);
                }
                prev = Some(r);
                let s = *shift.entry(r).or_insert(p);
                (p + spec.orders[r] - s) % spec.orders[r]
            })
            .collect();
        by_pattern.entry(pattern).or_default().insert(canon);
    }
    let groups: Vec<ClassGroup> = by_pattern
        .into_iter()
        .map(|(pattern, set)| ClassGroup {
            pattern,
            copies: set.len(),
        })
        .collect();
    Ok(OrbitalClasses {
        k,
        total: groups.iter().map(|g| g.copies).sum(),
        groups,
    })
}

/// The `S_N^+` orbital rule: `a ~ b` iff `a_t = a_{t+1} ⇔ b_t = b_{t+1}`
/// for every consecutive pair.
pub fn snplus_orbital_rule(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len()
        && a.windows(2)
            .zip(b.windows(2))
            .all(|(x, y)| (x[0] == x[1]) == (y[0] == y[1]))
}

/// `2^{k-1}` classes of `k`-tuples under the `S_N^+` rule (`N ≥ 4`).
pub fn snplus_count(k: usize) -> u128 {
    if k == 0 {
        1
    } else {
        1u128 << (k - 1)
    }
}

fn consecutive_pattern(t: &[usize]) -> Vec<bool> {
    t.windows(2).map(|w| w[0] == w[1]).collect()
}

/// Classes of the `S_N^+` rule on `{0..n-1}^k`, found by grouping tuples.
pub fn snplus_classes(k: usize, n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut groups: BTreeMap<Vec<bool>, Vec<Vec<usize>>> = BTreeMap::new();
    for code in 0..n.pow(k as u32) {
        let mut t = Vec::with_capacity(k);
        let mut c = code;
        for _ in 0..k {
            t.push(c % n);
            c /= n;
        }
        groups.entry(consecutive_pattern(&t)).or_default().push(t);
    }
    groups.into_values().collect()
}

/// Dimension of the space of vectors in `(C^n)^{⊗k}` constant on the
/// classes of the `S_N^+` rule, as the rank of the class indicators.
pub fn snplus_pattern_space_dim(k: usize, n: usize) -> Result<usize> {
    let vectors: Vec<SparseTensorVector> = snplus_classes(k, n)
        .iter()
        .map(|class| {
            let mut v = SparseTensorVector::zero(n, k);
            for t in class {
                v.set(v.encode(t), ExactScalar::from_integer(1.into()));
            }
            v
        })
        .collect();
    rank(&vectors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(orders: &[usize], mode: DualMode) -> DualSpec {
        DualSpec::new(orders.to_vec(), mode).unwrap()
    }

    #[test]
    fn cyclic_loops() {
        for n in 2..=5 {
            for k in 1..=5 {
                let s = spec(&[n], DualMode::Free);
                assert_eq!(loop_count(&s, k), (n as u128).pow(k as u32 - 1));
                assert_eq!(loop_count(&spec(&[n], DualMode::Direct), k), loop_count(&s, k));
            }
        }
    }

    #[test]
    fn small_loop_counts() {
        assert_eq!(loop_count(&spec(&[2, 2], DualMode::Free), 1), 2);
        assert_eq!(loop_count(&spec(&[2, 2], DualMode::Direct), 2), 6);
        assert_eq!(loop_count(&spec(&[2, 2], DualMode::Free), 3), 20);
        assert_eq!(loop_count(&spec(&[2, 2], DualMode::Direct), 3), 20);
        assert!(loop_count(&spec(&[2, 2], DualMode::Free), 4) < loop_count(&spec(&[2, 2], DualMode::Direct), 4));
    }

    #[test]
    fn classes_k2() {
        let c = orbital_classes(&spec(&[2, 3], DualMode::Direct), 2).unwrap();
        assert_eq!(c.total, 7);
        let copies: Vec<(Vec<usize>, usize)> =
            c.groups.iter().map(|g| (g.pattern.clone(), g.copies)).collect();
        assert_eq!(
            copies,
            vec![(vec![1, 1], 2), (vec![1, 2], 1), (vec![2, 1], 1), (vec![2, 2], 3)]
        );
        assert_eq!(orbital_classes(&spec(&[2, 3], DualMode::Free), 2).unwrap().total, 7);
        assert_eq!(orbital_classes(&spec(&[2, 3], DualMode::Free), 1).unwrap().total, 2);
        assert_eq!(orbital_classes(&spec(&[2], DualMode::Free), 4), Err(Error::OrbitalOrder(4)));
    }

    #[test]
    fn classes_k3_differ() {
        let d = orbital_classes(&spec(&[2, 2], DualMode::Direct), 3).unwrap().total;
        let f = orbital_classes(&spec(&[2, 2], DualMode::Free), 3).unwrap().total;
        assert_eq!((d, f), (20, 18));
    }

    #[test]
    fn relation_matches_classes() {
        for mode in [DualMode::Direct, DualMode::Free] {
            let s = spec(&[2, 3], mode);
            assert!(orbital_relation(&s, &[0, 2, 1], &[1, 3, 0]));
            // free: the two block-1 positions form separate runs
            assert_eq!(orbital_relation(&s, &[0, 2, 0], &[1, 2, 0]), mode == DualMode::Free);
        }
    }

    #[test]
    fn snplus() {
        assert!(snplus_orbital_rule(&[1, 1, 2], &[3, 3, 7]));
        assert!(!snplus_orbital_rule(&[1, 2, 1], &[1, 1, 2]));
        assert_eq!(snplus_count(3), 4);
        for k in 1..=5 {
            assert_eq!(snplus_classes(k, k + 1).len() as u128, snplus_count(k));
        }
        assert_eq!(snplus_pattern_space_dim(3, 4).unwrap(), 4);
    }
}
