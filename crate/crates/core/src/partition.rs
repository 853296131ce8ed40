//! Set partitions of linearly ordered points and the categories of partitions
//! attached to the quizzy quantum groups.
//!
//! Points are 0-based internally; `Display` prints them 1-based, blocks
//! sorted by their minimum, e.g. `{1,3}{2,4}`.
//!
//! Order convention: `coarser_leq(σ, π)` holds when every block of `π` sits
//! inside a block of `σ`, so the one-block partition is the minimum.
//!
//! Two-row partitions (`k` upper points, `l` lower points) are flattened onto
//! `k + l` points: the upper row left to right, then the lower row right to
//! left. This is the rotation under which the basic crossing of `Hom(2, 2)`
//! becomes `{1,3}{2,4}` and permutation pairings carry the sign of their
//! permutation.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A partition of `{0, .., m-1}`, stored as its restricted growth string:
/// `labels[p]` is the index of the block containing `p`, blocks numbered in
/// order of their minimum element. This form is canonical.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    labels: Vec<usize>,
    blocks: usize,
}

impl SetPartition {
    /// Canonicalizes an arbitrary labelling: points with equal labels share a block.
    pub fn from_labels<T: Eq + std::hash::Hash>(labels: &[T]) -> Self {
        let mut seen: HashMap<&T, usize> = HashMap::with_capacity(labels.len());
        let mut out = Vec::with_capacity(labels.len());
        for l in labels {
            let next = seen.len();
            out.push(*seen.entry(l).or_insert(next));
        }
        SetPartition {
            blocks: seen.len(),
            labels: out,
        }
    }

    /// Builds a partition from explicit 0-based blocks, checking that they
    /// are nonempty, disjoint and cover `0..m`.
    pub fn from_blocks(m: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; m];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::Invalid("empty block".into()));
            }
            for &p in block {
                if p >= m {
                    return Err(Error::Invalid(format!("point {} outside 1..{}", p + 1, m)));
                }
                if labels[p] != usize::MAX {
                    return Err(Error::Invalid(format!("point {} appears twice", p + 1)));
                }
                labels[p] = b;
            }
        }
        if let Some(p) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::Invalid(format!("point {} is not covered", p + 1)));
        }
        Ok(Self::from_labels(&labels))
    }

    pub fn one_block(m: usize) -> Self {
        SetPartition {
            labels: vec![0; m],
            blocks: usize::from(m > 0),
        }
    }

    pub fn singletons(m: usize) -> Self {
        SetPartition {
            labels: (0..m).collect(),
            blocks: m,
        }
    }

    /// Flattens a two-row partition. `upper` and `lower` carry block labels
    /// for the upper and lower points, both read left to right.
    pub fn from_two_rows<T: Eq + std::hash::Hash + Clone>(upper: &[T], lower: &[T]) -> Self {
        let mut flat: Vec<T> = upper.to_vec();
        flat.extend(lower.iter().rev().cloned());
        Self::from_labels(&flat)
    }

    /// The pairing of `Hom(k, k)` joining upper point `i` to lower point `rho[i]`.
    pub fn permutation_pairing(rho: &[usize]) -> Self {
        let k = rho.len();
        let mut lower = vec![0; k];
        for (i, &j) in rho.iter().enumerate() {
            lower[j] = i;
        }
        let upper: Vec<usize> = (0..k).collect();
        Self::from_two_rows(&upper, &lower)
    }

    pub fn m(&self) -> usize {
        self.labels.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn block_of(&self, point: usize) -> usize {
        self.labels[point]
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.blocks];
        for (p, &b) in self.labels.iter().enumerate() {
            out[b].push(p);
        }
        out
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.blocks];
        for &b in &self.labels {
            sizes[b] += 1;
        }
        sizes
    }

    pub fn is_even(&self) -> bool {
        self.block_sizes().iter().all(|s| s % 2 == 0)
    }

    /// Number of quadruples `a < b < c < d` with `a, c` in one block and
    /// `b, d` in another.
    pub fn crossing_count(&self) -> usize {
        let l = &self.labels;
        let m = l.len();
        let mut count = 0;
        for a in 0..m {
            for b in a + 1..m {
                if l[b] == l[a] {
                    continue;
                }
                for c in b + 1..m {
                    if l[c] != l[a] {
                        continue;
                    }
                    count += (c + 1..m).filter(|&d| l[d] == l[b]).count();
                }
            }
        }
        count
    }

    pub fn is_noncrossing(&self) -> bool {
        // Early exit variant of crossing_count.
        let l = &self.labels;
        let m = l.len();
        for a in 0..m {
            for b in a + 1..m {
                if l[b] == l[a] {
                    continue;
                }
                for c in b + 1..m {
                    if l[c] == l[a] && (c + 1..m).any(|d| l[d] == l[b]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Every block holds as many even-position points as odd-position points.
    pub fn is_balanced(&self) -> bool {
        let mut diff = vec![0i64; self.blocks];
        for (p, &b) in self.labels.iter().enumerate() {
            diff[b] += if p % 2 == 0 { 1 } else { -1 };
        }
        diff.iter().all(|&d| d == 0)
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.labels.is_empty() {
            return write!(f, "{{}}");
        }
        for block in self.blocks() {
            write!(f, "{{")?;
            for (i, p) in block.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `13|24`, `1,3|2,4` or `{1,3}{2,4}` (1-based points).
impl FromStr for SetPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "{}" {
            return Ok(SetPartition::singletons(0));
        }
        let groups: Vec<&str> = if s.starts_with('{') {
            s.split('}')
                .map(|g| g.trim().trim_start_matches('{'))
                .filter(|g| !g.is_empty())
                .collect()
        } else {
            s.split('|').map(str::trim).collect()
        };
        let mut blocks = Vec::new();
        for g in groups {
            let points: Vec<usize> = if g.contains(',') {
                g.split(',')
                    .map(|t| t.trim().parse::<usize>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|e| Error::Invalid(format!("bad point in {g:?}: {e}")))?
            } else {
                g.chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize))
                    .collect::<Option<_>>()
                    .ok_or_else(|| Error::Invalid(format!("bad block {g:?}")))?
            };
            if points.contains(&0) {
                return Err(Error::Invalid("points are numbered from 1".into()));
            }
            blocks.push(points.into_iter().map(|p| p - 1).collect::<Vec<_>>());
        }
        let m = blocks.iter().flatten().copied().max().map_or(0, |p| p + 1);
        SetPartition::from_blocks(m, &blocks)
    }
}

impl Serialize for SetPartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Kernel of an index tuple: points are joined when their indices agree.
pub fn kernel<T: Eq + std::hash::Hash>(indices: &[T]) -> SetPartition {
    SetPartition::from_labels(indices)
}

fn same_m(a: &SetPartition, b: &SetPartition) -> Result<()> {
    if a.m() != b.m() {
        return Err(Error::PointMismatch(a.m(), b.m()));
    }
    Ok(())
}

/// `σ ≤ π`: every block of `pi` lies inside a block of `sigma`.
pub fn coarser_leq(sigma: &SetPartition, pi: &SetPartition) -> Result<bool> {
    same_m(sigma, pi)?;
    Ok(leq_unchecked(sigma, pi))
}

pub(crate) fn leq_unchecked(sigma: &SetPartition, pi: &SetPartition) -> bool {
    if sigma.blocks > pi.blocks {
        return false;
    }
    let mut image = vec![usize::MAX; pi.blocks];
    for (p, &b) in pi.labels.iter().enumerate() {
        let s = sigma.labels[p];
        if image[b] == usize::MAX {
            image[b] = s;
        } else if image[b] != s {
            return false;
        }
    }
    true
}

/// The finest partition coarser than both arguments, `π ∨ σ`.
pub fn join_coarsen(pi: &SetPartition, sigma: &SetPartition) -> Result<SetPartition> {
    same_m(pi, sigma)?;
    Ok(join_unchecked(&[pi, sigma]))
}

pub(crate) fn join_unchecked(parts: &[&SetPartition]) -> SetPartition {
    let m = parts.first().map_or(0, |p| p.m());
    let mut uf = UnionFind::new(m);
    for part in parts {
        let mut first = vec![usize::MAX; part.blocks];
        for (p, &b) in part.labels.iter().enumerate() {
            if first[b] == usize::MAX {
                first[b] = p;
            } else {
                uf.union(first[b], p);
            }
        }
    }
    let roots: Vec<usize> = (0..m).map(|p| uf.find(p)).collect();
    SetPartition::from_labels(&roots)
}

/// Number of blocks of the join of several partitions on the same points.
pub(crate) fn join_block_count(parts: &[&SetPartition]) -> usize {
    join_unchecked(parts).num_blocks()
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Signature of an even partition: `(-1)^{crossing_count}`.
pub fn signature(pi: &SetPartition) -> Result<i8> {
    if !pi.is_even() {
        return Err(Error::OddBlock(pi.to_string()));
    }
    Ok(if pi.crossing_count().is_multiple_of(2) { 1 } else { -1 })
}

/// The categories of partitions behind the quizzy quantum groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CategoryId {
    /// All partitions; `S_N`.
    P,
    /// Noncrossing partitions; `S_N⁺`.
    NC,
    /// Pairings; `O_N`.
    P2,
    /// Noncrossing pairings; `O_N⁺`.
    NC2,
    /// Partitions with even blocks; `H_N`.
    Peven,
    /// Noncrossing partitions with even blocks; `H_N⁺`.
    NCeven,
    /// Singletons and pairs; `B_N`.
    P12,
    /// Noncrossing singletons and pairs; `B_N⁺`.
    NC12,
    /// Balanced pairings; `O_N^*`. Experimental.
    P2star,
    /// Balanced even partitions; `H_N^*`. Experimental.
    Pevenstar,
}

impl CategoryId {
    pub const ALL: [CategoryId; 10] = [
        CategoryId::P,
        CategoryId::NC,
        CategoryId::P2,
        CategoryId::NC2,
        CategoryId::Peven,
        CategoryId::NCeven,
        CategoryId::P12,
        CategoryId::NC12,
        CategoryId::P2star,
        CategoryId::Pevenstar,
    ];

    pub fn contains(self, pi: &SetPartition) -> bool {
        let sizes = pi.block_sizes();
        let pairs = || sizes.iter().all(|&s| s == 2);
        let even = || sizes.iter().all(|&s| s % 2 == 0);
        let small = || sizes.iter().all(|&s| s <= 2);
        match self {
            CategoryId::P => true,
            CategoryId::NC => pi.is_noncrossing(),
            CategoryId::P2 => pairs(),
            CategoryId::NC2 => pairs() && pi.is_noncrossing(),
            CategoryId::Peven => even(),
            CategoryId::NCeven => even() && pi.is_noncrossing(),
            CategoryId::P12 => small(),
            CategoryId::NC12 => small() && pi.is_noncrossing(),
            CategoryId::P2star => pairs() && pi.is_balanced(),
            CategoryId::Pevenstar => even() && pi.is_balanced(),
        }
    }

    /// Whether every member has even blocks, so that twisting is defined.
    pub fn is_even(self) -> bool {
        matches!(
            self,
            CategoryId::P2
                | CategoryId::NC2
                | CategoryId::Peven
                | CategoryId::NCeven
                | CategoryId::P2star
                | CategoryId::Pevenstar
        )
    }

    pub fn is_experimental(self) -> bool {
        matches!(self, CategoryId::P2star | CategoryId::Pevenstar)
    }

    pub fn require_enabled(self, experimental: bool) -> Result<()> {
        if self.is_experimental() && !experimental {
            return Err(Error::Experimental(self));
        }
        Ok(())
    }

    /// The easy quantum group with this category.
    pub fn group_name(self) -> &'static str {
        match self {
            CategoryId::P => "S_N",
            CategoryId::NC => "S_N+",
            CategoryId::P2 => "O_N",
            CategoryId::NC2 => "O_N+",
            CategoryId::Peven => "H_N",
            CategoryId::NCeven => "H_N+",
            CategoryId::P12 => "B_N",
            CategoryId::NC12 => "B_N+",
            CategoryId::P2star => "O_N*",
            CategoryId::Pevenstar => "H_N*",
        }
    }
}

impl fmt::Display for CategoryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for CategoryId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric() || *c == '*')
            .collect::<String>()
            .to_ascii_lowercase();
        Ok(match key.as_str() {
            "p" => CategoryId::P,
            "nc" => CategoryId::NC,
            "p2" => CategoryId::P2,
            "nc2" => CategoryId::NC2,
            "peven" => CategoryId::Peven,
            "nceven" => CategoryId::NCeven,
            "p12" => CategoryId::P12,
            "nc12" => CategoryId::NC12,
            "p2star" | "p2*" => CategoryId::P2star,
            "pevenstar" | "peven*" => CategoryId::Pevenstar,
            _ => return Err(Error::Invalid(format!("unknown category {s:?}"))),
        })
    }
}

/// Calls `f` on every restricted growth string of length `m`.
fn for_each_rgs(m: usize, mut f: impl FnMut(&[usize], usize)) {
    if m == 0 {
        f(&[], 0);
        return;
    }
    let mut labels = vec![0usize; m];
    // maxes[i] = max(labels[..i]) + 1, the largest label allowed at position i.
    let mut maxes = vec![1usize; m];
    loop {
        let blocks = maxes[m - 1].max(labels[m - 1] + 1);
        f(&labels, blocks);
        let mut i = m - 1;
        loop {
            if i == 0 {
                return;
            }
            if labels[i] < maxes[i] {
                labels[i] += 1;
                break;
            }
            labels[i] = 0;
            i -= 1;
        }
        for j in i + 1..m {
            maxes[j] = maxes[j - 1].max(labels[j - 1] + 1);
        }
    }
}

/// All partitions of `m` points in the category, canonical and in
/// lexicographic order of their growth strings.
pub fn enumerate(cat: CategoryId, m: usize) -> Vec<SetPartition> {
    let mut out = Vec::new();
    if cat.is_even() && m % 2 == 1 {
        return out;
    }
    for_each_rgs(m, |labels, blocks| {
        let pi = SetPartition {
            labels: labels.to_vec(),
            blocks,
        };
        if cat.contains(&pi) {
            out.push(pi);
        }
    });
    out
}

/// Möbius function of one category on `m` points, under the coarsening order.
/// Rows `μ(σ, ·)` are computed on first use and cached.
pub struct MobiusTable {
    elements: Vec<SetPartition>,
    index: HashMap<SetPartition, usize>,
    rows: RwLock<HashMap<usize, Arc<Vec<i64>>>>,
}

impl MobiusTable {
    pub fn new(lattice: CategoryId, m: usize) -> Self {
        let mut elements = enumerate(lattice, m);
        // Coarser elements first; a strictly coarser partition has fewer blocks.
        elements.sort_by_key(|p| p.num_blocks());
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        MobiusTable {
            elements,
            index,
            rows: RwLock::new(HashMap::new()),
        }
    }

    pub fn elements(&self) -> &[SetPartition] {
        &self.elements
    }

    pub fn index_of(&self, pi: &SetPartition) -> Option<usize> {
        self.index.get(pi).copied()
    }

    fn row(&self, s: usize) -> Arc<Vec<i64>> {
        if let Some(r) = self.rows.read().unwrap().get(&s) {
            return Arc::clone(r);
        }
        let sigma = &self.elements[s];
        let mut mu = vec![0i64; self.elements.len()];
        let mut above: Vec<usize> = Vec::new();
        for (t, pi) in self.elements.iter().enumerate() {
            if t == s {
                mu[t] = 1;
                above.push(t);
            } else if leq_unchecked(sigma, pi) {
                mu[t] = -above
                    .iter()
                    .filter(|&&u| leq_unchecked(&self.elements[u], pi))
                    .map(|&u| mu[u])
                    .sum::<i64>();
                above.push(t);
            }
        }
        let row = Arc::new(mu);
        self.rows
            .write()
            .unwrap()
            .entry(s)
            .or_insert_with(|| Arc::clone(&row));
        row
    }

    /// `μ(σ, π)`; `None` when either argument is outside the lattice.
    pub fn mu(&self, sigma: &SetPartition, pi: &SetPartition) -> Option<i64> {
        let s = self.index_of(sigma)?;
        let t = self.index_of(pi)?;
        Some(self.row(s)[t])
    }
}

type TableCache = Mutex<HashMap<(CategoryId, usize), Arc<MobiusTable>>>;

/// Shared, lazily built Möbius table.
pub fn mobius_table(lattice: CategoryId, m: usize) -> Arc<MobiusTable> {
    static TABLES: OnceLock<TableCache> = OnceLock::new();
    let cache = TABLES.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&(lattice, m)) {
        return Arc::clone(t);
    }
    // Build outside the lock; a concurrent duplicate build is harmless.
    let table = Arc::new(MobiusTable::new(lattice, m));
    Arc::clone(
        cache
            .lock()
            .unwrap()
            .entry((lattice, m))
            .or_insert(table),
    )
}

/// `μ(σ, π)` in the given lattice.
pub fn mobius(sigma: &SetPartition, pi: &SetPartition, lattice: CategoryId) -> Result<i64> {
    same_m(sigma, pi)?;
    for p in [sigma, pi] {
        if !lattice.contains(p) {
            return Err(Error::Invalid(format!("{p} is not in {lattice}")));
        }
    }
    let table = mobius_table(lattice, sigma.m());
    Ok(table.mu(sigma, pi).expect("members are indexed"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    #[test]
    fn enumerate_small_examples() {
        assert_eq!(enumerate(CategoryId::NC, 3).len(), 5);
        assert_eq!(enumerate(CategoryId::P2, 2), vec![p("12")]);
        let nceven: Vec<SetPartition> = enumerate(CategoryId::NCeven, 4);
        let mut expected = vec![p("12|34"), p("14|23"), p("1234")];
        expected.sort();
        let mut got = nceven.clone();
        got.sort();
        assert_eq!(got, expected);
        assert!(enumerate(CategoryId::Peven, 5).is_empty());
        assert_eq!(enumerate(CategoryId::P, 0).len(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&[7, 7, 7]), p("123"));
        assert_eq!(kernel(&[1, 2, 1, 2]), p("13|24"));
        assert_eq!(kernel(&[3, 1, 4, 1]), p("1|24|3"));
    }

    #[test]
    fn order_examples() {
        assert!(coarser_leq(&p("1234"), &p("14|23")).unwrap());
        assert!(coarser_leq(&p("13|24"), &p("13|24")).unwrap());
        assert!(!coarser_leq(&p("12|34"), &p("14|23")).unwrap());
        assert!(!coarser_leq(&p("14|23"), &p("12|34")).unwrap());
        assert_eq!(
            coarser_leq(&p("12"), &p("123")),
            Err(Error::PointMismatch(2, 3))
        );
    }

    #[test]
    fn join_examples() {
        assert_eq!(join_coarsen(&p("12|34"), &p("23|14")).unwrap(), p("1234"));
        assert_eq!(join_coarsen(&p("13|24"), &p("13|24")).unwrap(), p("13|24"));
        assert_eq!(join_coarsen(&p("12|3|4"), &p("1|2|34")).unwrap(), p("12|34"));
    }

    #[test]
    fn crossings() {
        assert_eq!(p("13|24").crossing_count(), 1);
        assert_eq!(p("12|34|56").crossing_count(), 0);
        assert_eq!(p("14|23").crossing_count(), 0);
        assert!(!p("13|24").is_noncrossing());
    }

    #[test]
    fn signature_examples() {
        assert_eq!(signature(&p("13|24")), Ok(-1));
        assert_eq!(signature(&p("1234")), Ok(1));
        // 3-cycle 0->1->2->0
        assert_eq!(signature(&SetPartition::permutation_pairing(&[1, 2, 0])), Ok(1));
        assert_eq!(signature(&SetPartition::permutation_pairing(&[1, 0])), Ok(-1));
        assert_eq!(signature(&SetPartition::permutation_pairing(&[0, 1])), Ok(1));
        assert!(matches!(signature(&p("1|23")), Err(Error::OddBlock(_))));
    }

    #[test]
    fn basic_crossing_is_the_flip() {
        // Hom(2,2) flip: upper i joined to lower 1-i.
        assert_eq!(SetPartition::permutation_pairing(&[1, 0]), p("13|24"));
        assert_eq!(SetPartition::from_two_rows(&[0, 0], &[0, 0]), p("1234"));
    }

    #[test]
    fn mobius_examples() {
        let one = p("1234");
        let cross = p("13|24");
        assert_eq!(mobius(&cross, &cross, CategoryId::Peven), Ok(1));
        assert_eq!(mobius(&one, &cross, CategoryId::Peven), Ok(-1));
        assert_eq!(mobius(&p("12|34"), &cross, CategoryId::Peven), Ok(0));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("{1,3}{2,4}").to_string(), "{1,3}{2,4}");
        assert_eq!(p("1,3|2,4"), p("13|24"));
        assert!("12|2".parse::<SetPartition>().is_err());
        assert!("13".parse::<SetPartition>().is_err());
    }

    #[test]
    fn balanced() {
        assert!(p("12|34").is_balanced());
        assert!(!p("13|24").is_balanced());
        assert!(CategoryId::P2star.contains(&p("14|23")));
    }
}
