//! Partition vectors, fixed-space dimensions and Haar integrals for quizzy
//! quantum groups.
//!
//! By Frobenius duality every intertwiner question is phrased as a fixed
//! vector question on a single row of legs, so the basic objects are the
//! vectors `ξ_π ∈ (C^N)^{⊗m}` and their signed versions `ξ̄_π`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use crate::linalg::{self, rank, ExactMatrix, ExactScalar, SparseTensorVector};
use crate::partition::{
    coarser_leq, enumerate, join_block_count, kernel, mobius_table, signature, CategoryId,
    SetPartition,
};
use crate::{par, Budget, Error, Result};

/// A quizzy quantum group: an easy category, optionally twisted, at size `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct QuizzySpec {
    pub category: CategoryId,
    pub twisted: bool,
    pub n: usize,
}

impl QuizzySpec {
    pub fn new(category: CategoryId, twisted: bool, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("N must be at least 1".into()));
        }
        if twisted && !category.is_even() {
            return Err(Error::TwistNeedsEven(category));
        }
        Ok(QuizzySpec {
            category,
            twisted,
            n,
        })
    }

    pub fn untwisted(category: CategoryId, n: usize) -> Result<Self> {
        Self::new(category, false, n)
    }

    /// `S_N+`, `H_N`, `Ō_N`, ... with the overbar rendered as a `bar` prefix.
    pub fn group_name(&self) -> String {
        let base = self.category.group_name();
        if self.twisted {
            format!("bar{base}")
        } else {
            base.to_string()
        }
    }
}

impl fmt::Display for QuizzySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (category {}{}, N={})", self.group_name(), self.category,
            if self.twisted { ", twisted" } else { "" }, self.n)
    }
}

/// Calls `f(block_values, encoded_index)` for every assignment of values in
/// `0..n` to the blocks of `pi`.
fn for_each_block_assignment(pi: &SetPartition, n: usize, mut f: impl FnMut(&[usize], u64)) {
    let b = pi.num_blocks();
    let m = pi.m();
    // Weight of each block in the encoded index: sum of n^p over its points.
    let mut weight = vec![0u64; b];
    let mut place = 1u64;
    for p in 0..m {
        weight[pi.block_of(p)] += place;
        place = place.wrapping_mul(n as u64);
    }
    let mut values = vec![0usize; b];
    let mut idx = 0u64;
    loop {
        f(&values, idx);
        let mut i = 0;
        loop {
            if i == b {
                return;
            }
            if values[i] + 1 < n {
                values[i] += 1;
                idx += weight[i];
                break;
            }
            idx -= weight[i] * (n as u64 - 1);
            values[i] = 0;
            i += 1;
        }
    }
}

/// `ξ_π`: entry 1 at every multi-index constant on the blocks of `pi`.
pub fn xi_vector(pi: &SetPartition, n: usize) -> SparseTensorVector {
    let mut entries = Vec::new();
    for_each_block_assignment(pi, n, |_, idx| entries.push((idx, ExactScalar::one())));
    SparseTensorVector::from_entries(n, pi.m(), entries)
}

/// `ξ̄_π`: same support as `ξ_π`, entry `ε(ker i)` at index `i`.
///
/// `ker i` is coarser than `π`, hence even, so the signature is defined.
pub fn xi_twisted(pi: &SetPartition, n: usize) -> Result<SparseTensorVector> {
    if !pi.is_even() {
        return Err(Error::OddBlock(pi.to_string()));
    }
    let blocks = pi.blocks();
    // ker i is determined by the kernel of the block values.
    let mut memo: HashMap<SetPartition, i64> = HashMap::new();
    let mut entries = Vec::new();
    for_each_block_assignment(pi, n, |values, idx| {
        let vk = kernel(values);
        let sign = *memo.entry(vk).or_insert_with(|| {
            let mut labels = vec![0usize; pi.m()];
            for (b, block) in blocks.iter().enumerate() {
                for &p in block {
                    labels[p] = values[b];
                }
            }
            signature(&kernel(&labels)).expect("coarser than an even partition") as i64
        });
        entries.push((idx, linalg::int(sign)));
    });
    Ok(SparseTensorVector::from_entries(n, pi.m(), entries))
}

/// Coefficients `c_σ = Σ_{σ ≤ τ ≤ π} ε(τ) μ(σ, τ)` of the Möbius expansion
/// `ξ̄_π = Σ_σ c_σ ξ_σ` over the lattice `P_even`; zero terms omitted.
pub fn twist_expansion(pi: &SetPartition) -> Result<Vec<(SetPartition, i64)>> {
    if !pi.is_even() {
        return Err(Error::OddBlock(pi.to_string()));
    }
    let table = mobius_table(CategoryId::Peven, pi.m());
    let below: Vec<&SetPartition> = table
        .elements()
        .iter()
        .filter(|s| coarser_leq(s, pi).unwrap_or(false))
        .collect();
    let mut out = Vec::new();
    for sigma in &below {
        let mut c = 0i64;
        for tau in &below {
            if coarser_leq(sigma, tau)? {
                let mu = table.mu(sigma, tau).expect("both in P_even");
                c += signature(tau)? as i64 * mu;
            }
        }
        if c != 0 {
            out.push(((*sigma).clone(), c));
        }
    }
    out.sort();
    Ok(out)
}

/// `ξ̄_π` rebuilt from untwisted vectors through [`twist_expansion`].
pub fn twist_via_mobius(pi: &SetPartition, n: usize) -> Result<SparseTensorVector> {
    let mut v = SparseTensorVector::zero(n, pi.m());
    for (sigma, c) in twist_expansion(pi)? {
        v.add_scaled(&xi_vector(&sigma, n), &linalg::int(c))?;
    }
    Ok(v)
}

/// `ξ_π` or `ξ̄_π` according to the spec.
pub fn spec_vector(spec: &QuizzySpec, pi: &SetPartition) -> Result<SparseTensorVector> {
    if spec.twisted {
        xi_twisted(pi, spec.n)
    } else {
        Ok(xi_vector(pi, spec.n))
    }
}

/// Spanning family of `Fix(u^{⊗m})`, one vector per partition in
/// [`enumerate`] order.
pub fn partition_vectors(spec: &QuizzySpec, m: usize, budget: &Budget) -> Result<Vec<SparseTensorVector>> {
    budget.check_index_space(spec.n, m)?;
    let parts = enumerate(spec.category, m);
    par::try_map(&parts, |pi| spec_vector(spec, pi))
}

/// `dim Fix(u^{⊗k})`, the number of analytic `k`-orbitals.
pub fn fix_dim(spec: &QuizzySpec, k: usize, budget: &Budget) -> Result<usize> {
    rank(&partition_vectors(spec, k, budget)?)
}

/// Subspace constraints on tensor legs (0-based leg positions).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum LegConstraint {
    /// `span(e_i ⊗ e_i)` on two legs.
    Diagonal(usize, usize),
    /// Alternating tensors on a set of legs.
    Antisymmetric(Vec<usize>),
}

impl LegConstraint {
    pub fn legs(&self) -> Vec<usize> {
        match self {
            LegConstraint::Diagonal(a, b) => vec![*a, *b],
            LegConstraint::Antisymmetric(legs) => legs.clone(),
        }
    }
}

fn validate_constraints(m: usize, constraints: &[LegConstraint]) -> Result<()> {
    let mut used = vec![false; m];
    for c in constraints {
        for leg in c.legs() {
            if leg >= m {
                return Err(Error::LegOutOfRange { leg: leg + 1, m });
            }
            if used[leg] {
                return Err(Error::OverlappingConstraints(leg + 1));
            }
            used[leg] = true;
        }
    }
    Ok(())
}

fn signed_permutations(r: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(Vec<usize>, i64)>) {
        let r = used.len();
        if prefix.len() == r {
            let mut inv = 0;
            for i in 0..r {
                for j in i + 1..r {
                    if prefix[i] > prefix[j] {
                        inv += 1;
                    }
                }
            }
            out.push((prefix.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for x in 0..r {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; r], &mut out);
    out
}

/// Orthogonal projection onto the constrained subspace `V`.
///
/// Both kinds of constraint commute, since they act on disjoint legs.
pub fn project(v: &SparseTensorVector, constraints: &[LegConstraint]) -> SparseTensorVector {
    let mut cur = v.clone();
    for c in constraints {
        cur = match c {
            LegConstraint::Diagonal(a, b) => SparseTensorVector::from_entries(
                cur.n(),
                cur.m(),
                cur.iter().filter_map(|(idx, x)| {
                    let d = cur.decode(idx);
                    (d[*a] == d[*b]).then(|| (idx, x.clone()))
                }),
            ),
            LegConstraint::Antisymmetric(legs) => {
                let perms = signed_permutations(legs.len());
                let fact: u64 = (1..=legs.len() as u64).product();
                let scale = ExactScalar::new(BigInt::one(), BigInt::from(fact));
                let mut out = SparseTensorVector::zero(cur.n(), cur.m());
                for (idx, x) in cur.iter() {
                    let d = cur.decode(idx);
                    let vals: Vec<usize> = legs.iter().map(|&l| d[l]).collect();
                    let mut sorted = vals.clone();
                    sorted.sort_unstable();
                    if sorted.windows(2).any(|w| w[0] == w[1]) {
                        // Repeated values on alternating legs are killed.
                        continue;
                    }
                    let xs = x * &scale;
                    for (perm, sgn) in &perms {
                        let mut e = d.clone();
                        for (t, &l) in legs.iter().enumerate() {
                            e[l] = vals[perm[t]];
                        }
                        let c = if *sgn > 0 { xs.clone() } else { -xs.clone() };
                        out.add_at(cur.encode(&e), &c);
                    }
                }
                out
            }
        };
    }
    cur
}

/// `dim(Fix(u^{⊗m}) ∩ V)` for the subspace `V` cut out by the constraints.
///
/// Computed as `rank{P_V ξ_π}`. `V` is an invariant subspace of `u^{⊗m}`
/// (the diagonal span carries the magic representation `p = (u_ij^2)`, and
/// the antisymmetrizer commutes with `g^{⊗r}`), so the orthogonal projection
/// `P_V` is an intertwiner. Hence `P_V(Fix) ⊆ Fix ∩ V`, and any `x ∈ Fix ∩ V`
/// equals `P_V x`, giving equality.
pub fn constrained_fix_dim(
    spec: &QuizzySpec,
    m: usize,
    constraints: &[LegConstraint],
    budget: &Budget,
) -> Result<usize> {
    validate_constraints(m, constraints)?;
    let vectors = partition_vectors(spec, m, budget)?;
    if constraints.is_empty() {
        return rank(&vectors);
    }
    let projected = par::map(&vectors, |v| project(v, constraints));
    rank(&projected)
}

/// A letter in a character word: `u` (fundamental) or `p` (magic, `p_ij = u_ij^2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Letter {
    U,
    P,
}

/// Parses words such as `upup`.
pub fn parse_word(s: &str) -> Result<Vec<Letter>> {
    s.chars()
        .map(|c| match c.to_ascii_lowercase() {
            'u' => Ok(Letter::U),
            'p' => Ok(Letter::P),
            _ => Err(Error::Invalid(format!("word letters are u and p, got {c:?}"))),
        })
        .collect()
}

pub fn word_string(word: &[Letter]) -> String {
    word.iter()
        .map(|l| match l {
            Letter::U => 'u',
            Letter::P => 'p',
        })
        .collect()
}

/// Leg count and diagonal constraints for a word: each `p` takes two
/// adjacent legs, in word order.
pub fn word_legs(word: &[Letter]) -> (usize, Vec<LegConstraint>) {
    let mut m = 0;
    let mut constraints = Vec::new();
    for l in word {
        match l {
            Letter::U => m += 1,
            Letter::P => {
                constraints.push(LegConstraint::Diagonal(m, m + 1));
                m += 2;
            }
        }
    }
    (m, constraints)
}

/// `∫ χ_{w_1} ... χ_{w_k} = dim Fix(w_1 ⊗ ... ⊗ w_k)`.
pub fn word_moment(word: &[Letter], spec: &QuizzySpec, budget: &Budget) -> Result<usize> {
    let (m, constraints) = word_legs(word);
    constrained_fix_dim(spec, m, &constraints, budget)
}

/// A total together with its per-term contributions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Breakdown {
    pub total: usize,
    pub terms: Vec<(String, usize)>,
}

/// All words of length `k` over `{u, p}` in lexicographic order (`u` first).
pub fn all_words(k: usize) -> Vec<Vec<Letter>> {
    (0..1usize << k)
        .map(|bits| {
            (0..k)
                .map(|i| {
                    if bits >> (k - 1 - i) & 1 == 1 {
                        Letter::P
                    } else {
                        Letter::U
                    }
                })
                .collect()
        })
        .collect()
}

/// Spec of the hyperoctahedral side: `H_N` (`P_even`) or `H_N+` (`NC_even`).
pub fn hyperoctahedral_spec(n: usize, liberated: bool) -> Result<QuizzySpec> {
    let cat = if liberated {
        CategoryId::NCeven
    } else {
        CategoryId::Peven
    };
    QuizzySpec::untwisted(cat, n)
}

/// Analytic `k`-orbital count of `H_N` or `H_N+` acting on `2N` points:
/// `∫ χ_v^k` with `χ_v = χ_p + χ_u`, expanded over the `2^k` words.
pub fn sudoku_moment(k: usize, n: usize, liberated: bool, budget: &Budget) -> Result<Breakdown> {
    let spec = hyperoctahedral_spec(n, liberated)?;
    let words = all_words(k);
    let values = par::try_map(&words, |w| word_moment(w, &spec, budget))?;
    Ok(Breakdown {
        total: values.iter().sum(),
        terms: words.iter().map(|w| word_string(w)).zip(values).collect(),
    })
}

/// `dim Fix(Λ^{r_1} ⊗ ... ⊗ Λ^{r_k})` for `O_N`.
pub fn exterior_word_moment(ranks: &[usize], n: usize, budget: &Budget) -> Result<usize> {
    if ranks.iter().any(|&r| r > n) {
        return Ok(0);
    }
    let m: usize = ranks.iter().sum();
    budget.check_index_space(n, m)?;
    if m % 2 == 1 {
        return Ok(0);
    }
    let mut constraints = Vec::new();
    let mut start = 0;
    for &r in ranks {
        if r >= 2 {
            constraints.push(LegConstraint::Antisymmetric((start..start + r).collect()));
        }
        start += r;
    }
    let spec = QuizzySpec::untwisted(CategoryId::P2, n)?;
    constrained_fix_dim(&spec, m, &constraints, budget)
}

/// `∫ χ^k` for the magic representation of `Ō_N` on `2^N` points, as the
/// sum of [`exterior_word_moment`] over all `(N+1)^k` rank words.
pub fn exterior_orbital_count(k: usize, n: usize, budget: &Budget) -> Result<Breakdown> {
    let count = (n + 1).pow(k as u32);
    let words: Vec<Vec<usize>> = (0..count)
        .map(|mut c| {
            let mut w = vec![0; k];
            for slot in w.iter_mut().rev() {
                *slot = c % (n + 1);
                c /= n + 1;
            }
            w
        })
        .collect();
    let values = par::try_map(&words, |w| exterior_word_moment(w, n, budget))?;
    Ok(Breakdown {
        total: values.iter().sum(),
        terms: words
            .iter()
            .map(|w| {
                let s: Vec<String> = w.iter().map(|r| r.to_string()).collect();
                s.join(",")
            })
            .zip(values)
            .collect(),
    })
}

type WeingartenCache = Mutex<HashMap<(CategoryId, usize, usize), Arc<ExactMatrix>>>;

/// Shared Weingarten matrix of `category(m)` at `N`.
pub fn weingarten(cat: CategoryId, m: usize, n: usize) -> Result<Arc<ExactMatrix>> {
    static CACHE: OnceLock<WeingartenCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(w) = cache.lock().unwrap().get(&(cat, m, n)) {
        return Ok(Arc::clone(w));
    }
    let w = Arc::new(linalg::weingarten_matrix(cat, m, n)?);
    Ok(Arc::clone(cache.lock().unwrap().entry((cat, m, n)).or_insert(w)))
}

/// `δ_π(a)` (or its signed version): the entry of `ξ_π` / `ξ̄_π` at `a`.
fn delta(spec: &QuizzySpec, pi: &SetPartition, a: &[usize]) -> i64 {
    let constant = (0..a.len()).all(|p| {
        (0..p).all(|q| pi.block_of(p) != pi.block_of(q) || a[p] == a[q])
    });
    if !constant {
        0
    } else if spec.twisted {
        signature(&kernel(a)).expect("coarser than an even partition") as i64
    } else {
        1
    }
}

/// `∫ u_{a_1 b_1} ... u_{a_m b_m} = Σ_{π,σ} δ_π(a) δ_σ(b) W(π, σ)`, with
/// 0-based indices.
pub fn weingarten_integrate(spec: &QuizzySpec, a: &[usize], b: &[usize]) -> Result<ExactScalar> {
    if a.len() != b.len() {
        return Err(Error::PointMismatch(a.len(), b.len()));
    }
    if let Some(&bad) = a.iter().chain(b).find(|&&x| x >= spec.n) {
        return Err(Error::Invalid(format!("index {} outside 1..{}", bad + 1, spec.n)));
    }
    let m = a.len();
    let w = weingarten(spec.category, m, spec.n)?;
    let parts = enumerate(spec.category, m);
    let da: Vec<i64> = parts.iter().map(|p| delta(spec, p, a)).collect();
    let db: Vec<i64> = parts.iter().map(|p| delta(spec, p, b)).collect();
    let mut acc = ExactScalar::zero();
    for (i, x) in da.iter().enumerate().filter(|(_, x)| **x != 0) {
        for (j, y) in db.iter().enumerate().filter(|(_, y)| **y != 0) {
            acc += w.get(i, j) * linalg::int(x * y);
        }
    }
    Ok(acc)
}

/// `∫ χ_{w_1} ... χ_{w_k}` through the Weingarten matrix:
/// `Σ_{π,σ} W(π, σ) N^{|π ∨ σ ∨ ρ|}`, where `ρ` joins the two legs of each `p`.
///
/// Signs of the twisted vectors enter squared, so the same formula covers
/// twisted specs.
pub fn weingarten_word_moment(spec: &QuizzySpec, word: &[Letter]) -> Result<ExactScalar> {
    let (m, constraints) = word_legs(word);
    let mut rho_labels: Vec<usize> = (0..m).collect();
    for c in &constraints {
        if let LegConstraint::Diagonal(x, y) = c {
            rho_labels[*y] = *x;
        }
    }
    let rho = SetPartition::from_labels(&rho_labels);
    let w = weingarten(spec.category, m, spec.n)?;
    let parts = enumerate(spec.category, m);
    let base = BigInt::from(spec.n);
    let rows = par::map_range(parts.len(), |i| {
        let mut acc = ExactScalar::zero();
        for (j, sigma) in parts.iter().enumerate() {
            let wij = w.get(i, j);
            if wij.is_zero() {
                continue;
            }
            let blocks = join_block_count(&[&parts[i], sigma, &rho]);
            acc += wij * ExactScalar::from_integer(Pow::pow(&base, blocks as u32));
        }
        acc
    });
    Ok(rows.into_iter().fold(ExactScalar::zero(), |a, b| a + b))
}

/// First tensor power where the outer group has strictly fewer fixed vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub level: Option<usize>,
    pub inner_dims: Vec<usize>,
    pub outer_dims: Vec<usize>,
}

/// Level of the liberation `inner ⊂ outer`: the smallest `l ≤ cap` with
/// `fix_dim(inner, l) > fix_dim(outer, l)`. Both sequences are reported for
/// `k = 1..=cap`.
pub fn liberation_level(
    inner: &QuizzySpec,
    outer: &QuizzySpec,
    cap: usize,
    budget: &Budget,
) -> Result<LevelReport> {
    if inner.n != outer.n {
        return Err(Error::Invalid(format!(
            "liberation compares groups of the same N ({} vs {})",
            inner.n, outer.n
        )));
    }
    let ks: Vec<usize> = (1..=cap).collect();
    let inner_dims = par::try_map(&ks, |&k| fix_dim(inner, k, budget))?;
    let outer_dims = par::try_map(&ks, |&k| fix_dim(outer, k, budget))?;
    let level = ks
        .iter()
        .zip(inner_dims.iter().zip(&outer_dims))
        .find(|(_, (a, b))| a > b)
        .map(|(k, _)| *k);
    Ok(LevelReport {
        level,
        inner_dims,
        outer_dims,
    })
}

impl FromStr for QuizzySpec {
    type Err = Error;

    /// Group names: `S_N`, `SNplus`, `O_N`, `ONplus`, `H_N`, `HNplus`, `B_N`,
    /// `BNplus`, `ONstar`, `HNstar`, optionally prefixed by `bar` for the
    /// twisted version. `N` is filled in as 1 and must be set by the caller.
    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric() || *c == '+' || *c == '*')
            .collect::<String>()
            .to_ascii_lowercase();
        let (twisted, rest) = match key.strip_prefix("bar") {
            Some(r) => (true, r.to_string()),
            None => (false, key),
        };
        let rest = rest.replace("plus", "+").replace("star", "*");
        let cat = match rest.as_str() {
            "sn" => CategoryId::P,
            "sn+" => CategoryId::NC,
            "on" => CategoryId::P2,
            "on+" => CategoryId::NC2,
            "hn" => CategoryId::Peven,
            "hn+" => CategoryId::NCeven,
            "bn" => CategoryId::P12,
            "bn+" => CategoryId::NC12,
            "on*" => CategoryId::P2star,
            "hn*" => CategoryId::Pevenstar,
            _ => return Err(Error::Invalid(format!("unknown group {s:?}"))),
        };
        QuizzySpec::new(cat, twisted, 1)
    }
}
