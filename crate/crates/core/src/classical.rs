//! Brute-force classical groups and their actions: the hyperoctahedral group
//! on segment endpoints and on hypercube vertices, the symmetric group on
//! points. Used as ground truth for the quantum computations.
//!
//! Point conventions (0-based):
//! * segment endpoints: `i` is `(i, +)`, `N + i` is `(i, -)`;
//! * cube vertices: bitmasks, bit `x` set when coordinate `x + 1` is `-1`.
//!
//! A permutation `σ` of a finite set becomes the matrix with `M[σ(k)][k] = 1`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::linalg::{ExactMatrix, ExactScalar};
use crate::partition::{kernel, UnionFind};
use crate::{par, Budget, Error, Result};

/// An element of `H_N`: coordinate `i` goes to `perm[i]` with sign `signs[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let n = perm.len();
        if signs.len() != n {
            return Err(Error::Invalid("perm and signs differ in length".into()));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::Invalid(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Invalid("signs must be +1 or -1".into()));
        }
        Ok(SignedPermutation { perm, signs })
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            perm: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let perm = other.perm.iter().map(|&j| self.perm[j]).collect();
        let signs = (0..other.n())
            .map(|i| other.signs[i] * self.signs[other.perm[i]])
            .collect();
        SignedPermutation { perm, signs }
    }

    pub fn inverse(&self) -> Self {
        let n = self.n();
        let mut perm = vec![0; n];
        let mut signs = vec![1; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        SignedPermutation { perm, signs }
    }

    /// The signed permutation matrix: `g[perm(i)][i] = signs[i]`.
    pub fn matrix(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.n(), self.n());
        for i in 0..self.n() {
            m.set(self.perm[i], i, ExactScalar::from_integer(self.signs[i].into()));
        }
        m
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(factorial(n) as usize);
    let mut items: Vec<usize> = (0..n).collect();
    fn rec(items: &mut Vec<usize>, start: usize, out: &mut Vec<Vec<usize>>) {
        if start == items.len() {
            out.push(items.clone());
            return;
        }
        for i in start..items.len() {
            items.swap(start, i);
            rec(items, start + 1, out);
            items.swap(start, i);
        }
    }
    rec(&mut items, 0, &mut out);
    out.sort();
    out
}

/// All `2^N N!` elements of `H_N`, for `N ≤ 6`.
pub fn enumerate_hyperoctahedral(n: usize, budget: &Budget) -> Result<Vec<SignedPermutation>> {
    let order = (1u128 << n) * factorial(n);
    if n > 6 {
        return Err(Error::BudgetExceeded {
            what: "hyperoctahedral group size (N <= 6)",
            requested: order,
            limit: (1u128 << 6) * factorial(6),
        });
    }
    budget.check_group_order(order)?;
    let mut out = Vec::with_capacity(order as usize);
    for perm in permutations(n) {
        for mask in 0..1u32 << n {
            let signs = (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            out.push(SignedPermutation {
                perm: perm.clone(),
                signs,
            });
        }
    }
    Ok(out)
}

/// All `N!` elements of `S_N`.
pub fn enumerate_symmetric(n: usize, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    budget.check_group_order(factorial(n))?;
    Ok(permutations(n))
}

/// `H_N` on the `2N` endpoints: `(i, ±) ↦ (perm(i), ±·sign_i)`.
pub fn action_segments(g: &SignedPermutation) -> Vec<usize> {
    let n = g.n();
    let mut out = vec![0; 2 * n];
    for i in 0..n {
        let flip = g.signs[i] < 0;
        out[i] = g.perm[i] + if flip { n } else { 0 };
        out[n + i] = g.perm[i] + if flip { 0 } else { n };
    }
    out
}

/// `H_N` on the `2^N` cube vertices: `y_{perm(i)} = sign_i · x_i`.
pub fn action_cube(g: &SignedPermutation) -> Vec<usize> {
    let n = g.n();
    (0..1usize << n)
        .map(|x| {
            let mut y = 0;
            for i in 0..n {
                let b = (x >> i & 1) ^ usize::from(g.signs[i] < 0);
                y |= b << g.perm[i];
            }
            y
        })
        .collect()
}

/// Matrix of a permutation of a finite set, `M[σ(k)][k] = 1`.
pub fn permutation_matrix(sigma: &[usize]) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(sigma.len(), sigma.len());
    for (k, &s) in sigma.iter().enumerate() {
        m.set(s, k, ExactScalar::one());
    }
    m
}

/// The `2N × 2N` block matrix `[[a, b], [b, a]]` with
/// `a = (g^2 + g)/2`, `b = (g^2 - g)/2` entrywise.
pub fn sudoku_matrix(g: &SignedPermutation) -> ExactMatrix {
    let n = g.n();
    let gm = g.matrix();
    let half = ExactScalar::new(BigInt::one(), BigInt::from(2));
    let mut out = ExactMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let x = gm.get(i, j);
            let sq = x * x;
            let a = (&sq + x) * &half;
            let b = (&sq - x) * &half;
            out.set(i, j, a.clone());
            out.set(n + i, n + j, a);
            out.set(i, n + j, b.clone());
            out.set(n + i, j, b);
        }
    }
    out
}

/// A finite group acting on `0..size`, with a generating subset used for
/// orbit closures.
#[derive(Debug, Clone)]
pub struct FiniteAction {
    pub name: String,
    pub size: usize,
    pub elements: Vec<Vec<usize>>,
    pub generators: Vec<Vec<usize>>,
}

fn h_generators(n: usize) -> Vec<SignedPermutation> {
    let mut gens = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, i + 1);
        gens.push(SignedPermutation {
            perm,
            signs: vec![1; n],
        });
    }
    if n > 0 {
        let mut signs = vec![1; n];
        signs[0] = -1;
        gens.push(SignedPermutation {
            perm: (0..n).collect(),
            signs,
        });
    }
    gens
}

impl FiniteAction {
    /// `H_N` on the `2N` segment endpoints.
    pub fn hyperoctahedral_segments(n: usize, budget: &Budget) -> Result<Self> {
        let group = enumerate_hyperoctahedral(n, budget)?;
        Ok(FiniteAction {
            name: format!("H_{n} on {} segment endpoints", 2 * n),
            size: 2 * n,
            elements: par::map(&group, action_segments),
            generators: h_generators(n).iter().map(action_segments).collect(),
        })
    }

    /// `H_N` on the `2^N` vertices of the cube.
    pub fn hyperoctahedral_cube(n: usize, budget: &Budget) -> Result<Self> {
        let group = enumerate_hyperoctahedral(n, budget)?;
        Ok(FiniteAction {
            name: format!("H_{n} on {} cube vertices", 1usize << n),
            size: 1 << n,
            elements: par::map(&group, action_cube),
            generators: h_generators(n).iter().map(action_cube).collect(),
        })
    }

    /// `S_N` on `N` points.
    pub fn symmetric(n: usize, budget: &Budget) -> Result<Self> {
        let elements = enumerate_symmetric(n, budget)?;
        let generators = (0..n.saturating_sub(1))
            .map(|i| {
                let mut p: Vec<usize> = (0..n).collect();
                p.swap(i, i + 1);
                p
            })
            .collect();
        Ok(FiniteAction {
            name: format!("S_{n} on {n} points"),
            size: n,
            elements,
            generators,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Number of orbits of the group on `X^k`, by Burnside:
/// `(1/|G|) Σ_g fix(g)^k`. Fixed points are counted on `X` directly.
pub fn burnside_orbital_count(action: &FiniteAction, k: usize) -> u128 {
    let terms = par::map(&action.elements, |g| {
        let fixed = g.iter().enumerate().filter(|(x, y)| x == *y).count();
        BigInt::from(fixed).pow(k as u32)
    });
    let total: BigInt = terms.into_iter().sum();
    let order = BigInt::from(action.order());
    assert!((&total % &order).is_zero(), "Burnside sum not divisible by |G|");
    (total / order).to_u128().expect("orbital count fits in u128")
}

fn decode_tuple(size: usize, k: usize, mut code: usize) -> Vec<usize> {
    let mut t = Vec::with_capacity(k);
    for _ in 0..k {
        t.push(code % size);
        code /= size;
    }
    t
}

fn encode_tuple(size: usize, t: &[usize]) -> usize {
    t.iter().rev().fold(0, |acc, &x| acc * size + x)
}

/// The `k`-orbitals as explicit classes of tuples, found by closing under
/// the generators. Classes are sorted; each class lists its tuples in order.
pub fn enumerate_korbitals(action: &FiniteAction, k: usize, budget: &Budget) -> Result<Vec<Vec<Vec<usize>>>> {
    let total = budget.check_index_space(action.size, k)? as usize;
    let mut uf = UnionFind::new(total);
    for g in &action.generators {
        for code in 0..total {
            let t = decode_tuple(action.size, k, code);
            let image: Vec<usize> = t.iter().map(|&x| g[x]).collect();
            uf.union(code, encode_tuple(action.size, &image));
        }
    }
    let mut classes: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    for code in 0..total {
        let root = uf.find(code);
        classes
            .entry(root)
            .or_default()
            .push(decode_tuple(action.size, k, code));
    }
    let mut out: Vec<Vec<Vec<usize>>> = classes.into_values().collect();
    for c in out.iter_mut() {
        c.sort();
    }
    out.sort();
    Ok(out)
}

/// Groups `k`-orbitals into configurations: two orbitals share a
/// configuration when one is obtained from the other by reordering tuple
/// positions. Returns the number of orbitals in each configuration, in
/// order of the configuration's first orbital.
pub fn configuration_multiplicities(classes: &[Vec<Vec<usize>>], k: usize) -> Vec<usize> {
    let mut class_of: HashMap<&[usize], usize> = HashMap::new();
    for (c, class) in classes.iter().enumerate() {
        for t in class {
            class_of.insert(t.as_slice(), c);
        }
    }
    let mut uf = UnionFind::new(classes.len());
    for (c, class) in classes.iter().enumerate() {
        let rep = &class[0];
        for sigma in permutations(k) {
            let moved: Vec<usize> = sigma.iter().map(|&p| rep[p]).collect();
            uf.union(c, class_of[moved.as_slice()]);
        }
    }
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for c in 0..classes.len() {
        *sizes.entry(uf.find(c)).or_default() += 1;
    }
    sizes.into_values().collect()
}

/// `∫ u_{i_1 j_1} ... u_{i_k j_k}` over the finite group, with
/// `u_ij = χ{σ | σ(j) = i}`: the fraction of elements mapping `j` to `i`.
pub fn averaged_product(action: &FiniteAction, i: &[usize], j: &[usize]) -> ExactScalar {
    let hits = action
        .elements
        .iter()
        .filter(|g| i.iter().zip(j).all(|(&a, &b)| g[b] == a))
        .count();
    ExactScalar::new(BigInt::from(hits), BigInt::from(action.order()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransitivityReport {
    pub k: usize,
    /// `∫ χ^k`, by Burnside.
    pub moment: u128,
    /// Number of set partitions of `k` points with at most `|X|` blocks: the
    /// moment of a `k`-transitive action.
    pub transitive_moment: u128,
    /// Every averaged product equals `(|X| - |ker i|)!/|X|!` when
    /// `ker i = ker j` and vanishes otherwise.
    pub integrals_match: bool,
    /// The averaged product on `i = j = (1, .., k)`, as `num/den`.
    pub distinct_integral: String,
}

/// Checks `k`-transitivity three ways: the moment, the averaged products on
/// all index pairs, and their agreement.
pub fn transitivity_check(action: &FiniteAction, k: usize, budget: &Budget) -> Result<TransitivityReport> {
    let n = action.size;
    let total = budget.check_index_space(n, k)? as usize;
    let tuples: Vec<Vec<usize>> = (0..total).map(|c| decode_tuple(n, k, c)).collect();
    let expected = |blocks: usize| -> ExactScalar {
        if blocks > n {
            return ExactScalar::zero();
        }
        ExactScalar::new(
            BigInt::from(factorial(n - blocks)),
            BigInt::from(factorial(n)),
        )
    };
    let ok = par::map(&tuples, |i| {
        let ki = kernel(i);
        tuples.iter().all(|j| {
            let want = if kernel(j) == ki {
                expected(ki.num_blocks())
            } else {
                ExactScalar::zero()
            };
            averaged_product(action, i, j) == want
        })
    });
    let transitive_moment = crate::partition::enumerate(crate::partition::CategoryId::P, k)
        .iter()
        .filter(|p| p.num_blocks() <= n)
        .count() as u128;
    let distinct: Vec<usize> = (0..k.min(n)).collect();
    let di = averaged_product(action, &distinct, &distinct);
    Ok(TransitivityReport {
        k,
        moment: burnside_orbital_count(action, k),
        transitive_moment,
        integrals_match: ok.into_iter().all(|b| b),
        distinct_integral: format!("{}/{}", di.numer(), di.denom()),
    })
}
