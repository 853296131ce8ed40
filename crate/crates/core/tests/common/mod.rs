//! Independent oracles shared by the integration tests and the acceptance
//! suite. Nothing here calls into the algorithms it is used to check.

#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Q = BigRational;

pub fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

// ---- partitions ----

/// Every set partition of `0..m` as block lists, by inserting each point
/// into an existing block or a new one.
pub fn all_set_partitions(m: usize) -> Vec<Vec<Vec<usize>>> {
    let mut acc: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for p in 0..m {
        let mut next = Vec::new();
        for part in &acc {
            for b in 0..part.len() {
                let mut c = part.clone();
                c[b].push(p);
                next.push(c);
            }
            let mut c = part.clone();
            c.push(vec![p]);
            next.push(c);
        }
        acc = next;
    }
    acc
}

pub fn is_noncrossing(blocks: &[Vec<usize>]) -> bool {
    let block_of: HashMap<usize, usize> = blocks
        .iter()
        .enumerate()
        .flat_map(|(i, b)| b.iter().map(move |&p| (p, i)))
        .collect();
    let m = block_of.len();
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                for d in c + 1..m {
                    if block_of[&a] == block_of[&c]
                        && block_of[&b] == block_of[&d]
                        && block_of[&a] != block_of[&b]
                    {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn bell(m: usize) -> u64 {
    // B_{n+1} = Σ C(n,k) B_k
    let mut b = vec![1u64];
    for n in 0..m {
        let mut c = 1u64;
        let mut s = 0u64;
        for k in 0..=n {
            s += c * b[k];
            c = c * (n - k) as u64 / (k + 1) as u64;
        }
        b.push(s);
    }
    b[m]
}

pub fn catalan(m: usize) -> u64 {
    let mut c = vec![1u64];
    for n in 0..m {
        c.push((0..=n).map(|i| c[i] * c[n - i]).sum());
    }
    c[m]
}

pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut c = p.clone();
            c.insert(pos, n - 1);
            out.push(c);
        }
    }
    out
}

pub fn perm_sign(p: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

// ---- dense rational matrices ----

pub type Mat = Vec<Vec<Q>>;

pub fn random_int_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> Vec<Vec<i64>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect()
}

pub fn to_q(m: &[Vec<i64>]) -> Mat {
    m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

/// Textbook Gaussian elimination over the rationals.
pub fn naive_rank(m: &Mat) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                for j in c..cols {
                    let v = &a[r][j] * &f;
                    a[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Leibniz expansion.
pub fn leibniz_det(m: &Mat) -> Q {
    let n = m.len();
    all_permutations(n)
        .iter()
        .map(|p| {
            let prod = (0..n).fold(Q::one(), |acc, i| acc * &m[i][p[i]]);
            prod * q(perm_sign(p))
        })
        .fold(Q::zero(), |a, b| a + b)
}

pub fn permanent(m: &Mat) -> Q {
    let n = m.len();
    all_permutations(n)
        .iter()
        .map(|p| (0..n).fold(Q::one(), |acc, i| acc * &m[i][p[i]]))
        .fold(Q::zero(), |a, b| a + b)
}

pub fn principal(m: &Mat, set: &[usize]) -> Mat {
    set.iter().map(|&i| set.iter().map(|&j| m[i][j].clone()).collect()).collect()
}

pub fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|s| s.count_ones() as usize == r)
        .map(|s| (0..n).filter(|&i| s >> i & 1 == 1).collect())
        .collect()
}

/// Sum of principal `r`-minors.
pub fn principal_minor_sum(m: &Mat, r: usize) -> Q {
    subsets(m.len(), r)
        .iter()
        .map(|s| leibniz_det(&principal(m, s)))
        .fold(Q::zero(), |a, b| a + b)
}

/// Sum of principal `r`-permanents.
pub fn principal_permanent_sum(m: &Mat, r: usize) -> Q {
    subsets(m.len(), r)
        .iter()
        .map(|s| permanent(&principal(m, s)))
        .fold(Q::zero(), |a, b| a + b)
}

/// `tr(P_r g^{⊗r})` with `P_r = (1/r!) Σ_σ sgn(σ) σ` the antisymmetrizer on
/// `(C^N)^{⊗r}`, summed over explicit tensor indices.
pub fn exterior_trace(g: &Mat, r: usize) -> Q {
    let n = g.len();
    let perms = all_permutations(r);
    let total = n.pow(r as u32);
    let mut acc = Q::zero();
    for code in 0..total {
        let mut idx = Vec::with_capacity(r);
        let mut c = code;
        for _ in 0..r {
            idx.push(c % n);
            c /= n;
        }
        for s in &perms {
            // <e_idx, σ g^{⊗r} e_idx> = Π_t g[idx[s(t)]][idx[t]]
            let mut prod = q(perm_sign(s));
            for t in 0..r {
                prod *= &g[idx[s[t]]][idx[t]];
                if prod.is_zero() {
                    break;
                }
            }
            acc += prod;
        }
    }
    let fact: i64 = (1..=r as i64).product();
    acc / q(fact)
}

pub fn det_one_plus(g: &Mat) -> Q {
    let n = g.len();
    let m: Mat = (0..n)
        .map(|i| (0..n).map(|j| &g[i][j] + if i == j { Q::one() } else { Q::zero() }).collect())
        .collect();
    leibniz_det(&m)
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let k = b.len();
    let c = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..c)
                .map(|j| (0..k).fold(Q::zero(), |acc, t| acc + &a[i][t] * &b[t][j]))
                .collect()
        })
        .collect()
}

// ---- group duals ----

/// Loops in `Π Z_{N_r}` by the character sum
/// `(1/|G|) Σ_χ (Σ_{s ∈ S} χ(s))^k`, with `Σ_s χ(s) = Σ_r N_r [χ_r = 1]`.
pub fn direct_loops_by_characters(orders: &[usize], k: u32) -> u128 {
    let order: usize = orders.iter().product();
    let mut total: u128 = 0;
    for code in 0..order {
        let mut c = code;
        let mut s = 0u128;
        for &o in orders {
            if c % o == 0 {
                s += o as u128;
            }
            c /= o;
        }
        total += s.pow(k);
    }
    assert_eq!(total % order as u128, 0);
    total / order as u128
}

/// Loops in the free product by brute force: every sequence over the
/// multiset `S`, reduced with a syllable stack.
pub fn free_loops_brute(orders: &[usize], k: u32) -> u128 {
    let s: Vec<(usize, usize)> = orders
        .iter()
        .enumerate()
        .flat_map(|(r, &o)| (0..o).map(move |e| (r, e)))
        .collect();
    let total = s.len().pow(k);
    let mut count = 0;
    for code in 0..total {
        let mut c = code;
        let mut stack: Vec<(usize, usize)> = Vec::new();
        for _ in 0..k {
            let (r, e) = s[c % s.len()];
            c /= s.len();
            if e == 0 {
                continue;
            }
            match stack.last_mut() {
                Some(top) if top.0 == r => {
                    top.1 = (top.1 + e) % orders[r];
                    if top.1 == 0 {
                        stack.pop();
                    }
                }
                _ => stack.push((r, e)),
            }
        }
        if stack.is_empty() {
            count += 1;
        }
    }
    count
}

/// Exact rational comparison helper for printing.
pub fn show(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom().abs())
    }
}
