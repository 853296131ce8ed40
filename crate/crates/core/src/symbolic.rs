//! Formal noncommutative polynomials in generators `u_ij`, the Fourier pair
//! on `Z_2^N`, and the magic unitary of the hypercube action with its
//! character.
//!
//! No relations are ever applied to the generators: every identity here is an
//! identity of formal sums, or of evaluations at classical points.
//!
//! Points of `Z_2^N` and exponent vectors are bitmasks, bit `x` holding
//! coordinate `x + 1`. A cube vertex with bit 0 is the coordinate `+1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::linalg::{ExactMatrix, ExactScalar};
use crate::{par, Budget, Error, Result};

/// Ordered word in the generators; factors are 1-based `(row, col)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NCMonomial(pub Vec<(u8, u8)>);

impl NCMonomial {
    pub fn unit() -> Self {
        NCMonomial(Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for NCMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for &(i, j) in &self.0 {
            if i < 10 && j < 10 {
                write!(f, "u{i}{j}")?;
            } else {
                write!(f, "u{i},{j}")?;
            }
        }
        Ok(())
    }
}

/// Rational combination of monomials, zero coefficients never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NCPolynomial {
    terms: BTreeMap<NCMonomial, ExactScalar>,
}

impl NCPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(NCMonomial::unit(), ExactScalar::one())
    }

    /// The generator `u_ij`, 1-based.
    pub fn generator(i: u8, j: u8) -> Self {
        Self::monomial(NCMonomial(vec![(i, j)]), ExactScalar::one())
    }

    pub fn monomial(m: NCMonomial, c: ExactScalar) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: NCMonomial, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(ExactScalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> &BTreeMap<NCMonomial, ExactScalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    /// Replaces every coefficient by its absolute value.
    pub fn strip_signs(&self) -> Self {
        NCPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.abs())).collect(),
        }
    }

    /// Substitutes `u_ij = g_ij` and multiplies commutatively.
    pub fn evaluate(&self, g: &ExactMatrix) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for &(i, j) in &m.0 {
                v *= g.get(i as usize - 1, j as usize - 1);
            }
            acc += v;
        }
        acc
    }

    pub fn sum<I: IntoIterator<Item = NCPolynomial>>(items: I) -> Self {
        items.into_iter().fold(Self::zero(), |a, b| a + b)
    }
}

impl Add for NCPolynomial {
    type Output = NCPolynomial;

    fn add(mut self, rhs: NCPolynomial) -> NCPolynomial {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Neg for NCPolynomial {
    type Output = NCPolynomial;

    fn neg(self) -> NCPolynomial {
        NCPolynomial {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Sub for NCPolynomial {
    type Output = NCPolynomial;

    fn sub(self, rhs: NCPolynomial) -> NCPolynomial {
        self + (-rhs)
    }
}

impl Mul for &NCPolynomial {
    type Output = NCPolynomial;

    fn mul(self, rhs: &NCPolynomial) -> NCPolynomial {
        let mut out = NCPolynomial::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let mut word = a.0.clone();
                word.extend_from_slice(&b.0);
                out.add_term(NCMonomial(word), x * y);
            }
        }
        out
    }
}

impl fmt::Display for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Lower degree first reads naturally: 1 + u11 + u22 + u11u22 + ...
        let mut terms: Vec<(&NCMonomial, &ExactScalar)> = self.terms.iter().collect();
        terms.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then(a.0.cmp(b.0)));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if m.0.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for NCPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Element of the group algebra of `Z_2^N`: exponent bitmask to coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAlgElement {
    pub n: usize,
    terms: BTreeMap<u32, ExactScalar>,
}

impl GroupAlgElement {
    pub fn zero(n: usize) -> Self {
        GroupAlgElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// The group element `g^e = g_1^{e_1} ... g_N^{e_N}`.
    pub fn basis(n: usize, e: u32) -> Self {
        let mut x = Self::zero(n);
        x.add_term(e, ExactScalar::one());
        x
    }

    pub fn add_term(&mut self, e: u32, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(ExactScalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> &BTreeMap<u32, ExactScalar> {
        &self.terms
    }

    pub fn coefficient(&self, e: u32) -> ExactScalar {
        self.terms.get(&e).cloned().unwrap_or_else(ExactScalar::zero)
    }
}

impl Mul for &GroupAlgElement {
    type Output = GroupAlgElement;

    /// Exponents add mod 2.
    fn mul(self, rhs: &GroupAlgElement) -> GroupAlgElement {
        let mut out = GroupAlgElement::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a ^ b, x * y);
            }
        }
        out
    }
}

/// Function on `Z_2^N` in the `δ` basis: point bitmask to value.
pub type PointFunction = BTreeMap<u32, ExactScalar>;

fn parity_sign(bits: u32) -> i64 {
    if bits.count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn check_cube_n(n: usize) -> Result<()> {
    if n == 0 || n > 20 {
        return Err(Error::Invalid(format!("cube dimension must be in 1..=20, got {n}")));
    }
    Ok(())
}

/// `α(δ_i) = 2^{-N} Σ_j (-1)^{<i,j>} g^j`.
pub fn fourier_alpha(point: u32, n: usize) -> Result<GroupAlgElement> {
    check_cube_n(n)?;
    let scale = ExactScalar::new(BigInt::one(), BigInt::one() << n);
    let mut out = GroupAlgElement::zero(n);
    for j in 0..1u32 << n {
        out.add_term(j, &scale * ExactScalar::from_integer(parity_sign(point & j).into()));
    }
    Ok(out)
}

/// `β(g^i) = Σ_j (-1)^{<i,j>} δ_j`.
pub fn fourier_beta(exponent: u32, n: usize) -> Result<PointFunction> {
    check_cube_n(n)?;
    Ok((0..1u32 << n)
        .map(|j| (j, ExactScalar::from_integer(parity_sign(exponent & j).into())))
        .collect())
}

/// `α` extended linearly to functions.
pub fn alpha_linear(f: &PointFunction, n: usize) -> Result<GroupAlgElement> {
    let mut out = GroupAlgElement::zero(n);
    for (&i, c) in f {
        for (&e, v) in fourier_alpha(i, n)?.terms() {
            out.add_term(e, c * v);
        }
    }
    Ok(out)
}

/// `β` extended linearly to the group algebra; zero values dropped.
pub fn beta_linear(x: &GroupAlgElement) -> Result<PointFunction> {
    let mut out = PointFunction::new();
    for (&e, c) in x.terms() {
        for (j, v) in fourier_beta(e, x.n)? {
            *out.entry(j).or_insert_with(ExactScalar::zero) += c * v;
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

fn check_symbolic_n(n: usize, budget: &Budget) -> Result<()> {
    check_cube_n(n)?;
    if n > budget.max_symbolic_n {
        return Err(Error::BudgetExceeded {
            what: "symbolic N",
            requested: n as u128,
            limit: budget.max_symbolic_n as u128,
        });
    }
    Ok(())
}

fn bit(v: u32, x: usize) -> u32 {
    (v >> x) & 1
}

/// Iterates over all `b ∈ {0..N-1}^len` in odometer order.
fn for_each_tuple(n: usize, len: usize, mut f: impl FnMut(&[usize])) {
    let mut b = vec![0usize; len];
    loop {
        f(&b);
        let mut i = 0;
        loop {
            if i == len {
                return;
            }
            b[i] += 1;
            if b[i] < n {
                break;
            }
            b[i] = 0;
            i += 1;
        }
    }
}

/// Entry `w_{i,k}` of the magic unitary of `Ō_N ⊂ S_{2^N}^+`.
///
/// The defining sum runs over all `b ∈ {1..N}^N` with a weight
/// `(1/N)^{#(0 ∈ j)}`. A coordinate `x` with `j_x = 0` contributes the unit
/// factor and no sign, so its `N` choices of `b_x` give identical terms that
/// cancel the `1/N`. Hence only `b_x` for `x ∈ supp j` is summed here.
pub fn magic_unitary_entry(n: usize, i: u32, k: u32) -> Result<NCPolynomial> {
    check_cube_n(n)?;
    let scale = ExactScalar::new(BigInt::one(), BigInt::one() << n);
    let mut out = NCPolynomial::zero();
    for j in 0..1u32 << n {
        let support: Vec<usize> = (0..n).filter(|&x| bit(j, x) == 1).collect();
        for_each_tuple(n, support.len(), |b| {
            let mut parity = 0;
            let mut word = Vec::with_capacity(support.len());
            for (t, &x) in support.iter().enumerate() {
                parity ^= bit(i, x) ^ bit(k, b[t]);
                word.push((x as u8 + 1, b[t] as u8 + 1));
            }
            let c = if parity == 0 { scale.clone() } else { -scale.clone() };
            out.add_term(NCMonomial(word), c);
        });
    }
    Ok(out)
}

/// [`magic_unitary_entry`] summed literally over all `b ∈ {1..N}^N`, with
/// the `(1/N)^{#(0 ∈ j)}` weight. Used to validate the cancellation.
pub fn magic_unitary_entry_literal(n: usize, i: u32, k: u32) -> Result<NCPolynomial> {
    check_cube_n(n)?;
    let mut out = NCPolynomial::zero();
    for j in 0..1u32 << n {
        let zeros = n - j.count_ones() as usize;
        let weight = ExactScalar::new(
            BigInt::one(),
            (BigInt::one() << n) * BigInt::from(n).pow(zeros as u32),
        );
        for_each_tuple(n, n, |b| {
            let mut parity = 0;
            let mut word = Vec::new();
            for x in 0..n {
                if bit(j, x) == 1 {
                    parity ^= bit(i, x) ^ bit(k, b[x]);
                    word.push((x as u8 + 1, b[x] as u8 + 1));
                }
            }
            let c = if parity == 0 { weight.clone() } else { -weight.clone() };
            out.add_term(NCMonomial(word), c);
        });
    }
    Ok(out)
}

/// The full `2^N × 2^N` magic unitary.
pub fn magic_unitary(n: usize, budget: &Budget) -> Result<Vec<Vec<NCPolynomial>>> {
    check_symbolic_n(n, budget)?;
    let size = 1u32 << n;
    let rows: Vec<u32> = (0..size).collect();
    par::try_map(&rows, |&i| (0..size).map(|k| magic_unitary_entry(n, i, k)).collect())
}

/// Evaluates a polynomial matrix at a classical point.
pub fn evaluate_matrix(w: &[Vec<NCPolynomial>], g: &ExactMatrix) -> ExactMatrix {
    let r = w.len();
    let c = w.first().map_or(0, Vec::len);
    ExactMatrix::from_fn(r, c, |i, j| w[i][j].evaluate(g))
}

/// Which of the equivalent character expressions to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CharacterForm {
    /// Literal sum over `j ∈ {0,1}^N` and all `b ∈ {1..N}^N` with the
    /// Kronecker conditions `j_p = Σ_{b_x = p} j_x (mod 2)`.
    Raw,
    /// Sum over sets `A` and functions `b` with `b < A`, weighted `N^{r-N}`.
    Grouped,
    /// Sum over sets `A` and permutations in `S_N^A`.
    Final,
    /// `Σ_i w_{i,i}` from the magic unitary itself.
    Trace,
}

impl std::str::FromStr for CharacterForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "raw" => CharacterForm::Raw,
            "grouped" => CharacterForm::Grouped,
            "final" => CharacterForm::Final,
            "trace" => CharacterForm::Trace,
            _ => return Err(Error::Invalid(format!("unknown character form {s:?}"))),
        })
    }
}

fn subsets_of_size(n: usize, r: usize) -> Vec<u32> {
    (0..1u32 << n).filter(|a| a.count_ones() as usize == r).collect()
}

/// Permutations of `0..n` fixing every point outside `a`, with their signs.
fn permutations_on(n: usize, a: u32) -> Vec<(Vec<usize>, i64)> {
    let support: Vec<usize> = (0..n).filter(|&x| bit(a, x) == 1).collect();
    let mut out = Vec::new();
    let mut images = support.clone();
    permute(&mut images, 0, &mut |imgs| {
        let mut sigma: Vec<usize> = (0..n).collect();
        for (t, &x) in support.iter().enumerate() {
            sigma[x] = imgs[t];
        }
        out.push((sigma.clone(), permutation_sign(&sigma)));
    });
    out
}

fn permute(items: &mut Vec<usize>, start: usize, f: &mut impl FnMut(&[usize])) {
    if start == items.len() {
        f(items);
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permute(items, start + 1, f);
        items.swap(start, i);
    }
}

pub(crate) fn permutation_sign(sigma: &[usize]) -> i64 {
    let mut seen = vec![false; sigma.len()];
    let mut sign = 1;
    for s in 0..sigma.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = sigma[x];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

fn ordered_product(a: u32, n: usize, image: impl Fn(usize) -> usize) -> NCMonomial {
    NCMonomial(
        (0..n)
            .filter(|&x| bit(a, x) == 1)
            .map(|x| (x as u8 + 1, image(x) as u8 + 1))
            .collect(),
    )
}

fn raw_part(n: usize, r: usize) -> NCPolynomial {
    let mut out = NCPolynomial::zero();
    for j in subsets_of_size(n, r) {
        let zeros = n - r;
        let weight = ExactScalar::new(BigInt::one(), BigInt::from(n).pow(zeros as u32));
        for_each_tuple(n, n, |b| {
            // j_p must equal the parity of Σ_{b_x = p} j_x for every p.
            let mut image_parity = 0u32;
            for x in 0..n {
                if bit(j, x) == 1 {
                    image_parity ^= 1 << b[x];
                }
            }
            if image_parity == j {
                out.add_term(ordered_product(j, n, |x| b[x]), weight.clone());
            }
        });
    }
    out
}

fn grouped_part(n: usize, r: usize) -> NCPolynomial {
    let weight = ExactScalar::new(BigInt::one(), BigInt::from(n).pow((n - r) as u32));
    let mut out = NCPolynomial::zero();
    for a in subsets_of_size(n, r) {
        for_each_tuple(n, n, |b| {
            // b < A: |b^{-1}(p) ∩ A| ≡ [p ∈ A] (mod 2) for every p.
            let ok = (0..n).all(|p| {
                let hits = (0..n).filter(|&x| bit(a, x) == 1 && b[x] == p).count() as u32;
                hits % 2 == bit(a, p)
            });
            if ok {
                out.add_term(ordered_product(a, n, |x| b[x]), weight.clone());
            }
        });
    }
    out
}

fn final_part(n: usize, r: usize, signed: bool) -> NCPolynomial {
    let mut out = NCPolynomial::zero();
    for a in subsets_of_size(n, r) {
        for (sigma, sign) in permutations_on(n, a) {
            let c = if signed { sign } else { 1 };
            out.add_term(
                ordered_product(a, n, |x| sigma[x]),
                ExactScalar::from_integer(c.into()),
            );
        }
    }
    out
}

/// The magic character split as `χ = χ_0 + ... + χ_N`, in the requested form.
/// For [`CharacterForm::Trace`] the whole character is returned as a single part.
pub fn magic_character(n: usize, form: CharacterForm, budget: &Budget) -> Result<Vec<NCPolynomial>> {
    check_symbolic_n(n, budget)?;
    let ranks: Vec<usize> = (0..=n).collect();
    Ok(match form {
        CharacterForm::Raw => par::map(&ranks, |&r| raw_part(n, r)),
        CharacterForm::Grouped => par::map(&ranks, |&r| grouped_part(n, r)),
        CharacterForm::Final => par::map(&ranks, |&r| final_part(n, r, false)),
        CharacterForm::Trace => {
            let diag: Vec<u32> = (0..1u32 << n).collect();
            let entries = par::try_map(&diag, |&i| magic_unitary_entry(n, i, i))?;
            vec![NCPolynomial::sum(entries)]
        }
    })
}

/// Signed character of the `r`-th antisymmetric representation of `O_N`:
/// `Σ_{|A|=r} Σ_{σ ∈ S_N^A} ε(σ) Π_{a ∈ A} u_{a σ(a)}`.
pub fn antisym_character(n: usize, r: usize) -> Result<NCPolynomial> {
    if r > n {
        return Err(Error::Invalid(format!("rank {r} exceeds N = {n}")));
    }
    check_cube_n(n.max(1))?;
    Ok(final_part(n, r, true))
}
