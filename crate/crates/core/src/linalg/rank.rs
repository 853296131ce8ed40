use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ExactScalar, SparseTensorVector};
use crate::{par, Error, Result};

fn check_family(vectors: &[&SparseTensorVector]) -> Result<()> {
    if let Some(first) = vectors.first() {
        for v in vectors {
            if v.n() != first.n() || v.m() != first.m() {
                return Err(Error::Invalid(format!(
                    "family mixes shapes (N={}, m={}) and (N={}, m={})",
                    first.n(),
                    first.m(),
                    v.n(),
                    v.m()
                )));
            }
        }
    }
    Ok(())
}

/// Integer coefficient type for fraction-free elimination. `i128` is tried
/// first; any overflow restarts the computation over `BigInt`.
trait Coef: Clone + Send + Sync + Sized {
    fn from_big(v: &BigInt) -> Option<Self>;
    fn is_zero(&self) -> bool;
    /// `a*x - b*y`, `None` on overflow.
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_unit(&self) -> bool;
}

impl Coef for i128 {
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
}

impl Coef for BigInt {
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

type Row<C> = Vec<(u64, C)>;

/// Clears denominators: returns the vector scaled to a primitive integer row.
fn integer_row(v: &SparseTensorVector) -> Row<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    v.iter()
        .map(|(k, c)| (k, c.numer() * (&lcm / c.denom())))
        .collect()
}

fn primitive<C: Coef>(row: &mut Row<C>) {
    let mut g: Option<C> = None;
    for (_, c) in row.iter() {
        let next = match &g {
            None => c.gcd(c),
            Some(g) => g.gcd(c),
        };
        if next.is_unit() {
            return;
        }
        g = Some(next);
    }
    if let Some(g) = g {
        for (_, c) in row.iter_mut() {
            *c = c.div_exact(&g);
        }
    }
}

/// `a*row - b*pivot` with `a = p0/g`, `b = r0/g`, merged by column.
fn eliminate<C: Coef>(row: &Row<C>, pivot: &Row<C>) -> Option<Row<C>> {
    let (r0, p0) = (&row[0].1, &pivot[0].1);
    let g = r0.gcd(p0);
    let a = p0.div_exact(&g);
    let b = r0.div_exact(&g);
    let zero = C::from_big(&BigInt::zero())?;
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map(|e| e.0).unwrap_or(u64::MAX);
        let cj = pivot.get(j).map(|e| e.0).unwrap_or(u64::MAX);
        let (col, val) = if ci < cj {
            i += 1;
            (ci, C::mul_sub(&a, &row[i - 1].1, &b, &zero)?)
        } else if cj < ci {
            j += 1;
            (cj, C::mul_sub(&a, &zero, &b, &pivot[j - 1].1)?)
        } else {
            i += 1;
            j += 1;
            (ci, C::mul_sub(&a, &row[i - 1].1, &b, &pivot[j - 1].1)?)
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    primitive(&mut out);
    Some(out)
}

/// Lazy semi-echelon form: each accepted row has a distinct leading column,
/// so the number of accepted rows is the rank. `None` on coefficient overflow.
fn semi_echelon_rank<C: Coef>(rows: &[Row<BigInt>]) -> Option<usize> {
    let mut pivots: HashMap<u64, Row<C>> = HashMap::new();
    for big in rows {
        let mut row: Row<C> = big
            .iter()
            .map(|(k, c)| C::from_big(c).map(|c| (*k, c)))
            .collect::<Option<_>>()?;
        primitive(&mut row);
        while let Some(&(lead, _)) = row.first() {
            match pivots.get(&lead) {
                Some(p) => row = eliminate(&row, p)?,
                None => {
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    Some(pivots.len())
}

/// Exact rank over `Q` of a family of tensor vectors sharing `N` and `m`.
pub fn rank(vectors: &[SparseTensorVector]) -> Result<usize> {
    let refs: Vec<&SparseTensorVector> = vectors.iter().collect();
    rank_refs(&refs)
}

pub(crate) fn rank_refs(vectors: &[&SparseTensorVector]) -> Result<usize> {
    check_family(vectors)?;
    let mut rows: Vec<Row<BigInt>> = par::map(vectors, |v| integer_row(v));
    rows.retain(|r| !r.is_empty());
    // Sparse rows first keeps fill-in low.
    rows.sort_by_key(|r| r.len());
    if let Some(r) = semi_echelon_rank::<i128>(&rows) {
        return Ok(r);
    }
    Ok(semi_echelon_rank::<BigInt>(&rows).expect("BigInt never overflows"))
}

/// `dim(span A ∩ span B) = rank A + rank B - rank(A ∪ B)`.
pub fn span_intersection_dim(a: &[SparseTensorVector], b: &[SparseTensorVector]) -> Result<usize> {
    let ra = rank(a)?;
    let rb = rank(b)?;
    let union: Vec<&SparseTensorVector> = a.iter().chain(b.iter()).collect();
    let rab = rank_refs(&union)?;
    Ok(ra + rb - rab)
}

type RatRow = Vec<(u64, ExactScalar)>;

fn sub_scaled(row: &RatRow, other: &RatRow, f: &ExactScalar) -> RatRow {
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < other.len() {
        let ci = row.get(i).map(|e| e.0).unwrap_or(u64::MAX);
        let cj = other.get(j).map(|e| e.0).unwrap_or(u64::MAX);
        let (col, val) = if ci < cj {
            i += 1;
            (ci, row[i - 1].1.clone())
        } else if cj < ci {
            j += 1;
            (cj, -(&other[j - 1].1 * f))
        } else {
            i += 1;
            j += 1;
            (ci, &row[i - 1].1 - &other[j - 1].1 * f)
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    out
}

/// Basis of the linear relations `Σ c_i v_i = 0`. Each relation is scaled so
/// that its first nonzero coefficient is 1.
pub fn nullspace_basis(vectors: &[SparseTensorVector]) -> Result<Vec<Vec<ExactScalar>>> {
    let refs: Vec<&SparseTensorVector> = vectors.iter().collect();
    check_family(&refs)?;
    let len = vectors.len();
    let mut pivots: HashMap<u64, (RatRow, RatRow)> = HashMap::new();
    let mut relations = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        let mut row: RatRow = v.iter().map(|(k, c)| (k, c.clone())).collect();
        let mut combo: RatRow = vec![(i as u64, ExactScalar::one())];
        loop {
            let Some((lead, lead_val)) = row.first().cloned() else {
                let mut dense = vec![ExactScalar::zero(); len];
                for (k, c) in combo {
                    dense[k as usize] = c;
                }
                if let Some(first) = dense.iter().find(|c| !c.is_zero()).cloned() {
                    for c in dense.iter_mut() {
                        *c = &*c / &first;
                    }
                }
                relations.push(dense);
                break;
            };
            match pivots.get(&lead) {
                Some((prow, pcombo)) => {
                    let f = &lead_val / &prow[0].1;
                    row = sub_scaled(&row, prow, &f);
                    combo = sub_scaled(&combo, pcombo, &f);
                }
                None => {
                    pivots.insert(lead, (row, combo));
                    break;
                }
            }
        }
    }
    Ok(relations)
}
