use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use super::ExactScalar;
use crate::partition::{enumerate, join_block_count, CategoryId};
use crate::{Error, Result};

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactScalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![ExactScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ExactScalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ExactScalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Self::from_fn(r, c, |i, j| ExactScalar::from_integer(rows[i][j].into()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &ExactScalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ExactScalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn trace(&self) -> ExactScalar {
        (0..self.rows.min(self.cols)).fold(ExactScalar::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Submatrix on the given row and column index sets.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Row-reduces a copy; returns the reduced rows and pivot columns.
    fn echelon(&self) -> (Vec<Vec<ExactScalar>>, Vec<usize>) {
        let mut a: Vec<Vec<ExactScalar>> = (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            for i in r + 1..self.rows {
                if a[i][c].is_zero() {
                    continue;
                }
                let f = &a[i][c] / &a[r][c];
                for j in c..self.cols {
                    let d = &a[r][j] * &f;
                    a[i][j] -= d;
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    /// Determinant by Bareiss elimination (exact divisions at every step).
    pub fn det(&self) -> Result<ExactScalar> {
        if !self.is_square() {
            return Err(Error::Invalid("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(ExactScalar::one());
        }
        let mut a: Vec<Vec<ExactScalar>> = (0..n)
            .map(|i| self.data[i * n..(i + 1) * n].to_vec())
            .collect();
        let mut sign = ExactScalar::one();
        let mut prev = ExactScalar::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return Ok(ExactScalar::zero());
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn invert(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Invalid("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a: Vec<Vec<ExactScalar>> = (0..n)
            .map(|i| {
                let mut row = self.data[i * n..(i + 1) * n].to_vec();
                row.extend((0..n).map(|j| {
                    if i == j {
                        ExactScalar::one()
                    } else {
                        ExactScalar::zero()
                    }
                }));
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&i| !a[i][c].is_zero()).ok_or(Error::Singular)?;
            a.swap(c, p);
            let inv = ExactScalar::one() / &a[c][c];
            for v in a[c].iter_mut() {
                *v *= &inv;
            }
            let pivot_row = a[c].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == c || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *v -= p * &f;
                    }
                }
            }
        }
        Ok(Self::from_fn(n, n, |i, j| a[i][n + j].clone()))
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;

    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        ExactMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(ExactScalar::zero(), |acc, k| acc + self.get(i, k) * rhs.get(k, j))
        })
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Gram matrix of the category on `m` points: entry `(π, σ)` is
/// `N^{|π ∨ σ|}`, rows and columns in [`enumerate`] order.
pub fn gram_matrix(cat: CategoryId, m: usize, n: usize) -> ExactMatrix {
    let parts = enumerate(cat, m);
    let base = BigInt::from(n);
    ExactMatrix::from_fn(parts.len(), parts.len(), |i, j| {
        let blocks = join_block_count(&[&parts[i], &parts[j]]);
        ExactScalar::from_integer(Pow::pow(&base, blocks as u32))
    })
}

/// Weingarten matrix, the inverse of [`gram_matrix`]. A singular Gram
/// matrix is reported together with the smallest `N` that works.
pub fn weingarten_matrix(cat: CategoryId, m: usize, n: usize) -> Result<ExactMatrix> {
    match gram_matrix(cat, m, n).invert() {
        Ok(w) => Ok(w),
        Err(Error::Singular) => {
            // The partition vectors are independent once N >= m, so the search ends there.
            let min_valid = (n + 1..=m.max(n + 1))
                .find(|&k| !gram_matrix(cat, m, k).det().map_or(true, |d| d.is_zero()))
                .unwrap_or(m.max(n + 1));
            Err(Error::GramSingular {
                category: cat,
                m,
                n,
                min_valid,
            })
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, ratio};

    #[test]
    fn inverse_examples() {
        let id = ExactMatrix::identity(3);
        assert_eq!(id.invert().unwrap(), id);
        let two = ExactMatrix::from_i64(&[vec![2]]);
        assert_eq!(two.invert().unwrap().get(0, 0), &ratio(1, 2));
        let sing = ExactMatrix::from_i64(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(sing.invert(), Err(Error::Singular));
    }

    #[test]
    fn det_and_rank() {
        let a = ExactMatrix::from_i64(&[vec![0, 2, 1], vec![1, 1, 1], vec![3, 0, 5]]);
        // 0*(5-0) - 2*(5-3) + 1*(0-3) = -7
        assert_eq!(a.det().unwrap(), int(-7));
        assert_eq!(a.rank(), 3);
        let b = ExactMatrix::from_i64(&[vec![1, 2], vec![2, 4], vec![0, 0]]);
        assert_eq!(b.rank(), 1);
    }

    #[test]
    fn gram_examples() {
        let g = gram_matrix(CategoryId::P2, 2, 3);
        assert_eq!(g, ExactMatrix::from_i64(&[vec![3]]));
        let g = gram_matrix(CategoryId::P2, 4, 2);
        assert_eq!(g.rank(), 3);
        let g = gram_matrix(CategoryId::P, 4, 3);
        let parts = enumerate(CategoryId::P, 4);
        for (i, p) in parts.iter().enumerate() {
            assert_eq!(g.get(i, i), &int(3i64.pow(p.num_blocks() as u32)));
        }
    }

    #[test]
    fn singular_gram_names_valid_n() {
        match weingarten_matrix(CategoryId::P, 2, 1) {
            Err(Error::GramSingular { min_valid, .. }) => assert_eq!(min_valid, 2),
            other => panic!("expected GramSingular, got {other:?}"),
        }
        let w = weingarten_matrix(CategoryId::P, 2, 2).unwrap();
        let g = gram_matrix(CategoryId::P, 2, 2);
        assert_eq!(&g * &w, ExactMatrix::identity(2));
    }
}
