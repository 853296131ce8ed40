use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::ExactScalar;
use crate::{Error, Result};

/// Sparse vector in `(Q^N)^{⊗m}`. Zero entries are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseTensorVector {
    n: usize,
    m: usize,
    entries: BTreeMap<u64, ExactScalar>,
}

impl SparseTensorVector {
    pub fn zero(n: usize, m: usize) -> Self {
        SparseTensorVector {
            n,
            m,
            entries: BTreeMap::new(),
        }
    }

    /// The basis vector `e_{i_1} ⊗ ... ⊗ e_{i_m}` for 0-based `indices`.
    pub fn basis(n: usize, indices: &[usize]) -> Self {
        let mut v = Self::zero(n, indices.len());
        v.set(v.encode(indices), ExactScalar::one());
        v
    }

    pub fn from_entries(
        n: usize,
        m: usize,
        entries: impl IntoIterator<Item = (u64, ExactScalar)>,
    ) -> Self {
        let mut v = Self::zero(n, m);
        for (idx, c) in entries {
            v.add_at(idx, &c);
        }
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &BTreeMap<u64, ExactScalar> {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &ExactScalar)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    pub fn get(&self, idx: u64) -> ExactScalar {
        self.entries.get(&idx).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn set(&mut self, idx: u64, value: ExactScalar) {
        if value.is_zero() {
            self.entries.remove(&idx);
        } else {
            self.entries.insert(idx, value);
        }
    }

    pub fn add_at(&mut self, idx: u64, value: &ExactScalar) {
        if value.is_zero() {
            return;
        }
        let slot = self.entries.entry(idx).or_insert_with(ExactScalar::zero);
        *slot += value;
        if slot.is_zero() {
            self.entries.remove(&idx);
        }
    }

    /// Encodes 0-based leg indices, leg 0 least significant.
    pub fn encode(&self, indices: &[usize]) -> u64 {
        encode(self.n, indices)
    }

    pub fn decode(&self, idx: u64) -> Vec<usize> {
        decode(self.n, self.m, idx)
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.m != other.m {
            return Err(Error::Invalid(format!(
                "tensor shapes differ: (N={}, m={}) vs (N={}, m={})",
                self.n, self.m, other.n, other.m
            )));
        }
        Ok(())
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: &ExactScalar) -> Result<()> {
        self.check_shape(other)?;
        if c.is_zero() {
            return Ok(());
        }
        for (&idx, v) in &other.entries {
            self.add_at(idx, &(v * c));
        }
        Ok(())
    }

    pub fn scaled(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.n, self.m);
        }
        SparseTensorVector {
            n: self.n,
            m: self.m,
            entries: self.entries.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    pub fn dot(&self, other: &Self) -> Result<ExactScalar> {
        self.check_shape(other)?;
        let (small, large) = if self.nnz() <= other.nnz() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = ExactScalar::zero();
        for (idx, v) in &small.entries {
            if let Some(w) = large.entries.get(idx) {
                acc += v * w;
            }
        }
        Ok(acc)
    }
}

pub(crate) fn encode(n: usize, indices: &[usize]) -> u64 {
    let mut idx = 0u64;
    for &i in indices.iter().rev() {
        debug_assert!(i < n);
        idx = idx * n as u64 + i as u64;
    }
    idx
}

pub(crate) fn decode(n: usize, m: usize, mut idx: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        out.push((idx % n as u64) as usize);
        idx /= n as u64;
    }
    out
}
