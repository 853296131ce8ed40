//! Exact partition-category calculus for quizzy quantum groups.
//!
//! The crate is organized bottom-up:
//!
//! * [`partition`]: set partitions, the categories `P, NC, P2, ...`, the
//!   coarsening order, crossing signature and Möbius function.
//! * [`linalg`]: exact rationals, sparse tensor vectors, fraction-free rank,
//!   Gram and Weingarten matrices.
//! * [`intertwiner`]: partition vectors `ξ_π` and their twisted versions,
//!   fixed-space dimensions, constrained subspaces, word moments and
//!   Weingarten integration.
//! * [`symbolic`]: noncommutative polynomials, the Fourier pair on `Z_2^N`,
//!   the magic unitary of the hypercube action and its characters.
//! * [`classical`]: brute-force group actions (`H_N`, `S_N`) and Burnside
//!   counting, used as ground truth.
//! * [`duals`]: group duals of products and free products of cyclic groups.
//! * [`report`]: named computations, verification suites and discrepancy
//!   reports.
//!
//! Hot loops go through [`par`], which uses rayon when the `parallel`
//! feature is on and falls back to plain iteration otherwise.

pub mod classical;
pub mod duals;
pub mod error;
pub mod intertwiner;
pub mod linalg;
pub mod par;
pub mod partition;
pub mod report;
pub mod symbolic;

pub use error::{Error, Result};

/// Resource limits for computations whose cost grows exponentially.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest admissible tensor index space `N^m`.
    pub max_index_space: u128,
    /// Largest admissible finite group order.
    pub max_group_order: u128,
    /// Largest `N` for symbolic character constructions.
    pub max_symbolic_n: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_index_space: 100_000_000,
            max_group_order: 100_000,
            max_symbolic_n: 5,
        }
    }
}

impl Budget {
    pub(crate) fn check_index_space(&self, n: usize, m: usize) -> Result<u64> {
        let requested = (n as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
        if requested > self.max_index_space || requested > u64::MAX as u128 {
            return Err(Error::BudgetExceeded {
                what: "tensor index space",
                requested,
                limit: self.max_index_space,
            });
        }
        Ok(requested as u64)
    }

    pub(crate) fn check_group_order(&self, order: u128) -> Result<()> {
        if order > self.max_group_order {
            return Err(Error::BudgetExceeded {
                what: "group order",
                requested: order,
                limit: self.max_group_order,
            });
        }
        Ok(())
    }
}
