//! Exact linear algebra over the rationals.
//!
//! Tensor vectors live in `(Q^N)^{⊗m}` and are stored sparsely; multi-indices
//! are encoded base `N`, little-endian, leg 0 least significant. Small dense
//! matrices (Gram, Weingarten) use [`ExactMatrix`].

mod matrix;
mod rank;
mod sparse;

pub use matrix::{gram_matrix, weingarten_matrix, ExactMatrix};
pub use rank::{nullspace_basis, rank, span_intersection_dim};
pub use sparse::SparseTensorVector;

/// Exact rational scalar.
pub type ExactScalar = num_rational::BigRational;

pub fn int(v: i64) -> ExactScalar {
    ExactScalar::from_integer(v.into())
}

pub fn ratio(num: i64, den: i64) -> ExactScalar {
    ExactScalar::new(num.into(), den.into())
}
