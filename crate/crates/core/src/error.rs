use thiserror::Error;

use crate::partition::CategoryId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A computation would materialize more than the configured budget allows.
    #[error("{what}: requested {requested} exceeds the budget of {limit}")]
    BudgetExceeded {
        what: &'static str,
        requested: u128,
        limit: u128,
    },

    #[error("partition {0} has a block of odd size; the signature is only defined on even partitions")]
    OddBlock(String),

    #[error("point counts differ: {0} vs {1}")]
    PointMismatch(usize, usize),

    #[error("Gram matrix of {category}({m}) is singular at N = {n}; smallest N with an invertible Gram matrix is {min_valid}")]
    GramSingular {
        category: CategoryId,
        m: usize,
        n: usize,
        min_valid: usize,
    },

    #[error("matrix is singular")]
    Singular,

    #[error("leg constraints overlap at leg {0}")]
    OverlappingConstraints(usize),

    #[error("leg {leg} is out of range for {m} legs")]
    LegOutOfRange { leg: usize, m: usize },

    #[error("category {0} is experimental and must be enabled explicitly")]
    Experimental(CategoryId),

    #[error("twisting requires a category inside P_even, got {0}")]
    TwistNeedsEven(CategoryId),

    #[error("orbital classes are only available for k = 1, 2, 3 (got {0})")]
    OrbitalOrder(usize),

    #[error("invalid argument: {0}")]
    Invalid(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}
