//! Exact scalars, sparse matrices over them, and rank computation.

mod matrix;
mod prime;
mod rank;
mod scalar;

pub use matrix::{Label, SparseMatrix};
pub use prime::{is_prime_u64, random_prime, PRIME_HIGH, PRIME_LOW};
pub use rank::{
    block_rank_sum, rank_exact, rank_modular, rank_modular_with_primes, rank_with_policy, RankMethod, RankPolicy,
    RankResult, Ranker, DEFAULT_EXACT_COLUMN_LIMIT, DEFAULT_MODULAR_PRIMES,
};
pub use scalar::{ModInt, Scalar};

use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("scalar kinds do not match (rational vs. prime field, or two different primes)")]
    ScalarKindMismatch,
    #[error("exact rank requires rational entries")]
    NotRational,
    #[error("modulus {0} is not a prime in [2^31, 2^64)")]
    BadModulus(u64),
    #[error("entry ({row}, {col}) outside a {n_rows}x{n_cols} matrix")]
    EntryOutOfBounds {
        row: usize,
        col: usize,
        n_rows: usize,
        n_cols: usize,
    },
    #[error("duplicate entry at ({row}, {col})")]
    DuplicateEntry { row: usize, col: usize },
    #[error("{which} labels: expected {expected}, got {got}")]
    LabelLength {
        which: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("{which} labels are not pairwise distinct")]
    LabelsNotDistinct { which: &'static str },
    #[error("division by zero")]
    DivisionByZero,
    #[error("modular rank needs at least one prime")]
    NoPrimes,
}

/// `C(n, k)` with the convention that it vanishes outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}
