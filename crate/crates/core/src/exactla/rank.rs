use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::prime::{mul_mod, pow_mod, random_prime};
use super::scalar::reduce_bigint;
use super::{LinAlgError, Scalar, SparseMatrix};

/// Column count up to which [`RankPolicy::Auto`] stays exact.
pub const DEFAULT_EXACT_COLUMN_LIMIT: usize = 500;
/// Primes drawn by [`RankPolicy::Auto`] above the exact limit.
pub const DEFAULT_MODULAR_PRIMES: usize = 2;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RankMethod {
    ExactRational,
    Modular,
}

impl RankMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            RankMethod::ExactRational => "exact_rational",
            RankMethod::Modular => "modular",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RankResult {
    pub rank: usize,
    pub method: RankMethod,
    /// Empty for exact computations.
    pub primes_used: Vec<u64>,
    /// A modular rank never exceeds the rank over the rationals.
    pub is_certified_lower_bound: bool,
    /// Per-block ranks when produced by [`block_rank_sum`], otherwise empty.
    pub block_ranks: Vec<usize>,
}

impl RankResult {
    fn exact(rank: usize) -> Self {
        RankResult {
            rank,
            method: RankMethod::ExactRational,
            primes_used: Vec::new(),
            is_certified_lower_bound: false,
            block_ranks: Vec::new(),
        }
    }

    fn modular(rank: usize, primes: Vec<u64>) -> Self {
        RankResult {
            rank,
            method: RankMethod::Modular,
            primes_used: primes,
            is_certified_lower_bound: true,
            block_ranks: Vec::new(),
        }
    }
}

/// How a rank is computed when the caller does not force a method.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RankPolicy {
    /// Exact up to `exact_col_limit` columns, modular with `primes` primes above.
    Auto {
        exact_col_limit: usize,
        primes: usize,
    },
    Exact,
    Modular {
        primes: usize,
    },
}

impl Default for RankPolicy {
    fn default() -> Self {
        RankPolicy::Auto {
            exact_col_limit: DEFAULT_EXACT_COLUMN_LIMIT,
            primes: DEFAULT_MODULAR_PRIMES,
        }
    }
}

/// Rank computation backend for [`block_rank_sum`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Ranker {
    Exact,
    Modular { primes: usize, seed: u64 },
}

pub fn rank_with_policy(m: &SparseMatrix, policy: RankPolicy, seed: u64) -> Result<RankResult, LinAlgError> {
    match policy {
        RankPolicy::Exact => rank_exact(m),
        RankPolicy::Modular { primes } => rank_modular(m, primes, seed),
        RankPolicy::Auto {
            exact_col_limit,
            primes,
        } => {
            if m.n_cols() <= exact_col_limit {
                rank_exact(m)
            } else {
                rank_modular(m, primes, seed)
            }
        }
    }
}

type IntVec = Vec<(usize, BigInt)>;

/// Rank over the rationals by fraction-free sparse elimination.
///
/// Each row (or column, whichever family is smaller) is cleared of
/// denominators and reduced against an echelon basis using integer
/// cross-multiplication; every intermediate vector is divided by the gcd
/// of its entries, so all arithmetic stays in the integers.
pub fn rank_exact(m: &SparseMatrix) -> Result<RankResult, LinAlgError> {
    if !m.is_rational() {
        return Err(LinAlgError::NotRational);
    }
    let (vectors, len) = integer_vectors(m);
    let mut vectors = vectors;
    // sparse vectors first: they make cheap pivots
    vectors.sort_by_key(|v| v.len());
    let mut basis: Vec<Option<IntVec>> = alloc::vec![None; len];
    let mut rank = 0;
    for mut v in vectors {
        loop {
            let Some((lead, _)) = v.first() else { break };
            let lead = *lead;
            match &basis[lead] {
                Some(b) => v = eliminate(&v, b),
                None => {
                    basis[lead] = Some(v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    Ok(RankResult::exact(rank))
}

/// Primitive integer vectors spanning the row or column space.
fn integer_vectors(m: &SparseMatrix) -> (Vec<IntVec>, usize) {
    let by_columns = m.n_cols() <= m.n_rows();
    let (groups, len) = if by_columns {
        (m.columns(), m.n_rows())
    } else {
        (m.rows(), m.n_cols())
    };
    let vectors = groups
        .into_iter()
        .filter(|g| !g.is_empty())
        .map(|g| {
            let lcm = g.iter().fold(BigInt::one(), |acc, (_, v)| {
                let r = v.as_rational().expect("checked rational");
                acc.lcm(r.denom())
            });
            let v: IntVec = g
                .into_iter()
                .map(|(i, v)| {
                    let r = v.as_rational().expect("checked rational");
                    (i, r.numer() * (&lcm / r.denom()))
                })
                .collect();
            make_primitive(v)
        })
        .collect();
    (vectors, len)
}

fn make_primitive(mut v: IntVec) -> IntVec {
    let g = v.iter().fold(BigInt::zero(), |acc, (_, x)| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for (_, x) in v.iter_mut() {
            *x /= &g;
        }
    }
    if v.first().is_some_and(|(_, x)| x.is_negative()) {
        for (_, x) in v.iter_mut() {
            *x = -core::mem::take(x);
        }
    }
    v
}

/// `pb * v - pv * b`, scaled so the shared leading entry cancels, then made primitive.
fn eliminate(v: &IntVec, b: &IntVec) -> IntVec {
    let g = v[0].1.gcd(&b[0].1);
    let mult_v = &b[0].1 / &g;
    let mult_b = &v[0].1 / &g;
    let mut out = Vec::with_capacity(v.len() + b.len());
    let (mut i, mut j) = (1, 1);
    while i < v.len() || j < b.len() {
        let vi = v.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let bj = b.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        let (idx, value) = if vi < bj {
            i += 1;
            (vi, &mult_v * &v[i - 1].1)
        } else if bj < vi {
            j += 1;
            (bj, -(&mult_b * &b[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (vi, &mult_v * &v[i - 1].1 - &mult_b * &b[j - 1].1)
        };
        if !value.is_zero() {
            out.push((idx, value));
        }
    }
    make_primitive(out)
}

/// Largest mod-q rank over `prime_count` random primes in `[2^31, 2^62)`.
///
/// Primes whose reduction would divide by zero are replaced by fresh draws.
pub fn rank_modular(m: &SparseMatrix, prime_count: usize, seed: u64) -> Result<RankResult, LinAlgError> {
    if prime_count == 0 {
        return Err(LinAlgError::NoPrimes);
    }
    if !m.is_rational() {
        return Err(LinAlgError::NotRational);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut primes = Vec::with_capacity(prime_count);
    let mut best = 0;
    while primes.len() < prime_count {
        let q = random_prime(&mut rng);
        if primes.contains(&q) {
            continue;
        }
        match rank_mod_prime(m, q) {
            Some(r) => {
                best = best.max(r);
                primes.push(q);
            }
            None => continue,
        }
    }
    Ok(RankResult::modular(best, primes))
}

/// Modular rank with caller-chosen primes. Primes that divide a
/// denominator are skipped; errors if none is usable.
pub fn rank_modular_with_primes(m: &SparseMatrix, primes: &[u64]) -> Result<RankResult, LinAlgError> {
    if !m.is_rational() {
        return Err(LinAlgError::NotRational);
    }
    let mut used = Vec::new();
    let mut best = 0;
    for &q in primes {
        super::ModInt::new(0, q)?;
        if let Some(r) = rank_mod_prime(m, q) {
            best = best.max(r);
            used.push(q);
        }
    }
    if used.is_empty() {
        return Err(LinAlgError::NoPrimes);
    }
    Ok(RankResult::modular(best, used))
}

fn rank_mod_prime(m: &SparseMatrix, q: u64) -> Option<usize> {
    let by_columns = m.n_cols() <= m.n_rows();
    let (count, len) = if by_columns {
        (m.n_cols(), m.n_rows())
    } else {
        (m.n_rows(), m.n_cols())
    };
    let mut dense = alloc::vec![alloc::vec![0u64; len]; count];
    for (r, c, v) in m.entries() {
        let Scalar::Rational(v) = v else { return None };
        let num = reduce_bigint(v.numer(), q);
        let den = reduce_bigint(v.denom(), q);
        if den == 0 {
            return None;
        }
        let value = if den == 1 {
            num
        } else {
            mul_mod(num, pow_mod(den, q - 2, q), q)
        };
        let (i, j) = if by_columns { (*c, *r) } else { (*r, *c) };
        dense[i][j] = value;
    }
    Some(dense_rank_mod(dense, q))
}

/// Rank of a list of dense vectors over F_q.
pub(crate) fn dense_rank_mod(vectors: Vec<Vec<u64>>, q: u64) -> usize {
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    for mut v in vectors {
        for (pivot, b) in &basis {
            let c = v[*pivot];
            if c == 0 {
                continue;
            }
            let neg = q - c;
            for (x, y) in v[*pivot..].iter_mut().zip(&b[*pivot..]) {
                if *y != 0 {
                    *x = ((*x as u128 + neg as u128 * *y as u128) % q as u128) as u64;
                }
            }
        }
        if let Some(pivot) = v.iter().position(|&x| x != 0) {
            let inv = pow_mod(v[pivot], q - 2, q);
            for x in v[pivot..].iter_mut() {
                *x = mul_mod(*x, inv, q);
            }
            basis.push((pivot, v));
        }
    }
    basis.len()
}

/// Sum of block ranks for a map that is disjoint with respect to the
/// decomposition the blocks come from. Disjointness is the caller's claim.
pub fn block_rank_sum(blocks: &[SparseMatrix], ranker: Ranker) -> Result<RankResult, LinAlgError> {
    let mut block_ranks = Vec::with_capacity(blocks.len());
    let mut primes_used: Vec<u64> = Vec::new();
    for block in blocks {
        let r = match ranker {
            Ranker::Exact => rank_exact(block)?,
            Ranker::Modular { primes, seed } => rank_modular(block, primes, seed)?,
        };
        for q in r.primes_used {
            if !primes_used.contains(&q) {
                primes_used.push(q);
            }
        }
        block_ranks.push(r.rank);
    }
    let rank = block_ranks.iter().sum();
    let mut out = match ranker {
        Ranker::Exact => RankResult::exact(rank),
        Ranker::Modular { seed, .. } => {
            if primes_used.is_empty() {
                // empty decomposition: still name the prime the first block would have used
                primes_used.push(random_prime(&mut ChaCha8Rng::seed_from_u64(seed)));
            }
            RankResult::modular(rank, primes_used)
        }
    };
    out.block_ranks = block_ranks;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{ModInt, Scalar};
    use alloc::vec;

    fn int_matrix(rows: &[&[i64]]) -> SparseMatrix {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        let entries = rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &v)| (i, j, Scalar::int(v))))
            .collect();
        SparseMatrix::new(n_rows, n_cols, entries).unwrap()
    }

    #[test]
    fn identity_and_zero() {
        assert_eq!(rank_exact(&SparseMatrix::identity(2)).unwrap().rank, 2);
        assert_eq!(rank_exact(&SparseMatrix::zeros(3, 5)).unwrap().rank, 0);
        assert_eq!(rank_exact(&SparseMatrix::zeros(0, 4)).unwrap().rank, 0);
        assert_eq!(rank_modular(&SparseMatrix::identity(2), 1, 99).unwrap().rank, 2);
        assert_eq!(rank_modular(&SparseMatrix::zeros(3, 5), 2, 1).unwrap().rank, 0);
    }

    #[test]
    fn exact_result_metadata() {
        let r = rank_exact(&SparseMatrix::identity(3)).unwrap();
        assert_eq!(r.method, RankMethod::ExactRational);
        assert!(r.primes_used.is_empty());
        let r = rank_modular(&SparseMatrix::identity(3), 3, 5).unwrap();
        assert_eq!(r.method, RankMethod::Modular);
        assert_eq!(r.primes_used.len(), 3);
        assert!(r.is_certified_lower_bound);
    }

    #[test]
    fn rejects_prime_field_entries() {
        let q = 2_147_483_659;
        let m = SparseMatrix::new(1, 1, vec![(0, 0, Scalar::Modular(ModInt::new(1, q).unwrap()))]).unwrap();
        assert_eq!(rank_exact(&m), Err(LinAlgError::NotRational));
    }

    #[test]
    fn dependent_rows() {
        let m = int_matrix(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1], &[0, 2, 2]]);
        assert_eq!(rank_exact(&m).unwrap().rank, 2);
        assert_eq!(rank_modular(&m, 2, 3).unwrap().rank, 2);
    }

    #[test]
    fn rational_entries() {
        let half = Scalar::ratio(1, 2).unwrap();
        let third = Scalar::ratio(1, 3).unwrap();
        let m = SparseMatrix::new(
            2,
            2,
            vec![
                (0, 0, half.clone()),
                (0, 1, third.clone()),
                (1, 0, Scalar::int(3)),
                (1, 1, Scalar::int(2)),
            ],
        )
        .unwrap();
        assert_eq!(rank_exact(&m).unwrap().rank, 1);
        assert_eq!(rank_modular(&m, 1, 0).unwrap().rank, 1);
    }

    #[test]
    fn modular_rank_can_drop_for_small_primes_only_by_divisibility() {
        // det = 2^31 + 11, prime; rank drops exactly modulo that prime.
        let q = 2_147_483_659i64;
        let m = int_matrix(&[&[q, 0], &[0, 1]]);
        assert_eq!(rank_exact(&m).unwrap().rank, 2);
        assert_eq!(rank_modular_with_primes(&m, &[q as u64]).unwrap().rank, 1);
    }

    #[test]
    fn block_sums() {
        assert_eq!(block_rank_sum(&[], Ranker::Exact).unwrap().rank, 0);
        let r = block_rank_sum(&[SparseMatrix::identity(2), SparseMatrix::identity(3)], Ranker::Exact).unwrap();
        assert_eq!(r.rank, 5);
        assert_eq!(r.block_ranks, vec![2, 3]);
        let r = block_rank_sum(&[SparseMatrix::identity(2)], Ranker::Modular { primes: 1, seed: 4 }).unwrap();
        assert_eq!(r.rank, 2);
        assert!(r.is_certified_lower_bound);
    }

    #[test]
    fn policy_switches_on_width() {
        let wide = SparseMatrix::identity(3);
        let p = RankPolicy::Auto {
            exact_col_limit: 2,
            primes: 1,
        };
        assert_eq!(rank_with_policy(&wide, p, 0).unwrap().method, RankMethod::Modular);
        let p = RankPolicy::Auto {
            exact_col_limit: 3,
            primes: 1,
        };
        assert_eq!(rank_with_policy(&wide, p, 0).unwrap().method, RankMethod::ExactRational);
    }
}
