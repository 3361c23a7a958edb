#![allow(dead_code)]

use kyflat_core::basis::monomials;
use kyflat_core::exactla::SparseMatrix;
use kyflat_core::symtensor::Poly;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Dense polynomial with coefficients in `[-bound, bound]`, zeros allowed.
pub fn small_random_poly(n: usize, d: usize, bound: i64, seed: u64) -> Poly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let terms: Vec<_> = monomials(n, d)
        .into_iter()
        .map(|m| (m, q(rng.gen_range(-bound..=bound))))
        .collect();
    Poly::from_terms(n, d as u32, terms).unwrap()
}

/// Random integer matrix with nonzero determinant, found by rejection.
pub fn random_invertible(n: usize, seed: u64) -> Vec<Vec<BigRational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let g: Vec<Vec<BigRational>> = (0..n)
            .map(|_| (0..n).map(|_| q(rng.gen_range(-3..=3))).collect())
            .collect();
        if det(&g) != q(0) {
            return g;
        }
    }
}

/// Determinant by Gaussian elimination over Q.
pub fn det(m: &[Vec<BigRational>]) -> BigRational {
    let mut a = m.to_vec();
    let n = a.len();
    let mut acc = q(1);
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| a[r][col] != q(0)) else {
            return q(0);
        };
        if piv != col {
            a.swap(piv, col);
            acc = -acc;
        }
        let p = a[col][col].clone();
        acc *= &p;
        for r in col + 1..n {
            let f = &a[r][col] / &p;
            for c in col..n {
                let sub = &f * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    acc
}

/// Rank over Q of a dense rational matrix, independent of the sparse code.
pub fn dense_rank(rows: Vec<Vec<BigRational>>) -> usize {
    let mut a = rows;
    let n_rows = a.len();
    let n_cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..n_cols {
        let Some(piv) = (rank..n_rows).find(|&r| a[r][col] != q(0)) else {
            continue;
        };
        a.swap(piv, rank);
        let p = a[rank][col].clone();
        for r in 0..n_rows {
            if r != rank && a[r][col] != q(0) {
                let f = &a[r][col] / &p;
                for c in col..n_cols {
                    let sub = &f * &a[rank][c];
                    a[r][c] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn to_dense(m: &SparseMatrix) -> Vec<Vec<BigRational>> {
    let mut out = vec![vec![q(0); m.n_cols()]; m.n_rows()];
    for (r, c, v) in m.entries() {
        out[*r][*c] = v.as_rational().unwrap().clone();
    }
    out
}

pub fn hconcat(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    assert_eq!(a.n_rows(), b.n_rows());
    let mut entries: Vec<_> = a.entries().to_vec();
    entries.extend(b.entries().iter().map(|(r, c, v)| (*r, c + a.n_cols(), v.clone())));
    SparseMatrix::new(a.n_rows(), a.n_cols() + b.n_cols(), entries).unwrap()
}
