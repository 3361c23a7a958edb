//! Polynomial families.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::int;
use super::{Poly, SymError};
use crate::basis::{monomials, ExponentVector};
use crate::exactla::binomial;

/// Largest permanent the generator builds (`n!` terms).
pub const MAX_PERMANENT: usize = 5;

fn param(name: &'static str, detail: impl Into<alloc::string::String>) -> SymError {
    SymError::Parameter {
        name,
        detail: detail.into(),
    }
}

/// `x1 * x2 * ... * xd` in `d` variables.
pub fn gen_product(d: usize) -> Result<Poly, SymError> {
    if d == 0 {
        return Err(param("d", "must be at least 1"));
    }
    Ok(Poly::monomial(ExponentVector::new(alloc::vec![1; d])))
}

/// `x1...xd + x_{d+1}...x_{2d} + ... ` with `r` blocks, in `r*d` variables.
pub fn gen_sum_of_products(r: usize, d: usize) -> Result<Poly, SymError> {
    if r == 0 || d == 0 {
        return Err(param("r, d", "must be at least 1"));
    }
    let n = r * d;
    let terms = (0..r).map(|block| {
        let mut e = alloc::vec![0u32; n];
        e[block * d..(block + 1) * d].iter_mut().for_each(|x| *x = 1);
        (ExponentVector::new(e), int(1))
    });
    Poly::from_terms(n, d as u32, terms)
}

/// `(x1^δ2 + ... + xr^δ2)^δ1`, expanded with multinomial coefficients.
pub fn gen_power_sum_power(r: usize, delta1: usize, delta2: usize) -> Result<Poly, SymError> {
    if r == 0 || delta1 == 0 || delta2 == 0 {
        return Err(param("r, delta1, delta2", "must be at least 1"));
    }
    let terms = monomials(r, delta1).into_iter().map(|t| {
        let coeff = multinomial(delta1, t.exponents());
        let e = t.exponents().iter().map(|&ti| ti * delta2 as u32).collect();
        (ExponentVector::new(e), BigRational::from_integer(coeff))
    });
    Poly::from_terms(r, (delta1 * delta2) as u32, terms)
}

fn multinomial(total: usize, parts: &[u32]) -> BigInt {
    let mut remaining = total as i64;
    let mut acc = num_bigint::BigUint::from(1u32);
    for &p in parts {
        acc *= binomial(remaining, p as i64);
        remaining -= p as i64;
    }
    BigInt::from(acc)
}

/// The permanent of a generic `n x n` matrix; `x_{ij}` is variable `(i-1)n + j`.
pub fn gen_permanent(n: usize) -> Result<Poly, SymError> {
    if n == 0 || n > MAX_PERMANENT {
        return Err(param(
            "n",
            alloc::format!("permanent supported for 1 <= n <= {MAX_PERMANENT}"),
        ));
    }
    let mut terms = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |sigma| {
        let mut e = alloc::vec![0u32; n * n];
        for (i, &j) in sigma.iter().enumerate() {
            e[i * n + j] = 1;
        }
        terms.push((ExponentVector::new(e), int(1)));
    });
    Poly::from_terms(n * n, n as u32, terms)
}

fn permutations(items: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// `x1^d + ... + xn^d + x1^{d-1}(x2 + ... + xn)`.
pub fn gen_kyfl11_witness(n: usize, d: usize) -> Result<Poly, SymError> {
    if n < 2 || d < 3 {
        return Err(param("n, d", "requires n >= 2 and d >= 3"));
    }
    let mut terms = Vec::with_capacity(2 * n - 1);
    for i in 0..n {
        let mut e = alloc::vec![0u32; n];
        e[i] = d as u32;
        terms.push((ExponentVector::new(e), int(1)));
    }
    for j in 1..n {
        let mut e = alloc::vec![0u32; n];
        e[0] = d as u32 - 1;
        e[j] = 1;
        terms.push((ExponentVector::new(e), int(1)));
    }
    Poly::from_terms(n, d as u32, terms)
}

/// Dense polynomial with coefficients uniform in `[1, coeff_bound]`,
/// drawn in graded-lex order from a ChaCha8 stream seeded by `seed`.
pub fn gen_random(n_vars: usize, d: usize, seed: u64, coeff_bound: u64) -> Result<Poly, SymError> {
    if coeff_bound == 0 {
        return Err(param("coeff_bound", "must be at least 1"));
    }
    if n_vars == 0 {
        return Err(param("n_vars", "must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let terms: Vec<_> = monomials(n_vars, d)
        .into_iter()
        .map(|m| {
            (
                m,
                BigRational::from_integer(BigInt::from(rng.gen_range(1..=coeff_bound))),
            )
        })
        .collect();
    Poly::from_terms(n_vars, d as u32, terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(e: &[u32]) -> ExponentVector {
        ExponentVector::new(e.to_vec())
    }

    #[test]
    fn products() {
        assert_eq!(gen_product(1).unwrap(), Poly::monomial(ev(&[1])));
        assert_eq!(gen_product(3).unwrap(), Poly::monomial(ev(&[1, 1, 1])));
        assert_eq!(gen_product(5).unwrap().term_count(), 1);
        assert!(gen_product(0).is_err());
    }

    #[test]
    fn sums_of_products() {
        assert_eq!(gen_sum_of_products(1, 3).unwrap(), gen_product(3).unwrap());
        let p = gen_sum_of_products(2, 2).unwrap();
        assert_eq!(p, super::super::parse_poly("x1*x2 + x3*x4", 4).unwrap());
        let p = gen_sum_of_products(3, 3).unwrap();
        assert_eq!((p.n_vars(), p.term_count()), (9, 3));
    }

    #[test]
    fn power_sum_powers() {
        let p = gen_power_sum_power(2, 2, 2).unwrap();
        assert_eq!(p, super::super::parse_poly("x1^4 + 2*x1^2*x2^2 + x2^4", 2).unwrap());
        assert_eq!(gen_power_sum_power(1, 3, 2).unwrap(), Poly::monomial(ev(&[6])));
        let p = gen_power_sum_power(3, 2, 1).unwrap();
        assert_eq!(p.term_count(), 6);
        assert_eq!(p.coefficient(&ev(&[1, 1, 0])), int(2));
        // every support vector is delta2 times a composition of delta1
        let p = gen_power_sum_power(3, 3, 2).unwrap();
        assert_eq!(p.term_count(), 10);
        for (m, _) in p.terms() {
            assert!(m.exponents().iter().all(|e| e % 2 == 0));
        }
    }

    #[test]
    fn permanents() {
        assert_eq!(gen_permanent(1).unwrap(), Poly::monomial(ev(&[1])));
        let p2 = gen_permanent(2).unwrap();
        assert_eq!(p2, super::super::parse_poly("x1*x4 + x2*x3", 4).unwrap());
        assert_eq!(gen_permanent(3).unwrap().term_count(), 6);
        assert_eq!(gen_permanent(5).unwrap().term_count(), 120);
        assert!(gen_permanent(6).is_err());
        assert!(gen_permanent(0).is_err());
    }

    #[test]
    fn kyfl11_witnesses() {
        let p = gen_kyfl11_witness(2, 3).unwrap();
        assert_eq!(p, super::super::parse_poly("x1^3 + x2^3 + x1^2*x2", 2).unwrap());
        let p = gen_kyfl11_witness(3, 3).unwrap();
        assert_eq!(
            p,
            super::super::parse_poly("x1^3+x2^3+x3^3+x1^2*x2+x1^2*x3", 3).unwrap()
        );
        assert_eq!(gen_kyfl11_witness(4, 4).unwrap().term_count(), 7);
        assert!(gen_kyfl11_witness(1, 3).is_err());
        assert!(gen_kyfl11_witness(2, 2).is_err());
    }

    #[test]
    fn random_is_dense_and_reproducible() {
        let p = gen_random(2, 2, 17, 10).unwrap();
        assert_eq!(p.term_count(), 3);
        for (_, c) in p.terms() {
            assert!(*c >= int(1) && *c <= int(10));
        }
        assert_eq!(gen_random(3, 4, 5, 1000).unwrap(), gen_random(3, 4, 5, 1000).unwrap());
        assert_ne!(gen_random(3, 4, 5, 1000).unwrap(), gen_random(3, 4, 6, 1000).unwrap());
        assert!(gen_random(2, 2, 0, 0).is_err());
    }
}
