//! Closed-form ranks, counts and bounds, as exact integer or rational functions.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::basis::ExponentVector;
use crate::exactla::{binomial, rank_with_policy, RankPolicy, RankResult};
use crate::koszul::koszul_flattening;
use crate::symtensor::{Poly, SymError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("parameter {name}: {detail}")]
    Parameter { name: &'static str, detail: String },
    #[error("the two closed forms of S({p},{d},{k}) disagree")]
    ClosedFormMismatch { p: usize, d: usize, k: usize },
    #[error("{what} is not an integer")]
    NonIntegral { what: &'static str },
    #[error(transparent)]
    Sym(#[from] SymError),
}

fn param(name: &'static str, detail: impl Into<String>) -> FormulaError {
    FormulaError::Parameter {
        name,
        detail: detail.into(),
    }
}

fn c(n: usize, k: usize) -> BigUint {
    binomial(n as i64, k as i64)
}

fn big(v: usize) -> BigUint {
    BigUint::from(v)
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn to_natural(r: &BigRational, what: &'static str) -> Result<BigUint, FormulaError> {
    if !r.is_integer() {
        return Err(FormulaError::NonIntegral { what });
    }
    r.to_integer().to_biguint().ok_or(FormulaError::NonIntegral { what })
}

fn ceil_div(num: &BigUint, den: &BigUint) -> BigUint {
    num.div_ceil(den)
}

/// A bound on (border) rank together with where it came from.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundReport {
    pub subject: String,
    pub lower: BigUint,
    pub upper: Option<BigUint>,
    pub source: &'static str,
    pub parameters: Vec<(&'static str, u64)>,
    /// The coarser `(C(r, δ1), δ1 C(r, δ1) C(⌊d/2⌋-1, δ1-1))` pair for power-sum powers.
    pub corollary: Option<(BigUint, BigUint)>,
}

fn check_kpd(d: usize, k: usize, p: usize) -> Result<(), FormulaError> {
    if k == 0 || k >= d {
        return Err(param("k", alloc::format!("need 1 <= k < d = {d}, got {k}")));
    }
    if p == 0 || p >= d {
        return Err(param("p", alloc::format!("need 1 <= p < d = {d}, got {p}")));
    }
    Ok(())
}

fn s_range(p: usize, d: usize, k: usize) -> core::ops::RangeInclusive<usize> {
    p.saturating_sub(k)..=p.min(d - k - 1)
}

/// `S(p,d,k)` as the sum of products of three binomials.
pub fn s_formula_binomial_sum(p: usize, d: usize, k: usize) -> Result<BigUint, FormulaError> {
    check_kpd(d, k, p)?;
    Ok(s_range(p, d, k)
        .map(|s| {
            let j = d - k + p - 2 * s;
            c(d, s) * c(d - s, j) * c(j - 1, p - s)
        })
        .sum())
}

/// `S(p,d,k)` through `d!/(p!(d-p-1)!) * sum C(p,s) C(d-1-p, s+k-p) / (d-k+p-2s)`.
pub fn s_formula_rational(p: usize, d: usize, k: usize) -> Result<BigRational, FormulaError> {
    check_kpd(d, k, p)?;
    let prefactor = BigInt::from(big(d) * c(d - 1, p));
    let sum: BigRational = s_range(p, d, k)
        .map(|s| {
            let top = binomial(p as i64, s as i64) * binomial((d - 1 - p) as i64, (s + k) as i64 - p as i64);
            ratio(top, big(d - k + p - 2 * s))
        })
        .fold(BigRational::zero(), |acc, t| acc + t);
    Ok(sum * BigRational::from_integer(prefactor))
}

/// Rank of the Koszul Young flattening of `x1...xd`; both closed forms must agree.
pub fn s_formula(p: usize, d: usize, k: usize) -> Result<BigUint, FormulaError> {
    let first = s_formula_binomial_sum(p, d, k)?;
    let second = s_formula_rational(p, d, k)?;
    if BigRational::from_integer(BigInt::from(first.clone())) != second {
        return Err(FormulaError::ClosedFormMismatch { p, d, k });
    }
    Ok(first)
}

/// `d/(d-k+p) * C(2d-k-1, d) * C(d-1, p)`.
pub fn hook_dim(d: usize, k: usize, p: usize) -> Result<BigUint, FormulaError> {
    check_kpd(d, k, p)?;
    let value = ratio(big(d) * c(2 * d - k - 1, d) * c(d - 1, p), big(d - k + p));
    to_natural(&value, "hook dimension")
}

/// Koszul flattening rank of `l^d` with `l` a nonzero linear form in `n_vars` variables.
///
/// The count is `C(n_vars-1, p)` and does not depend on `d` or `k`.
pub fn veronese_point_rank(n_vars: usize, p: usize) -> Result<BigUint, FormulaError> {
    if p == 0 || p >= n_vars {
        return Err(param("p", alloc::format!("need 1 <= p < {n_vars}, got {p}")));
    }
    Ok(c(n_vars - 1, p))
}

/// `⌈rank(P^{∧p}_{k,d-k}) / C(n-1, p)⌉`.
///
/// A modular rank never exceeds the true rank, so the bound stays valid under any policy.
pub fn border_rank_lb(
    poly: &Poly,
    k: usize,
    p: usize,
    policy: RankPolicy,
    seed: u64,
) -> Result<(BoundReport, RankResult), FormulaError> {
    let m = koszul_flattening(poly, k, p)?;
    let rank = rank_with_policy(&m, policy, seed).map_err(SymError::from)?;
    let point = veronese_point_rank(poly.n_vars(), p)?;
    let report = BoundReport {
        subject: poly.to_string(),
        lower: ceil_div(&big(rank.rank), &point),
        upper: None,
        source: "border_rank_koszul",
        parameters: alloc::vec![
            ("d", u64::from(poly.degree())),
            ("k", k as u64),
            ("p", p as u64),
            ("n", poly.n_vars() as u64)
        ],
        corollary: None,
    };
    Ok((report, rank))
}

/// `A = sum_{s=0}^{n} C(n,s)^2 / (1+2s)`.
pub fn chowsrank_a(n: usize) -> BigRational {
    (0..=n)
        .map(|s| ratio(c(n, s).pow(2), big(1 + 2 * s)))
        .fold(BigRational::zero(), |acc, t| acc + t)
}

/// `C(2n+1, n) * (1 + n^2 / ((n+1)^2 (2n-1)))`, a lower bound for the border rank of `x1...x_{2n+1}`.
pub fn chowsrank_bound(n: usize) -> Result<BigRational, FormulaError> {
    if n == 0 {
        return Err(param("n", "must be at least 1"));
    }
    let correction = ratio(big(n * n), big((n + 1) * (n + 1) * (2 * n - 1)));
    Ok(BigRational::from_integer(BigInt::from(c(2 * n + 1, n))) * (BigRational::one() + correction))
}

/// Catalecticant rank `r * C(d,k)` of a sum of `r` disjoint degree-`d` products.
pub fn secant_chow_cat_rank(r: usize, d: usize, k: usize) -> Result<BigUint, FormulaError> {
    if r == 0 {
        return Err(param("r", "must be at least 1"));
    }
    if k == 0 || k > d / 2 {
        return Err(param("k", alloc::format!("need 1 <= k <= {}, got {k}", d / 2)));
    }
    Ok(big(r) * c(d, k))
}

/// `r [C(d,k) (C(dr,p) - C(d,p)) + S(p,d,k)]`.
pub fn secant_chow_koszul_ub(r: usize, d: usize, k: usize, p: usize) -> Result<BigUint, FormulaError> {
    if r < 2 {
        return Err(param("r", "must be at least 2"));
    }
    let s = s_formula(p, d, k)?;
    Ok(big(r) * (c(d, k) * (c(d * r, p) - c(d, p)) + s))
}

/// `n^2 - 1`.
pub fn generic_kyfl11_rank(n: usize) -> Result<BigUint, FormulaError> {
    if n < 2 {
        return Err(param("n", "must be at least 2"));
    }
    Ok(big(n * n - 1))
}

/// Class data of a degree-`k` operator `y^alpha` for `(x1^δ2 + ... + xr^δ2)^δ1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ABClass {
    /// Residues `alpha_i mod δ2`.
    pub beta: Vec<u32>,
    pub a: usize,
    /// May be negative; such classes are killed by the flattening.
    pub b: i64,
    pub dim_a: BigUint,
    /// Zero when `b < 0`.
    pub dim_b: BigUint,
}

fn dim_sym(deg: i64, r: usize) -> BigUint {
    if deg < 0 {
        return BigUint::zero();
    }
    binomial(deg + r as i64 - 1, deg)
}

fn check_psp(delta1: usize, delta2: usize, k: usize) -> Result<(), FormulaError> {
    if delta1 == 0 || delta2 == 0 {
        return Err(param("delta", "delta1 and delta2 must be at least 1"));
    }
    if k == 0 || k >= delta1 * delta2 {
        return Err(param("k", alloc::format!("need 1 <= k < {}, got {k}", delta1 * delta2)));
    }
    Ok(())
}

pub fn ab_class(alpha: &ExponentVector, delta1: usize, delta2: usize) -> Result<ABClass, FormulaError> {
    check_psp(delta1, delta2, alpha.degree() as usize)?;
    let d2 = delta2 as u32;
    let r = alpha.n_vars();
    let beta: Vec<u32> = alpha.exponents().iter().map(|&e| e % d2).collect();
    let a: usize = alpha.exponents().iter().map(|&e| (e / d2) as usize).sum();
    let ceil_sum: usize = alpha.exponents().iter().map(|&e| e.div_ceil(d2) as usize).sum();
    let b = delta1 as i64 - ceil_sum as i64;
    Ok(ABClass {
        beta,
        a,
        b,
        dim_a: dim_sym(a as i64, r),
        dim_b: dim_sym(b, r),
    })
}

/// Above this many `r * δ2` states `num_ab` switches to inclusion-exclusion.
pub const NUM_AB_ENUMERATION_LIMIT: usize = 1_000_000;

/// Target sum and number of positive residues for class `(A, B)`, or `None` when empty.
fn num_ab_shape(a: usize, b: i64, k: usize, delta1: usize, delta2: usize, r: usize) -> Option<(usize, usize)> {
    let sum = k.checked_sub(a * delta2)?;
    let positive = delta1 as i64 - b - a as i64;
    if positive < 0 || positive as usize > r {
        return None;
    }
    Some((sum, positive as usize))
}

/// Counts residue vectors by a dynamic program over the coordinates.
pub fn num_ab_enumerated(a: usize, b: i64, k: usize, delta1: usize, delta2: usize, r: usize) -> BigUint {
    let Some((sum, positive)) = num_ab_shape(a, b, k, delta1, delta2, r) else {
        return BigUint::zero();
    };
    // ways[j][t]: coordinates so far with j positive entries summing to t
    let mut ways = alloc::vec![alloc::vec![BigUint::zero(); sum + 1]; positive + 1];
    ways[0][0] = BigUint::one();
    for _ in 0..r {
        let mut next = ways.clone();
        for j in 0..positive {
            for t in 0..=sum {
                if ways[j][t].is_zero() {
                    continue;
                }
                for v in 1..delta2.min(sum - t + 1) {
                    let add = ways[j][t].clone();
                    next[j + 1][t + v] += add;
                }
            }
        }
        ways = next;
    }
    ways[positive][sum].clone()
}

/// `C(r,m)` times the number of compositions of the target into `m` parts in `[1, δ2-1]`.
pub fn num_ab_inclusion_exclusion(a: usize, b: i64, k: usize, delta1: usize, delta2: usize, r: usize) -> BigUint {
    let Some((sum, m)) = num_ab_shape(a, b, k, delta1, delta2, r) else {
        return BigUint::zero();
    };
    if m == 0 {
        return if sum == 0 { BigUint::one() } else { BigUint::zero() };
    }
    let mut total = BigInt::zero();
    for j in 0..=m {
        let top = sum as i64 - (j * (delta2 - 1)) as i64 - 1;
        let term = BigInt::from(c(m, j) * binomial(top, m as i64 - 1));
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    c(r, m) * total.to_biguint().expect("composition count is nonnegative")
}

/// `NUM(A,B)`: residue vectors `0 <= beta_i < δ2` with sum `k - A δ2` and `δ1 - B - A` positive entries.
pub fn num_ab(a: usize, b: i64, k: usize, delta1: usize, delta2: usize, r: usize) -> BigUint {
    if r.saturating_mul(delta2) <= NUM_AB_ENUMERATION_LIMIT {
        num_ab_enumerated(a, b, k, delta1, delta2, r)
    } else {
        num_ab_inclusion_exclusion(a, b, k, delta1, delta2, r)
    }
}

/// Catalecticant rank bounds for `(x1^δ2 + ... + xr^δ2)^δ1` at order `k`.
pub fn psp_rank_bounds(r: usize, delta1: usize, delta2: usize, k: usize) -> Result<BoundReport, FormulaError> {
    if r == 0 {
        return Err(param("r", "must be at least 1"));
    }
    check_psp(delta1, delta2, k)?;
    let lower = num_ab(0, 0, k, delta1, delta2, r);
    let mut upper = BigUint::zero();
    for a in 0..=k / delta2 {
        for b in 0..=delta1.saturating_sub(a) {
            let count = num_ab(a, b as i64, k, delta1, delta2, r);
            if count.is_zero() {
                continue;
            }
            upper += dim_sym(a as i64, r).min(dim_sym(b as i64, r)) * count;
        }
    }
    let d = delta1 * delta2;
    let corollary = (k == d / 2 && r >= 2 * delta1).then(|| {
        let choose = c(r, delta1);
        let hi = big(delta1) * &choose * c(d / 2 - 1, delta1 - 1);
        (choose, hi)
    });
    Ok(BoundReport {
        subject: alloc::format!("(x1^{delta2} + ... + x{r}^{delta2})^{delta1}"),
        lower,
        upper: Some(upper),
        source: "NUMAB",
        parameters: alloc::vec![
            ("r", r as u64),
            ("delta1", delta1 as u64),
            ("delta2", delta2 as u64),
            ("k", k as u64)
        ],
        corollary,
    })
}

/// `C(n,k)^2`, the catalecticant rank of the `n x n` permanent.
pub fn perm_cat_rank(n: usize, k: usize) -> Result<BigUint, FormulaError> {
    if k > n / 2 {
        return Err(param("k", alloc::format!("need 0 <= k <= {}, got {k}", n / 2)));
    }
    Ok(c(n, k).pow(2))
}

/// `C(n, ⌊n/2⌋)^2 / (r ⌊n/2⌋)^δ1`.
pub fn permcom_gap(n: usize, r: usize, delta1: usize) -> Result<BigRational, FormulaError> {
    if n < 2 {
        return Err(param("n", "must be at least 2"));
    }
    if delta1 == 0 || n % delta1 != 0 {
        return Err(FormulaError::NonIntegral {
            what: "delta2 = n / delta1",
        });
    }
    if r < n {
        return Err(param("r", alloc::format!("need r >= n = {n}, got {r}")));
    }
    let half = n / 2;
    Ok(ratio(c(n, half).pow(2), big(r * half).pow(delta1 as u32)))
}
