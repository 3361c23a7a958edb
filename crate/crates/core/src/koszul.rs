//! Exterior derivative, Koszul Young flattenings, and the weight-block
//! decomposition for the monomial `x1 * ... * xd`.
//!
//! The exterior derivative sends `l1...la (x) w` to
//! `sum_s l1..^ls..la (x) ls ^ w`. On a monomial `x^e (x) w` that is
//! `sum_i e_i x^{e - 1_i} (x) x_i ^ w`, where inserting `x_i` into the
//! sorted wedge `w` costs the sign `(-1)^{#(indices of w below i)}` and
//! vanishes when `i` already occurs.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use crate::basis::{monomial_count, monomials, subsets, wedge_count, wedges, ExponentVector, WedgeIndex};
use crate::exactla::{binomial, Label, SparseMatrix};
use crate::symtensor::{partial_derivative, Poly, SymError};

pub(crate) fn check_wedge_degree(p: usize, n_vars: usize) -> Result<(), SymError> {
    if p == 0 || p >= n_vars {
        return Err(SymError::Parameter {
            name: "p",
            detail: alloc::format!("need 1 <= p < n_vars = {n_vars}, got p = {p}"),
        });
    }
    Ok(())
}

/// Row of `mono (x) wedge` in `S^a V (x) Λ^q V`, monomial-major.
fn tensor_index(mono: &ExponentVector, wedge: &WedgeIndex, n_vars: usize) -> usize {
    mono.grlex_index() * wedge_count(n_vars, wedge.p()) + wedge.lex_index(n_vars)
}

/// Image of `coeff * mono (x) wedge` under the exterior derivative, pushed
/// into `out` as `(row, value)` pairs.
fn push_derivative(
    mono: &ExponentVector,
    wedge: &WedgeIndex,
    coeff: &BigRational,
    n_vars: usize,
    out: &mut Vec<(usize, BigRational)>,
) {
    for var in mono.support() {
        let Some((sign, target)) = wedge.wedge_left(var) else {
            continue;
        };
        let lowered = mono.with_decrement(var).expect("var is in the support");
        let scale = BigInt::from(i64::from(sign) * i64::from(mono.get(var)));
        out.push((
            tensor_index(&lowered, &target, n_vars),
            coeff * BigRational::from_integer(scale),
        ));
    }
}

fn tensor_labels(n_vars: usize, degree: usize, p: usize) -> Vec<Label> {
    let ws = wedges(n_vars, p);
    monomials(n_vars, degree)
        .into_iter()
        .flat_map(|m| ws.iter().map(move |w| Label::MonomialWedge(m.clone(), w.clone())))
        .collect()
}

/// Matrix of `S^a V (x) Λ^p V -> S^{a-1} V (x) Λ^{p+1} V`.
pub fn exterior_derivative(a: usize, p: usize, n_vars: usize) -> Result<SparseMatrix, SymError> {
    if a == 0 {
        return Err(SymError::Parameter {
            name: "a",
            detail: "symmetric degree must be at least 1".into(),
        });
    }
    if p >= n_vars {
        return Err(SymError::Parameter {
            name: "p",
            detail: alloc::format!("need 0 <= p < n_vars = {n_vars}, got p = {p}"),
        });
    }
    let domain: Vec<(ExponentVector, WedgeIndex)> = pairs(n_vars, a, p);
    derivative_matrix(&domain, a, p, n_vars)
}

fn pairs(n_vars: usize, degree: usize, p: usize) -> Vec<(ExponentVector, WedgeIndex)> {
    let ws = wedges(n_vars, p);
    monomials(n_vars, degree)
        .into_iter()
        .flat_map(|m| ws.iter().map(move |w| (m.clone(), w.clone())))
        .collect()
}

/// The exterior derivative restricted to the listed basis vectors.
fn derivative_matrix(
    domain: &[(ExponentVector, WedgeIndex)],
    a: usize,
    p: usize,
    n_vars: usize,
) -> Result<SparseMatrix, SymError> {
    let one = BigRational::from_integer(BigInt::from(1));
    let columns = domain
        .iter()
        .map(|(m, w)| {
            let mut col = Vec::new();
            push_derivative(m, w, &one, n_vars, &mut col);
            col
        })
        .collect();
    let n_rows = monomial_count(n_vars, a - 1) * wedge_count(n_vars, p + 1);
    let col_labels = domain
        .iter()
        .map(|(m, w)| Label::MonomialWedge(m.clone(), w.clone()))
        .collect();
    Ok(SparseMatrix::from_rational_columns(n_rows, columns)?
        .with_labels(tensor_labels(n_vars, a - 1, p + 1), col_labels)?)
}

/// The exterior derivative on square-free monomials only, `(S^a V)_reg (x) Λ^p V`.
pub fn exterior_derivative_on_regular(a: usize, p: usize, n_vars: usize) -> Result<SparseMatrix, SymError> {
    exterior_derivative(a, p, n_vars)?;
    let domain: Vec<_> = pairs(n_vars, a, p)
        .into_iter()
        .filter(|(m, _)| m.is_regular())
        .collect();
    derivative_matrix(&domain, a, p, n_vars)
}

/// Matrix of the Koszul Young flattening
/// `S^k V* (x) Λ^p V -> S^{d-k-1} V (x) Λ^{p+1} V`.
///
/// Column `(alpha, w)` is the exterior derivative of `d^alpha P (x) w`.
pub fn koszul_flattening(poly: &Poly, k: usize, p: usize) -> Result<SparseMatrix, SymError> {
    crate::symtensor::FlatteningSpec::catalecticant(k).validate(poly)?;
    let n = poly.n_vars();
    check_wedge_degree(p, n)?;
    let d = poly.degree() as usize;
    let ops = monomials(n, k);
    let ws = wedges(n, p);
    let mut columns = Vec::with_capacity(ops.len() * ws.len());
    let mut col_labels = Vec::with_capacity(ops.len() * ws.len());
    for alpha in &ops {
        let deriv = partial_derivative(poly, alpha)?;
        for w in &ws {
            let mut col = Vec::new();
            for (m, c) in deriv.terms() {
                push_derivative(m, w, c, n, &mut col);
            }
            columns.push(col);
            col_labels.push(Label::MonomialWedge(alpha.clone(), w.clone()));
        }
    }
    let n_rows = monomial_count(n, d - k - 1) * wedge_count(n, p + 1);
    Ok(SparseMatrix::from_rational_columns(n_rows, columns)?
        .with_labels(tensor_labels(n, d - k - 1, p + 1), col_labels)?)
}

/// One summand `W_{k_set; j_set}` of `(S^{d-k} V)_reg (x) Λ^p V` for `V = C^d`.
///
/// It is spanned by `x_K x_M (x) x_K ^ x_N` where `K = k_set` and `M, N`
/// split `j_set` into parts of sizes `d-k-s` and `p-s`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightBlock {
    pub s: usize,
    /// Variables repeated in both factors (0-based).
    pub k_set: Vec<usize>,
    /// Variables appearing exactly once overall (0-based).
    pub j_set: Vec<usize>,
    /// Symmetric degree left after removing `k_set`.
    pub u: usize,
    /// Wedge degree left after removing `k_set`.
    pub v: usize,
}

impl WeightBlock {
    /// `C(u+v-1, v)`, zero for the empty `j_set`.
    pub fn rank_formula(&self) -> BigUint {
        block_rank(self.u, self.v)
    }

    pub fn basis(&self, d: usize) -> Vec<(ExponentVector, WedgeIndex)> {
        subsets(&self.j_set, self.u)
            .into_iter()
            .map(|m_part| {
                let mut e = alloc::vec![0u32; d];
                for &i in self.k_set.iter().chain(&m_part) {
                    e[i] = 1;
                }
                let mut w: Vec<usize> = self.k_set.clone();
                w.extend(self.j_set.iter().filter(|j| !m_part.contains(j)));
                w.sort_unstable();
                (ExponentVector::new(e), WedgeIndex::new(w).expect("disjoint sets"))
            })
            .collect()
    }

    /// Restriction of the exterior derivative to this block.
    pub fn matrix(&self, d: usize, k: usize, p: usize) -> Result<SparseMatrix, SymError> {
        derivative_matrix(&self.basis(d), d - k, p, d)
    }
}

fn block_rank(u: usize, v: usize) -> BigUint {
    if u + v == 0 {
        return BigUint::from(0u32);
    }
    binomial((u + v) as i64 - 1, v as i64)
}

fn check_product_params(d: usize, k: usize, p: usize) -> Result<(), SymError> {
    if k == 0 || k >= d {
        return Err(SymError::Parameter {
            name: "k",
            detail: alloc::format!("need 1 <= k < d = {d}, got k = {k}"),
        });
    }
    if p == 0 || p >= d {
        return Err(SymError::Parameter {
            name: "p",
            detail: alloc::format!("need 1 <= p < d = {d}, got p = {p}"),
        });
    }
    Ok(())
}

fn overlap_range(d: usize, k: usize, p: usize) -> core::ops::RangeInclusive<usize> {
    p.saturating_sub(k)..=p.min(d - k)
}

/// Every weight block of `(S^{d-k} V)_reg (x) Λ^p V`, ordered by `s`, then `k_set`, then `j_set`.
pub fn weight_blocks_product(d: usize, k: usize, p: usize) -> Result<Vec<WeightBlock>, SymError> {
    check_product_params(d, k, p)?;
    let all: Vec<usize> = (0..d).collect();
    let mut blocks = Vec::new();
    for s in overlap_range(d, k, p) {
        let j_len = d - k + p - 2 * s;
        for k_set in subsets(&all, s) {
            let rest: Vec<usize> = all.iter().copied().filter(|i| !k_set.contains(i)).collect();
            for j_set in subsets(&rest, j_len) {
                blocks.push(WeightBlock {
                    s,
                    k_set: k_set.clone(),
                    j_set,
                    u: d - k - s,
                    v: p - s,
                });
            }
        }
    }
    Ok(blocks)
}

/// Per overlap size `s`: `(s, number of blocks, rank of each block)`.
pub fn weight_block_counts(d: usize, k: usize, p: usize) -> Result<Vec<(usize, BigUint, BigUint)>, SymError> {
    check_product_params(d, k, p)?;
    Ok(overlap_range(d, k, p)
        .map(|s| {
            let j_len = (d - k + p - 2 * s) as i64;
            let count = binomial(d as i64, s as i64) * binomial((d - s) as i64, j_len);
            (s, count, block_rank(d - k - s, p - s))
        })
        .collect())
}

/// Rank of the Koszul Young flattening of `x1...xd`, summed block by block.
pub fn fast_rank_product(d: usize, k: usize, p: usize) -> Result<BigUint, SymError> {
    Ok(weight_block_counts(d, k, p)?
        .into_iter()
        .map(|(_, count, rank)| count * rank)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{rank_exact, Scalar};
    use crate::symtensor::{gen_product, parse_poly};
    use alloc::vec;

    fn ev(e: &[u32]) -> ExponentVector {
        ExponentVector::new(e.to_vec())
    }

    fn wi(i: &[usize]) -> WedgeIndex {
        WedgeIndex::new(i.to_vec()).unwrap()
    }

    #[test]
    fn derivative_of_linear_forms_is_injective() {
        let m = exterior_derivative(1, 0, 2).unwrap();
        assert_eq!((m.n_rows(), m.n_cols()), (2, 2));
        assert_eq!(rank_exact(&m).unwrap().rank, 2);
        let col = m
            .col_index(&Label::MonomialWedge(ev(&[1, 0]), WedgeIndex::empty()))
            .unwrap();
        let row = m.row_index(&Label::MonomialWedge(ev(&[0, 0]), wi(&[0]))).unwrap();
        assert_eq!(m.get(row, col), Some(&Scalar::int(1)));
    }

    #[test]
    fn self_wedge_vanishes_and_sign_follows_sorting() {
        // x1x2 (x) x1  ->  x2 (x) x1^x1 + x1 (x) x2^x1 = -x1 (x) x1^x2
        let m = exterior_derivative(2, 1, 2).unwrap();
        let col = m.col_index(&Label::MonomialWedge(ev(&[1, 1]), wi(&[0]))).unwrap();
        let column: Vec<_> = m.columns()[col].iter().map(|(r, v)| (*r, (*v).clone())).collect();
        let row = m.row_index(&Label::MonomialWedge(ev(&[1, 0]), wi(&[0, 1]))).unwrap();
        assert_eq!(column, vec![(row, Scalar::int(-1))]);
    }

    #[test]
    fn differential_squares_to_zero() {
        let first = exterior_derivative(3, 1, 3).unwrap();
        let second = exterior_derivative(2, 2, 3).unwrap();
        assert!(second.mul(&first).unwrap().is_zero());
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(exterior_derivative(0, 0, 2).is_err());
        assert!(exterior_derivative(1, 2, 2).is_err());
        let p = gen_product(3).unwrap();
        assert!(koszul_flattening(&p, 1, 0).is_err());
        assert!(koszul_flattening(&p, 1, 3).is_err());
        assert!(koszul_flattening(&p, 3, 1).is_err());
        assert!(weight_blocks_product(3, 3, 1).is_err());
        assert!(weight_blocks_product(3, 1, 3).is_err());
    }

    #[test]
    fn koszul_examples() {
        let cube = parse_poly("x1^3", 3).unwrap();
        assert_eq!(rank_exact(&koszul_flattening(&cube, 1, 1).unwrap()).unwrap().rank, 2);
        let chow = gen_product(3).unwrap();
        let m = koszul_flattening(&chow, 1, 1).unwrap();
        assert_eq!((m.n_rows(), m.n_cols()), (9, 9));
        assert_eq!(rank_exact(&m).unwrap().rank, 8);
        let zero = Poly::zero(3, 3);
        let z = koszul_flattening(&zero, 1, 1).unwrap();
        assert!(z.is_zero());
        assert_eq!(rank_exact(&z).unwrap().rank, 0);
    }

    #[test]
    fn blocks_for_d3() {
        let blocks = weight_blocks_product(3, 1, 1).unwrap();
        assert_eq!(blocks.iter().filter(|b| b.s == 0).count(), 1);
        assert_eq!(blocks.iter().filter(|b| b.s == 1).count(), 6);
        let s0 = blocks.iter().find(|b| b.s == 0).unwrap();
        assert_eq!(s0.rank_formula(), BigUint::from(2u32));
        let mut basis = s0.basis(3);
        basis.sort();
        let mut expected = vec![
            (ev(&[1, 1, 0]), wi(&[2])),
            (ev(&[1, 0, 1]), wi(&[1])),
            (ev(&[0, 1, 1]), wi(&[0])),
        ];
        expected.sort();
        assert_eq!(basis, expected);
        let total: BigUint = blocks.iter().map(|b| b.rank_formula()).sum();
        assert_eq!(total, BigUint::from(8u32));
    }

    #[test]
    fn fast_rank_examples() {
        assert_eq!(fast_rank_product(3, 1, 1).unwrap(), BigUint::from(8u32));
        assert_eq!(fast_rank_product(4, 2, 1).unwrap(), BigUint::from(20u32));
        assert_eq!(fast_rank_product(5, 2, 2).unwrap(), BigUint::from(76u32));
    }
}
