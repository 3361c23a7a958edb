//! Catalecticant and shifted-partial matrices.
//!
//! Column `alpha` of a catalecticant is the coefficient vector of the
//! partial derivative `d^alpha P`, with no multinomial renormalization.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Poly, SymError};
use crate::basis::{monomial_count, monomials, ExponentVector};
use crate::exactla::{Label, SparseMatrix};

/// `d^alpha P`, including falling-factorial coefficients.
pub fn partial_derivative(p: &Poly, alpha: &ExponentVector) -> Result<Poly, SymError> {
    if alpha.n_vars() != p.n_vars() {
        return Err(SymError::VariableCountMismatch {
            expected: p.n_vars(),
            found: alpha.n_vars(),
        });
    }
    if alpha.degree() > p.degree() {
        return Err(SymError::Parameter {
            name: "alpha",
            detail: alloc::format!("order {} exceeds degree {}", alpha.degree(), p.degree()),
        });
    }
    let mut out = Poly::zero(p.n_vars(), p.degree() - alpha.degree());
    for (mono, coeff) in p.terms() {
        let Some(rest) = mono.checked_sub(alpha) else { continue };
        let mut factor: u64 = 1;
        let mut big = BigInt::from(1);
        for (&e, &a) in mono.exponents().iter().zip(alpha.exponents()) {
            for t in 0..a {
                let next = u64::from(e - t);
                match factor.checked_mul(next) {
                    Some(f) => factor = f,
                    None => {
                        big *= factor;
                        factor = next;
                    }
                }
            }
        }
        big *= factor;
        out.add_term(rest, coeff * BigRational::from_integer(big));
    }
    Ok(out)
}

pub(crate) fn check_order(p: &Poly, k: usize) -> Result<(), SymError> {
    let d = p.degree() as usize;
    if k == 0 || k >= d {
        return Err(SymError::Parameter {
            name: "k",
            detail: alloc::format!("need 1 <= k < degree = {d}, got k = {k}"),
        });
    }
    Ok(())
}

/// Matrix of `P_{k,d-k}`: columns are degree-k operators, rows degree-(d-k) monomials.
pub fn catalecticant(p: &Poly, k: usize) -> Result<SparseMatrix, SymError> {
    check_order(p, k)?;
    let n = p.n_vars();
    let d = p.degree() as usize;
    let cols = monomials(n, k);
    let n_rows = monomial_count(n, d - k);
    let columns = cols
        .iter()
        .map(|alpha| {
            let deriv = partial_derivative(p, alpha)?;
            Ok(deriv.terms().map(|(m, c)| (m.grlex_index(), c.clone())).collect())
        })
        .collect::<Result<Vec<_>, SymError>>()?;
    let row_labels = monomials(n, d - k).into_iter().map(Label::Monomial).collect();
    let col_labels = cols.into_iter().map(Label::Monomial).collect();
    Ok(SparseMatrix::from_rational_columns(n_rows, columns)?.with_labels(row_labels, col_labels)?)
}

/// Matrix of `P_{k,d-k[l]}`: column `(alpha, m)` is `m * d^alpha P`.
pub fn shifted_partials(p: &Poly, k: usize, ell: usize) -> Result<SparseMatrix, SymError> {
    if p.is_zero() {
        return Err(SymError::ZeroPolynomial);
    }
    check_order(p, k)?;
    if ell == 0 {
        return Err(SymError::Parameter {
            name: "l",
            detail: "shift degree must be at least 1".into(),
        });
    }
    let n = p.n_vars();
    let d = p.degree() as usize;
    let ops = monomials(n, k);
    let shifts = monomials(n, ell);
    let n_rows = monomial_count(n, d - k + ell);
    let mut columns = Vec::with_capacity(ops.len() * shifts.len());
    let mut col_labels = Vec::with_capacity(ops.len() * shifts.len());
    for alpha in &ops {
        let deriv = partial_derivative(p, alpha)?;
        for m in &shifts {
            let shifted = deriv.shift(m);
            columns.push(
                shifted
                    .terms()
                    .map(|(mono, c)| (mono.grlex_index(), c.clone()))
                    .collect(),
            );
            col_labels.push(Label::OperatorShift(alpha.clone(), m.clone()));
        }
    }
    let row_labels = monomials(n, d - k + ell).into_iter().map(Label::Monomial).collect();
    Ok(SparseMatrix::from_rational_columns(n_rows, columns)?.with_labels(row_labels, col_labels)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{rank_exact, Scalar};
    use crate::symtensor::poly::int;
    use crate::symtensor::{gen_product, parse_poly};

    fn ev(e: &[u32]) -> ExponentVector {
        ExponentVector::new(e.to_vec())
    }

    #[test]
    fn derivative_examples() {
        let p = gen_product(3).unwrap();
        assert_eq!(
            partial_derivative(&p, &ev(&[1, 0, 0])).unwrap(),
            Poly::monomial(ev(&[0, 1, 1]))
        );
        assert!(partial_derivative(&p, &ev(&[2, 0, 0])).unwrap().is_zero());
        let cube = Poly::monomial(ev(&[3]));
        let d2 = partial_derivative(&cube, &ev(&[2])).unwrap();
        assert_eq!(d2.coefficient(&ev(&[1])), int(6));
        assert_eq!(d2.degree(), 1);
    }

    #[test]
    fn derivative_order_too_high() {
        let p = gen_product(2).unwrap();
        assert!(partial_derivative(&p, &ev(&[2, 1])).is_err());
    }

    #[test]
    fn catalecticant_of_chow_point() {
        let m = catalecticant(&gen_product(3).unwrap(), 1).unwrap();
        assert_eq!((m.n_rows(), m.n_cols()), (6, 3));
        assert_eq!(rank_exact(&m).unwrap().rank, 3);
    }

    #[test]
    fn catalecticant_layout_is_grlex() {
        // (x1^2 + x2^2)^2 at k = 2: columns x1^2, x1x2, x2^2
        let p = parse_poly("x1^4 + 2*x1^2*x2^2 + x2^4", 2).unwrap();
        let m = catalecticant(&p, 2).unwrap();
        assert_eq!(m.col_labels()[0], Label::Monomial(ev(&[2, 0])));
        assert_eq!(m.row_labels()[2], Label::Monomial(ev(&[0, 2])));
        // d^2/dx1^2 = 12 x1^2 + 4 x2^2
        assert_eq!(m.get(0, 0), Some(&Scalar::int(12)));
        assert_eq!(m.get(2, 0), Some(&Scalar::int(4)));
        // d^2/dx1dx2 = 8 x1 x2
        assert_eq!(m.get(1, 1), Some(&Scalar::int(8)));
        assert_eq!(rank_exact(&m).unwrap().rank, 3);
    }

    #[test]
    fn catalecticant_rejects_bad_order() {
        let p = gen_product(3).unwrap();
        assert!(catalecticant(&p, 0).is_err());
        assert!(catalecticant(&p, 3).is_err());
        let linear = gen_product(1).unwrap();
        assert!(catalecticant(&linear, 1).is_err());
    }

    #[test]
    fn shifted_partials_examples() {
        let m = shifted_partials(&gen_product(3).unwrap(), 1, 1).unwrap();
        assert_eq!((m.n_rows(), m.n_cols()), (10, 9));
        assert_eq!(rank_exact(&m).unwrap().rank, 7);
        for n in 1..=4 {
            let mut e = alloc::vec![0; n];
            e[0] = 4;
            let p = Poly::monomial(ExponentVector::new(e));
            assert_eq!(rank_exact(&shifted_partials(&p, 1, 1).unwrap()).unwrap().rank, n);
        }
        assert_eq!(shifted_partials(&Poly::zero(3, 3), 1, 1), Err(SymError::ZeroPolynomial));
        assert!(shifted_partials(&gen_product(3).unwrap(), 1, 0).is_err());
    }
}
