use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::SymError;
use crate::basis::ExponentVector;

/// A homogeneous polynomial with exact rational coefficients.
///
/// Every stored monomial has degree exactly `degree`, and no zero
/// coefficient is stored. The zero polynomial keeps its nominal degree.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    n_vars: usize,
    degree: u32,
    terms: BTreeMap<ExponentVector, BigRational>,
}

impl Poly {
    pub fn zero(n_vars: usize, degree: u32) -> Self {
        Poly {
            n_vars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Sums the given terms; rejects monomials of the wrong length or degree.
    pub fn from_terms<I>(n_vars: usize, degree: u32, terms: I) -> Result<Self, SymError>
    where
        I: IntoIterator<Item = (ExponentVector, BigRational)>,
    {
        let mut poly = Poly::zero(n_vars, degree);
        for (mono, coeff) in terms {
            if mono.n_vars() != n_vars {
                return Err(SymError::VariableCountMismatch {
                    expected: n_vars,
                    found: mono.n_vars(),
                });
            }
            if mono.degree() != degree {
                return Err(SymError::Inhomogeneous {
                    expected: degree,
                    found: mono.degree(),
                });
            }
            poly.add_term(mono, coeff);
        }
        Ok(poly)
    }

    /// Single monomial with coefficient one.
    pub fn monomial(mono: ExponentVector) -> Self {
        let n_vars = mono.n_vars();
        let degree = mono.degree();
        let mut terms = BTreeMap::new();
        terms.insert(mono, BigRational::one());
        Poly { n_vars, degree, terms }
    }

    pub(crate) fn add_term(&mut self, mono: ExponentVector, coeff: BigRational) {
        debug_assert_eq!(mono.degree(), self.degree);
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(mono).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in graded-lex order (`x1^d` first).
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, mono: &ExponentVector) -> BigRational {
        self.terms.get(mono).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `a * self + b * other`.
    pub fn linear_combination(&self, a: &BigRational, other: &Poly, b: &BigRational) -> Result<Poly, SymError> {
        self.check_same_space(other)?;
        let mut out = Poly::zero(self.n_vars, self.degree);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * a);
        }
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c * b);
        }
        Ok(out)
    }

    pub fn add(&self, other: &Poly) -> Result<Poly, SymError> {
        self.linear_combination(&BigRational::one(), other, &BigRational::one())
    }

    pub fn scale(&self, a: &BigRational) -> Poly {
        let mut out = Poly::zero(self.n_vars, self.degree);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * a);
        }
        out
    }

    fn check_same_space(&self, other: &Poly) -> Result<(), SymError> {
        if self.n_vars != other.n_vars {
            return Err(SymError::VariableCountMismatch {
                expected: self.n_vars,
                found: other.n_vars,
            });
        }
        if self.degree != other.degree {
            return Err(SymError::Inhomogeneous {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly, SymError> {
        if self.n_vars != other.n_vars {
            return Err(SymError::VariableCountMismatch {
                expected: self.n_vars,
                found: other.n_vars,
            });
        }
        let mut out = Poly::zero(self.n_vars, self.degree + other.degree);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.add(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// Multiplies by a monomial.
    pub fn shift(&self, mono: &ExponentVector) -> Poly {
        let mut out = Poly::zero(self.n_vars, self.degree + mono.degree());
        for (m, c) in &self.terms {
            out.add_term(m.add(mono), c.clone());
        }
        out
    }

    /// Sets the listed variables to zero.
    pub fn restrict_to_zero(&self, vars: &[usize]) -> Poly {
        let mut out = Poly::zero(self.n_vars, self.degree);
        for (m, c) in &self.terms {
            if vars.iter().all(|&v| m.get(v) == 0) {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// The substitution `x_i -> sum_j g[i][j] x_j`.
    pub fn substitute_linear(&self, g: &[Vec<BigRational>]) -> Result<Poly, SymError> {
        if g.len() != self.n_vars || g.iter().any(|row| row.len() != self.n_vars) {
            return Err(SymError::VariableCountMismatch {
                expected: self.n_vars,
                found: g.len(),
            });
        }
        let images: Vec<Poly> = g
            .iter()
            .map(|row| {
                Poly::from_terms(
                    self.n_vars,
                    1,
                    row.iter()
                        .enumerate()
                        .map(|(j, c)| (ExponentVector::unit(self.n_vars, j), c.clone())),
                )
            })
            .collect::<Result<_, _>>()?;
        let mut out = Poly::zero(self.n_vars, self.degree);
        for (m, c) in &self.terms {
            let mut prod = Poly::from_terms(self.n_vars, 0, [(ExponentVector::zero(self.n_vars), c.clone())])?;
            for (var, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    prod = prod.mul(&images[var])?;
                }
            }
            out = out.add(&prod)?;
        }
        Ok(out)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[n={}, d={}]({})", self.n_vars, self.degree, self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let abs = c.abs();
            if !abs.is_one() {
                if abs.denom().is_one() {
                    write!(f, "{}*", abs.numer())?;
                } else {
                    write!(f, "{}/{}*", abs.numer(), abs.denom())?;
                }
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

pub(crate) fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}
