//! Text grammar for homogeneous polynomials.
//!
//! ```text
//! poly   ::= [sign] term (('+' | '-') term)*
//! term   ::= [coeff '*'] factor ('*' factor)*
//! factor ::= 'x' INT ['^' INT]
//! coeff  ::= [sign] INT ['/' INT]
//! ```
//!
//! Whitespace is insignificant and variables are 1-indexed.

use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Poly, SymError};
use crate::basis::ExponentVector;

struct RawTerm {
    coeff: BigRational,
    /// (1-based variable, exponent, byte position)
    factors: Vec<(usize, u32, usize)>,
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn error(&self, message: impl ToString) -> SymError {
        SymError::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn expect(&mut self, byte: u8) -> Result<(), SymError> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(alloc::format!("expected '{}'", byte as char)))
        }
    }

    fn integer(&mut self) -> Result<BigInt, SymError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let text = core::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("ascii digits parse"))
    }

    fn small_integer(&mut self, what: &str) -> Result<u64, SymError> {
        let start = self.pos;
        let v = self.integer()?;
        u64::try_from(v).map_err(|_| SymError::Syntax {
            position: start,
            message: alloc::format!("{what} too large"),
        })
    }

    fn sign(&mut self) -> bool {
        let mut negative = false;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            negative ^= c == b'-';
            self.pos += 1;
        }
        negative
    }

    fn coefficient(&mut self) -> Result<BigRational, SymError> {
        let negative = self.sign();
        let num = self.integer()?;
        let mut value = BigRational::from_integer(num);
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let den_pos = self.pos;
            let den = self.integer()?;
            if den.is_zero() {
                return Err(SymError::Syntax {
                    position: den_pos,
                    message: "zero denominator".into(),
                });
            }
            value /= BigRational::from_integer(den);
        }
        Ok(if negative { -value } else { value })
    }

    fn factor(&mut self) -> Result<(usize, u32, usize), SymError> {
        let at = {
            self.skip_ws();
            self.pos
        };
        self.expect(b'x')?;
        let var = self.small_integer("variable index")? as usize;
        let mut exp = 1u32;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            exp = u32::try_from(self.small_integer("exponent")?).map_err(|_| self.error("exponent too large"))?;
        }
        Ok((var, exp, at))
    }

    fn term(&mut self, negative: bool) -> Result<RawTerm, SymError> {
        let mut coeff = BigRational::one();
        let mut factors = Vec::new();
        let mut negative = negative;
        if matches!(self.peek(), Some(b'+' | b'-')) {
            negative ^= self.sign();
        }
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                coeff = self.coefficient()?;
                self.expect(b'*')?;
                factors.push(self.factor()?);
            }
            Some(b'x') => factors.push(self.factor()?),
            Some(_) => return Err(self.error("expected a coefficient or a variable")),
            None => return Err(self.error("unexpected end of input")),
        }
        while self.peek() == Some(b'*') {
            self.pos += 1;
            factors.push(self.factor()?);
        }
        if negative {
            coeff = -coeff;
        }
        Ok(RawTerm { coeff, factors })
    }

    fn poly(&mut self) -> Result<Vec<RawTerm>, SymError> {
        let mut terms = Vec::new();
        let negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        terms.push(self.term(negative)?);
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    terms.push(self.term(false)?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    terms.push(self.term(true)?);
                }
                None => break,
                Some(_) => return Err(self.error("expected '+', '-' or end of input")),
            }
        }
        Ok(terms)
    }
}

fn raw_terms(text: &str) -> Result<Vec<RawTerm>, SymError> {
    Parser {
        bytes: text.as_bytes(),
        pos: 0,
    }
    .poly()
}

/// Parses `text` as a homogeneous polynomial in `n_vars` variables.
pub fn parse_poly(text: &str, n_vars: usize) -> Result<Poly, SymError> {
    let raw = raw_terms(text)?;
    build(raw, n_vars)
}

/// Parses `text`, taking the number of variables to be the largest index used.
pub fn parse_poly_infer(text: &str) -> Result<Poly, SymError> {
    let raw = raw_terms(text)?;
    let n_vars = raw
        .iter()
        .flat_map(|t| t.factors.iter().map(|f| f.0))
        .max()
        .unwrap_or(1);
    build(raw, n_vars)
}

fn build(raw: Vec<RawTerm>, n_vars: usize) -> Result<Poly, SymError> {
    let mut terms = Vec::with_capacity(raw.len());
    let mut degree = None;
    for t in raw {
        let mut exps = alloc::vec![0u32; n_vars];
        for &(var, exp, position) in &t.factors {
            if var == 0 || var > n_vars {
                return Err(SymError::VariableOutOfRange {
                    index: var,
                    n_vars,
                    position,
                });
            }
            exps[var - 1] += exp;
        }
        let mono = ExponentVector::new(exps);
        match degree {
            None => degree = Some(mono.degree()),
            Some(d) if d != mono.degree() => {
                return Err(SymError::Inhomogeneous {
                    expected: d,
                    found: mono.degree(),
                });
            }
            _ => {}
        }
        terms.push((mono, t.coeff));
    }
    Poly::from_terms(n_vars, degree.unwrap_or(0), terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symtensor::poly::int;

    fn ev(e: &[u32]) -> ExponentVector {
        ExponentVector::new(e.to_vec())
    }

    #[test]
    fn product_monomial() {
        let p = parse_poly("x1*x2*x3", 3).unwrap();
        assert_eq!(p, Poly::monomial(ev(&[1, 1, 1])));
    }

    #[test]
    fn two_squares() {
        let p = parse_poly("x1^2 + x2^2", 2).unwrap();
        assert_eq!(p.degree(), 2);
        assert_eq!(p.term_count(), 2);
    }

    #[test]
    fn inhomogeneous_input() {
        assert_eq!(
            parse_poly("x1^2 + x2^3", 2),
            Err(SymError::Inhomogeneous { expected: 2, found: 3 })
        );
    }

    #[test]
    fn coefficients_and_signs() {
        let p = parse_poly(" -3/2 * x1^2 - x1*x2 + -4*x2 * x2 ", 2).unwrap();
        assert_eq!(
            p.coefficient(&ev(&[2, 0])),
            BigRational::new(BigInt::from(-3), BigInt::from(2))
        );
        assert_eq!(p.coefficient(&ev(&[1, 1])), int(-1));
        assert_eq!(p.coefficient(&ev(&[0, 2])), int(-4));
        let q = parse_poly("x1 - -2*x2", 2).unwrap();
        assert_eq!(q.coefficient(&ev(&[0, 1])), int(2));
    }

    #[test]
    fn syntax_errors_report_position() {
        match parse_poly("x1 + * x2", 2) {
            Err(SymError::Syntax { position, .. }) => assert_eq!(position, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_poly("x1 x2", 2),
            Err(SymError::Syntax { position: 3, .. })
        ));
        assert!(matches!(parse_poly("2*", 2), Err(SymError::Syntax { .. })));
        assert!(matches!(
            parse_poly("1/0*x1", 2),
            Err(SymError::Syntax { position: 2, .. })
        ));
        assert!(matches!(parse_poly("", 2), Err(SymError::Syntax { .. })));
    }

    #[test]
    fn variable_range() {
        assert!(matches!(
            parse_poly("x3", 2),
            Err(SymError::VariableOutOfRange { index: 3, .. })
        ));
        assert!(matches!(
            parse_poly("x0", 2),
            Err(SymError::VariableOutOfRange { index: 0, .. })
        ));
        assert_eq!(parse_poly_infer("x1*x4").unwrap().n_vars(), 4);
    }
}
