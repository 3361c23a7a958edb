use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::prime::{is_prime_u64, mul_mod, pow_mod, PRIME_LOW};
use super::LinAlgError;

/// A residue modulo a prime `q >= 2^31`, with `q` carried alongside.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ModInt {
    value: u64,
    modulus: u64,
}

impl ModInt {
    pub fn new(value: u64, modulus: u64) -> Result<Self, LinAlgError> {
        if modulus < PRIME_LOW || !is_prime_u64(modulus) {
            return Err(LinAlgError::BadModulus(modulus));
        }
        Ok(ModInt {
            value: value % modulus,
            modulus,
        })
    }

    /// Skips the primality check; the caller guarantees `modulus` is a valid prime.
    pub(crate) fn new_unchecked(value: u64, modulus: u64) -> Self {
        ModInt {
            value: value % modulus,
            modulus,
        }
    }

    /// Image of `r` under reduction mod `modulus`; `None` if the denominator vanishes.
    pub fn from_rational(r: &BigRational, modulus: u64) -> Result<Option<Self>, LinAlgError> {
        let num = reduce_bigint(r.numer(), modulus);
        let den = reduce_bigint(r.denom(), modulus);
        let probe = ModInt::new(den, modulus)?;
        if den == 0 {
            return Ok(None);
        }
        Ok(Some(
            ModInt::new_unchecked(num, modulus).mul_unchecked(probe.inv_unchecked()),
        ))
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn check(self, other: ModInt) -> Result<(), LinAlgError> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(LinAlgError::ScalarKindMismatch)
        }
    }

    pub fn add(self, other: ModInt) -> Result<ModInt, LinAlgError> {
        self.check(other)?;
        let s = (self.value as u128 + other.value as u128) % self.modulus as u128;
        Ok(ModInt {
            value: s as u64,
            modulus: self.modulus,
        })
    }

    pub fn neg(self) -> ModInt {
        let value = if self.value == 0 { 0 } else { self.modulus - self.value };
        ModInt {
            value,
            modulus: self.modulus,
        }
    }

    pub fn sub(self, other: ModInt) -> Result<ModInt, LinAlgError> {
        self.add(other.neg())
    }

    pub fn mul(self, other: ModInt) -> Result<ModInt, LinAlgError> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(self, other: ModInt) -> ModInt {
        ModInt {
            value: mul_mod(self.value, other.value, self.modulus),
            modulus: self.modulus,
        }
    }

    pub fn inv(self) -> Result<ModInt, LinAlgError> {
        if self.value == 0 {
            return Err(LinAlgError::DivisionByZero);
        }
        Ok(self.inv_unchecked())
    }

    fn inv_unchecked(self) -> ModInt {
        ModInt {
            value: pow_mod(self.value, self.modulus - 2, self.modulus),
            modulus: self.modulus,
        }
    }
}

pub(crate) fn reduce_bigint(x: &BigInt, modulus: u64) -> u64 {
    let m = BigInt::from(modulus);
    let r = x.mod_floor(&m);
    let (_, digits) = r.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

/// An exact scalar: an arbitrary-precision rational or a prime-field residue.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Modular(ModInt),
}

impl Scalar {
    pub fn int(v: i64) -> Scalar {
        Scalar::Rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(num: i64, den: i64) -> Result<Scalar, LinAlgError> {
        if den == 0 {
            return Err(LinAlgError::DivisionByZero);
        }
        Ok(Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular(m) => m.is_zero(),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Modular(_) => None,
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar, LinAlgError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (Scalar::Modular(a), Scalar::Modular(b)) => a.add(*b).map(Scalar::Modular),
            _ => Err(LinAlgError::ScalarKindMismatch),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar, LinAlgError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::Modular(a), Scalar::Modular(b)) => a.mul(*b).map(Scalar::Modular),
            _ => Err(LinAlgError::ScalarKindMismatch),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a.clone()),
            Scalar::Modular(a) => Scalar::Modular(a.neg()),
        }
    }

    pub fn inv(&self) -> Result<Scalar, LinAlgError> {
        match self {
            Scalar::Rational(a) if a.is_zero() => Err(LinAlgError::DivisionByZero),
            Scalar::Rational(a) => Ok(Scalar::Rational(a.recip())),
            Scalar::Modular(a) => a.inv().map(Scalar::Modular),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular(m) => m.value == 1,
        }
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rational(r)
    }
}

impl From<ModInt> for Scalar {
    fn from(m: ModInt) -> Self {
        Scalar::Modular(m)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Scalar::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Modular(m) => write!(f, "{} (mod {})", m.value, m.modulus),
        }
    }
}
