//! Exact scalar fields.
//!
//! `Fp<P>` is the prime field with canonical representatives in `[0, P)`.
//! `Rational` (feature `rational`) is arbitrary-precision Q.

use std::fmt;
use std::hash::Hash;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid scalar literal `{0}`")]
    BadLiteral(String),
}

/// Operations shared by every exact field used by the engine.
pub trait Field:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, FieldError>;
    fn from_i64(v: i64) -> Self;
    /// Parses a decimal integer or a fraction `a/b`.
    fn parse_literal(s: &str) -> Result<Self, FieldError>;
    /// Short name used in job files and reports, e.g. `F32003` or `Q`.
    fn descriptor() -> String;
    /// Zero for characteristic zero.
    fn characteristic() -> u64;
    /// Sign and magnitude for human-readable output.
    fn signed_parts(&self) -> (bool, String);

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, rhs: &Self) -> Result<Self, FieldError> {
        Ok(self.mul(&rhs.inv()?))
    }
}

/// Prime field of order `P`. `P` must be prime and below 2^31.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u32>(u32);

pub type F32003 = Fp<32003>;

impl<const P: u32> Fp<P> {
    pub const fn modulus() -> u32 {
        P
    }

    pub fn new(v: u64) -> Self {
        Fp((v % P as u64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0 as u64;
        let mut acc = 1u64;
        let p = P as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp(acc as u32)
    }

    fn parse_integer(s: &str) -> Result<Self, FieldError> {
        let (neg, digits) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(FieldError::BadLiteral(s.to_string()));
        }
        let p = P as u64;
        let mut acc = 0u64;
        for b in digits.bytes() {
            acc = (acc * 10 + (b - b'0') as u64) % p;
        }
        let v = Fp(acc as u32);
        Ok(if neg { Field::neg(&v) } else { v })
    }
}

impl<const P: u32> Field for Fp<P> {
    #[inline]
    fn zero() -> Self {
        Fp(0)
    }
    #[inline]
    fn one() -> Self {
        Fp(1 % P)
    }
    #[inline]
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    #[inline]
    fn add(&self, rhs: &Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
    #[inline]
    fn sub(&self, rhs: &Self) -> Self {
        Fp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + P - rhs.0 })
    }
    #[inline]
    fn mul(&self, rhs: &Self) -> Self {
        Fp(((self.0 as u64 * rhs.0 as u64) % P as u64) as u32)
    }
    #[inline]
    fn neg(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
    fn inv(&self) -> Result<Self, FieldError> {
        if self.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(P as u64 - 2))
    }
    fn from_i64(v: i64) -> Self {
        let r = v.rem_euclid(P as i64);
        Fp(r as u32)
    }
    fn parse_literal(s: &str) -> Result<Self, FieldError> {
        let s = s.trim();
        match s.split_once('/') {
            Some((a, b)) => Self::parse_integer(a.trim())?.div(&Self::parse_integer(b.trim())?),
            None => Self::parse_integer(s),
        }
    }
    fn descriptor() -> String {
        format!("F{P}")
    }
    fn characteristic() -> u64 {
        P as u64
    }
    fn signed_parts(&self) -> (bool, String) {
        if self.0 > P / 2 {
            (true, (P - self.0).to_string())
        } else {
            (false, self.0.to_string())
        }
    }
}

impl<const P: u32> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(feature = "rational")]
pub use rational::Rational;

#[cfg(feature = "rational")]
mod rational {
    use super::{Field, FieldError};
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, Signed, Zero};
    use std::fmt;

    /// Arbitrary-precision rational numbers.
    #[derive(Clone, PartialEq, Eq, Hash, Debug)]
    pub struct Rational(pub BigRational);

    impl fmt::Display for Rational {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(f, "{}", self.0)
        }
    }

    fn parse_int(s: &str) -> Result<BigInt, FieldError> {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| FieldError::BadLiteral(s.to_string()))
    }

    impl Field for Rational {
        fn zero() -> Self {
            Rational(BigRational::zero())
        }
        fn one() -> Self {
            Rational(BigRational::one())
        }
        fn is_zero(&self) -> bool {
            self.0.is_zero()
        }
        fn add(&self, rhs: &Self) -> Self {
            Rational(&self.0 + &rhs.0)
        }
        fn sub(&self, rhs: &Self) -> Self {
            Rational(&self.0 - &rhs.0)
        }
        fn mul(&self, rhs: &Self) -> Self {
            Rational(&self.0 * &rhs.0)
        }
        fn neg(&self) -> Self {
            Rational(-&self.0)
        }
        fn inv(&self) -> Result<Self, FieldError> {
            if self.0.is_zero() {
                Err(FieldError::DivisionByZero)
            } else {
                Ok(Rational(self.0.recip()))
            }
        }
        fn from_i64(v: i64) -> Self {
            Rational(BigRational::from_integer(BigInt::from(v)))
        }
        fn parse_literal(s: &str) -> Result<Self, FieldError> {
            let s = s.trim();
            match s.split_once('/') {
                Some((a, b)) => {
                    let den = parse_int(b)?;
                    if den.is_zero() {
                        return Err(FieldError::DivisionByZero);
                    }
                    Ok(Rational(BigRational::new(parse_int(a)?, den)))
                }
                None => Ok(Rational(BigRational::from_integer(parse_int(s)?))),
            }
        }
        fn descriptor() -> String {
            "Q".to_string()
        }
        fn characteristic() -> u64 {
            0
        }
        fn signed_parts(&self) -> (bool, String) {
            (self.0.is_negative(), self.0.abs().to_string())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F5 = Fp<5>;

    #[test]
    fn canonical_representatives() {
        assert_eq!(F5::from_i64(-1).value(), 4);
        assert_eq!(F5::from_i64(12).value(), 2);
        assert_eq!(F32003::parse_literal("-3").unwrap().value(), 32000);
    }

    #[test]
    fn inverse_and_division_by_zero() {
        for v in 1..5 {
            let x = F5::from_i64(v);
            assert!(x.mul(&x.inv().unwrap()).is_one());
        }
        assert_eq!(F5::zero().inv(), Err(FieldError::DivisionByZero));
        assert_eq!(F5::parse_literal("1/0"), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn fraction_literals() {
        let half = F32003::parse_literal("1/2").unwrap();
        assert_eq!(half.mul(&F32003::from_i64(2)), F32003::one());
        assert!(F32003::parse_literal("x").is_err());
    }

    #[cfg(feature = "rational")]
    #[test]
    fn rationals() {
        let a = Rational::parse_literal("3/6").unwrap();
        assert_eq!(a, Rational::parse_literal("1/2").unwrap());
        assert_eq!(a.signed_parts(), (false, "1/2".to_string()));
        assert!(Rational::zero().inv().is_err());
    }
}
