//! Exact rational scalars.
//!
//! Every certified computation in this crate runs on [`Rational`]: an
//! arbitrary-precision fraction kept in lowest terms with a positive
//! denominator. Norm comparisons are always done on squared values so no
//! square root is ever taken.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Exact rational number. Lowest terms, denominator > 0, arbitrary precision.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// Builds `num/den`, reducing to lowest terms. Zero denominator is a
    /// `Value` error, not a panic.
    pub fn from_parts(num: BigInt, den: BigInt) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::Value("zero denominator".into()));
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den` from machine integers; panics on zero denominator, so only
    /// for literals in tests and fixtures.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_parts(BigInt::from(num), BigInt::from(den)).expect("nonzero denominator")
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn squared(&self) -> Self {
        Rational(&self.0 * &self.0)
    }

    pub fn recip(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::Value("division by zero".into()));
        }
        Ok(Rational(self.0.recip()))
    }

    /// 1/n for positive integer n. Used by problem families.
    pub fn inv_of(n: u64) -> Self {
        Self::from_parts(BigInt::one(), BigInt::from(n)).expect("n >= 1")
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl fmt::Display for Rational {
    /// Canonical form: `"5"`, `"-3/4"`. Integers drop the `/1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `"a"` or `"a/b"` with optional signs; normalizes the sign into
    /// the numerator and reduces. `"3/-4"` parses to `-3/4`; `"1/0"` is a
    /// `Value` error.
    fn from_str(s: &str) -> Result<Self, Error> {
        let malformed = || Error::Value(format!("malformed rational {s:?}"));
        let parse_int = |part: &str| -> Result<BigInt, Error> {
            if part.is_empty()
                || !part
                    .chars()
                    .all(|c| c.is_ascii_digit() || c == '-' || c == '+')
            {
                return Err(malformed());
            }
            BigInt::from_str(part).map_err(|_| malformed())
        };
        match s.split_once('/') {
            None => Ok(Rational(BigRational::from_integer(parse_int(s)?))),
            Some((num, den)) => {
                let num = parse_int(num)?;
                let den = parse_int(den)?;
                Self::from_parts(num, den)
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Rational extended with the two infinities, ordered `-inf < finite < +inf`.
///
/// Interval endpoints over empty ratio sets land here: an empty max is
/// `NegInf`, an empty min is `PosInf`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum ExtendedRational {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl ExtendedRational {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtendedRational::Finite(q) => Some(q),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedRational::Finite(_))
    }

    /// `self <= q` treating `-inf` as below everything.
    pub fn le_rational(&self, q: &Rational) -> bool {
        match self {
            ExtendedRational::NegInf => true,
            ExtendedRational::Finite(lo) => lo <= q,
            ExtendedRational::PosInf => false,
        }
    }

    /// `q <= self` treating `+inf` as above everything.
    pub fn ge_rational(&self, q: &Rational) -> bool {
        match self {
            ExtendedRational::NegInf => false,
            ExtendedRational::Finite(hi) => q <= hi,
            ExtendedRational::PosInf => true,
        }
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedRational::NegInf => write!(f, "-inf"),
            ExtendedRational::Finite(q) => write!(f, "{q}"),
            ExtendedRational::PosInf => write!(f, "+inf"),
        }
    }
}

impl Serialize for ExtendedRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtendedRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        match s.as_str() {
            "-inf" => Ok(ExtendedRational::NegInf),
            "+inf" => Ok(ExtendedRational::PosInf),
            other => other
                .parse()
                .map(ExtendedRational::Finite)
                .map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_canonical_display() {
        assert_eq!("5".parse::<Rational>().unwrap().to_string(), "5");
        assert_eq!("-3/4".parse::<Rational>().unwrap().to_string(), "-3/4");
        assert_eq!("6/8".parse::<Rational>().unwrap().to_string(), "3/4");
        assert_eq!("3/-4".parse::<Rational>().unwrap().to_string(), "-3/4");
        assert_eq!("-0".parse::<Rational>().unwrap().to_string(), "0");
        assert_eq!("+7/14".parse::<Rational>().unwrap().to_string(), "1/2");
    }

    #[test]
    fn zero_denominator_is_value_error() {
        assert!(matches!("1/0".parse::<Rational>(), Err(Error::Value(_))));
    }

    #[test]
    fn malformed_inputs_rejected() {
        for bad in ["", "a", "1/2/3", "1.5", "1 /2", "0x3", "--2"] {
            assert!("Rational".parse::<u8>().is_err() || bad.parse::<Rational>().is_err());
        }
    }

    #[test]
    fn exact_arithmetic_reduces() {
        let a = Rational::ratio(1, 2);
        let b = Rational::ratio(1, 3);
        assert_eq!(&a + &b, Rational::ratio(5, 6));
        assert_eq!(&a - &b, Rational::ratio(1, 6));
        assert_eq!(&a * &b, Rational::ratio(1, 6));
        assert_eq!(a / b, Rational::ratio(3, 2));
    }

    #[test]
    fn extended_ordering() {
        let lo = ExtendedRational::NegInf;
        let mid = ExtendedRational::Finite(Rational::zero());
        let hi = ExtendedRational::PosInf;
        assert!(lo < mid && mid < hi);
        assert!(lo.le_rational(&Rational::from_int(-1_000_000)));
        assert!(hi.ge_rational(&Rational::from_int(1_000_000)));
    }

    #[test]
    fn serde_round_trip() {
        let q: Rational = "-22/7".parse().unwrap();
        let js = serde_json::to_string(&q).unwrap();
        assert_eq!(js, "\"-22/7\"");
        let back: Rational = serde_json::from_str(&js).unwrap();
        assert_eq!(back, q);
    }
}
