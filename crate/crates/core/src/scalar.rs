//! Exact rational scalars.
//!
//! Every coordinate, weight and operator entry in the crate is a [`Scalar`].
//! The value is always kept in lowest terms with a positive denominator, so
//! structural equality is numeric equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// `numerator / denominator`, reduced. Fails on a zero denominator.
    pub fn new(numerator: i64, denominator: i64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(BigRational::new(
            BigInt::from(numerator),
            BigInt::from(denominator),
        )))
    }

    /// Shorthand for tests and literal tables; panics on a zero denominator.
    pub fn ratio(numerator: i64, denominator: i64) -> Self {
        Self::new(numerator, denominator).expect("nonzero denominator")
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

    pub fn is_nonnegative(&self) -> bool {
        !self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(self.0.recip()))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(&self.0 / &other.0))
    }

    pub fn pow(&self, exp: u64) -> Self {
        // Powers of a reduced fraction stay reduced.
        let e = u32::try_from(exp).expect("exponent fits in u32");
        Scalar(BigRational::new_raw(self.0.numer().pow(e), self.0.denom().pow(e)))
    }

    pub fn max(self, other: Scalar) -> Scalar {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Scalar) -> Scalar {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn signum_ordering(&self) -> Ordering {
        self.0.cmp(&BigRational::zero())
    }

    /// Lossy conversion, only for human-facing summaries.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `p` or `p/q` with optional leading minus on `p`. Decimals are
    /// rejected so that every literal is exact.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadScalar(s.to_string());
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (t, None),
        };
        let digits = |x: &str, allow_sign: bool| {
            let body = if allow_sign {
                x.strip_prefix('-').unwrap_or(x)
            } else {
                x
            };
            !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
        };
        if !digits(num, true) {
            return Err(bad());
        }
        let n: BigInt = num.parse().map_err(|_| bad())?;
        let d: BigInt = match den {
            Some(d) if digits(d, false) => d.parse().map_err(|_| bad())?,
            Some(_) => return Err(bad()),
            None => BigInt::one(),
        };
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(BigRational::new(n, d)))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(self.0.$method(&rhs.0))
            }
        }
    };
}

/// Euclid by remainders; fast when either side is small.
fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut a, mut b) = (a.abs(), b.abs());
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

// Sums and products of reduced fractions, reduced with gcds taken against
// the smaller factors only. Values like (2/3)^1000 make the generic
// full-size reduction dominate every spot check.
fn add_reduced(x: &BigRational, y: &BigRational) -> BigRational {
    let (a, b, c, d) = (x.numer(), x.denom(), y.numer(), y.denom());
    let g = gcd(b, d);
    if g.is_one() {
        return BigRational::new_raw(a * d + c * b, b * d);
    }
    let t = a * (d / &g) + c * (b / &g);
    if t.is_zero() {
        return BigRational::zero();
    }
    let g2 = gcd(&t, &g);
    BigRational::new_raw(&t / &g2, (b / &g) * (d / &g2))
}

fn mul_reduced(x: &BigRational, y: &BigRational) -> BigRational {
    let (a, b, c, d) = (x.numer(), x.denom(), y.numer(), y.denom());
    if a.is_zero() || c.is_zero() {
        return BigRational::zero();
    }
    let g1 = gcd(a, d);
    let g2 = gcd(c, b);
    BigRational::new_raw((a / &g1) * (c / &g2), (b / &g2) * (d / &g1))
}

macro_rules! reduced_binop {
    ($trait:ident, $method:ident, $f:expr) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar($f(&self.0, &rhs.0))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar($f(&self.0, &rhs.0))
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar($f(&self.0, &rhs.0))
            }
        }
    };
}

reduced_binop!(Add, add, add_reduced);
reduced_binop!(Sub, sub, |x: &BigRational, y: &BigRational| add_reduced(x, &-y));
reduced_binop!(Mul, mul, mul_reduced);

// Division by zero panics, as for the underlying rational type. Use
// `checked_div` wherever the divisor comes from input.
forward_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_normalizes() {
        // negative denominators are not part of the literal grammar
        assert!("6/-4".parse::<Scalar>().is_err());
        assert_eq!("6/4".parse::<Scalar>().unwrap(), Scalar::ratio(3, 2));
        assert_eq!("-6/4".parse::<Scalar>().unwrap().to_string(), "-3/2");
        assert_eq!("7".parse::<Scalar>().unwrap().to_string(), "7");
        assert_eq!("0/5".parse::<Scalar>().unwrap(), Scalar::zero());
    }

    #[test]
    fn rejects_decimals_and_zero_denominators() {
        assert!("0.5".parse::<Scalar>().is_err());
        assert!("1e3".parse::<Scalar>().is_err());
        assert_eq!("1/0".parse::<Scalar>(), Err(Error::DivisionByZero));
        assert!("".parse::<Scalar>().is_err());
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = Scalar::ratio(1, 3);
        let b = Scalar::ratio(2, 7);
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(Scalar::ratio(1, 2).pow(10), Scalar::ratio(1, 1024));
        assert_eq!(Scalar::ratio(2, 3).pow(0), Scalar::one());
        assert_eq!(Scalar::zero().recip(), Err(Error::DivisionByZero));
    }

    #[test]
    fn reduced_arithmetic_matches_generic() {
        let vals: Vec<Scalar> = [(0, 1), (1, 3), (-2, 7), (6, 4), (5, 1), (-9, 12), (2, 3)]
            .iter()
            .map(|&(p, q)| Scalar::ratio(p, q))
            .collect();
        for x in &vals {
            for y in &vals {
                let (xr, yr) = (&x.0, &y.0);
                for (got, want) in [(x + y, xr + yr), (x - y, xr - yr), (x * y, xr * yr)] {
                    assert_eq!(got.0.numer(), want.numer());
                    assert_eq!(got.0.denom(), want.denom());
                }
            }
        }
        let big = Scalar::ratio(2, 3).pow(500);
        let sum = &big + &Scalar::ratio(1, 6);
        assert_eq!(sum.0, &big.0 + BigRational::new(1.into(), 6.into()));
    }

    #[test]
    fn serde_uses_fraction_strings() {
        let v = serde_json::to_string(&Scalar::ratio(-5, 10)).unwrap();
        assert_eq!(v, "\"-1/2\"");
        let back: Scalar = serde_json::from_str(&v).unwrap();
        assert_eq!(back, Scalar::ratio(-1, 2));
    }
}
