//! Non-negative exact rationals used for every mass, belief and probability.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul};
use std::str::FromStr;

use num::bigint::{BigInt, Sign};
use num::{BigRational, BigUint, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A non-negative rational number kept in lowest terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Ratio(BigRational);

impl Ratio {
    pub fn new(num: u64, den: u64) -> Result<Ratio> {
        if den == 0 {
            return Err(Error::InvalidRatio {
                num: num.to_string(),
                den: den.to_string(),
            });
        }
        Ok(Ratio(BigRational::new(num.into(), den.into())))
    }

    pub fn from_big(num: BigUint, den: BigUint) -> Result<Ratio> {
        if den.is_zero() {
            return Err(Error::InvalidRatio {
                num: num.to_string(),
                den: den.to_string(),
            });
        }
        Ok(Ratio(BigRational::new(
            BigInt::from_biguint(Sign::Plus, num),
            BigInt::from_biguint(Sign::Plus, den),
        )))
    }

    /// Wraps a signed rational; negative values are rejected.
    pub fn from_rational(value: BigRational) -> Option<Ratio> {
        if value.is_negative() {
            None
        } else {
            Some(Ratio(value))
        }
    }

    pub fn zero() -> Ratio {
        Ratio(BigRational::zero())
    }

    pub fn one() -> Ratio {
        Ratio(BigRational::one())
    }

    pub fn from_integer(n: u64) -> Ratio {
        Ratio(BigRational::from_integer(n.into()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn numer(&self) -> BigUint {
        self.0.numer().magnitude().clone()
    }

    pub fn denom(&self) -> BigUint {
        self.0.denom().magnitude().clone()
    }

    /// `(numerator, denominator)` when both fit in a `u64`.
    pub fn to_u64_parts(&self) -> Option<(u64, u64)> {
        Some((self.0.numer().to_u64()?, self.0.denom().to_u64()?))
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn into_rational(self) -> BigRational {
        self.0
    }

    /// `self - rhs`, or `None` when the result would be negative.
    pub fn checked_sub(&self, rhs: &Ratio) -> Option<Ratio> {
        Ratio::from_rational(&self.0 - &rhs.0)
    }

    /// `1 - self`, or `None` above one.
    pub fn complement(&self) -> Option<Ratio> {
        Ratio::one().checked_sub(self)
    }

    pub fn checked_div(&self, rhs: &Ratio) -> Option<Ratio> {
        if rhs.is_zero() {
            None
        } else {
            Some(Ratio(&self.0 / &rhs.0))
        }
    }

    /// `self * scale` when the product is an integer.
    pub fn scaled_count(&self, scale: &BigUint) -> Option<BigUint> {
        let scaled = &self.0 * BigRational::from_integer(BigInt::from(scale.clone()));
        if scaled.is_integer() {
            Some(scaled.to_integer().magnitude().clone())
        } else {
            None
        }
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a, I: IntoIterator<Item = &'a Ratio>>(ratios: I) -> BigUint {
    ratios
        .into_iter()
        .fold(BigUint::one(), |acc, r| acc.lcm(&r.denom()))
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            f.pad(&self.0.numer().to_string())
        } else {
            f.pad(&format!("{}/{}", self.0.numer(), self.0.denom()))
        }
    }
}

impl fmt::Debug for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `n` or `n/d`.
impl FromStr for Ratio {
    type Err = Error;

    fn from_str(s: &str) -> Result<Ratio> {
        let bad = || Error::Parse(format!("invalid ratio `{s}`"));
        let (num, den) = match s.trim().split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num: BigUint = num.parse().map_err(|_| bad())?;
        let den: BigUint = den.parse().map_err(|_| bad())?;
        Ratio::from_big(num, den)
    }
}

impl Add for Ratio {
    type Output = Ratio;
    fn add(self, rhs: Ratio) -> Ratio {
        Ratio(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Ratio> for &'a Ratio {
    type Output = Ratio;
    fn add(self, rhs: &Ratio) -> Ratio {
        Ratio(&self.0 + &rhs.0)
    }
}

impl AddAssign<&Ratio> for Ratio {
    fn add_assign(&mut self, rhs: &Ratio) {
        self.0 += &rhs.0;
    }
}

impl Mul for Ratio {
    type Output = Ratio;
    fn mul(self, rhs: Ratio) -> Ratio {
        Ratio(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a Ratio> for &'a Ratio {
    type Output = Ratio;
    fn mul(self, rhs: &Ratio) -> Ratio {
        Ratio(&self.0 * &rhs.0)
    }
}

/// Panics on a zero divisor, like integer division.
impl<'a> Div<&'a Ratio> for &'a Ratio {
    type Output = Ratio;
    fn div(self, rhs: &Ratio) -> Ratio {
        Ratio(&self.0 / &rhs.0)
    }
}

impl Sum for Ratio {
    fn sum<I: Iterator<Item = Ratio>>(iter: I) -> Ratio {
        iter.fold(Ratio::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Ratio> for Ratio {
    fn sum<I: Iterator<Item = &'a Ratio>>(iter: I) -> Ratio {
        iter.fold(Ratio::zero(), |mut a, b| {
            a += b;
            a
        })
    }
}
