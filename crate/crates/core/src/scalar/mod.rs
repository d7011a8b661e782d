//! Exact scalar kinds: rationals, real quadratic numbers and cyclotomic numbers.
//!
//! Series coefficients are generic over [`Scalar`], a field with exact
//! equality. Two concrete coefficient fields are provided: [`Rat`] and
//! [`Cyc`] (the cyclotomic tower). Weights live in [`QuadReal`].

mod cyclo;
mod quad;
mod sqrt;

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use cyclo::{cyclotomic_poly, euler_phi, Cyc};
pub use quad::QuadReal;
pub(crate) use sqrt::rational_root;
pub use sqrt::sqrt_rational_in_cyclotomic;

/// Arbitrary-precision rational, always kept in lowest terms with positive denominator.
pub type Rat = num_rational::BigRational;

/// A field with exact arithmetic and exact equality.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn from_rat(r: Rat) -> Self;

    /// The value as a rational, if it is one.
    fn as_rat(&self) -> Option<Rat>;

    fn from_int(n: i64) -> Self {
        Self::from_rat(Rat::from_integer(BigInt::from(n)))
    }

    /// A total order used only to make outputs deterministic.
    fn canonical_cmp(&self, other: &Self) -> Ordering;

    fn checked_div(&self, other: &Self) -> Result<Self> {
        let inv = other.inv().ok_or(Error::DivisionByZero)?;
        Ok(self.clone() * inv)
    }
}

impl Scalar for Rat {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_rat(r: Rat) -> Self {
        r
    }

    fn as_rat(&self) -> Option<Rat> {
        Some(self.clone())
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

/// Formats a rational as a `"p/q"` string (denominator always present).
pub fn format_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"` or `"p"`, rejecting zero denominators.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("malformed rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rat::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(p))
        }
    }
}

pub(crate) fn rat_sign(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

pub(crate) fn lcm_u64(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

/// Divisors of `n` in ascending order.
pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_strings() {
        assert_eq!(format_rat(&rat(6, -4)), "-3/2");
        assert_eq!(format_rat(&int(3)), "3/1");
        assert_eq!(parse_rat("-3/2").unwrap(), rat(-3, 2));
        assert_eq!(parse_rat("7").unwrap(), int(7));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn divisor_list() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
    }
}
