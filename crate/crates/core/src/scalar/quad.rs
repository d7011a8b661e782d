use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{format_rat, parse_rat, rat_sign, Rat};
use crate::error::{Error, Result};

const DEFAULT_RADICAND: u64 = 2;

/// A real quadratic number `a + b*sqrt(d)` with `d` squarefree and at least 2.
///
/// When `b == 0` the radicand is irrelevant and two such values compare equal
/// regardless of `d`. Mixing two different radicands with nonzero `b` is a
/// programming error and panics; session-level inputs are validated upfront.
#[derive(Clone, Debug)]
pub struct QuadReal {
    a: Rat,
    b: Rat,
    d: u64,
}

fn is_squarefree(d: u64) -> bool {
    let mut p = 2;
    while p * p <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

impl QuadReal {
    pub fn new(a: Rat, b: Rat, d: u64) -> Result<Self> {
        if d < 2 || !is_squarefree(d) {
            return Err(Error::Invalid(format!(
                "radicand {d} must be a squarefree integer >= 2"
            )));
        }
        Ok(QuadReal { a, b, d })
    }

    pub fn rational(a: Rat) -> Self {
        QuadReal {
            a,
            b: Rat::zero(),
            d: DEFAULT_RADICAND,
        }
    }

    pub fn zero() -> Self {
        Self::rational(Rat::zero())
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Same value, with the radicand set to `d` when the irrational part vanishes.
    pub fn with_radicand(mut self, d: u64) -> Self {
        if self.b.is_zero() {
            self.d = d;
        }
        self
    }

    fn radicand_with(&self, other: &Self) -> u64 {
        match (self.b.is_zero(), other.b.is_zero()) {
            (true, _) => other.d,
            (false, true) => self.d,
            (false, false) => {
                assert_eq!(
                    self.d, other.d,
                    "quadratic numbers over different fields combined"
                );
                self.d
            }
        }
    }

    /// Exact sign of `a + b*sqrt(d)`.
    pub fn sign(&self) -> i8 {
        let sa = rat_sign(&self.a);
        let sb = rat_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * Rat::from_integer(BigInt::from(self.d));
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn mul_rat(&self, r: &Rat) -> Self {
        QuadReal {
            a: &self.a * r,
            b: &self.b * r,
            d: self.d,
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Floating-point approximation for human-readable output only.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }

    /// Parses `a+b*sqrt(d)`, `a-b*sqrt(d)`, `b*sqrt(d)`, `sqrt(d)` or a plain rational.
    pub fn parse(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Invalid(format!("malformed quadratic literal {s:?}"));
        let Some(pos) = compact.find("sqrt(") else {
            return Ok(Self::rational(parse_rat(&compact)?));
        };
        let tail = &compact[pos + 5..];
        let close = tail.find(')').ok_or_else(bad)?;
        if close + 1 != tail.len() {
            return Err(bad());
        }
        let d: u64 = tail[..close].parse().map_err(|_| bad())?;
        let head = &compact[..pos];
        // head is "", "b*", "a+b*", "a-b*", "a+", "a-", "-", "+"
        let head = head.strip_suffix('*').unwrap_or(head);
        let split = head
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .last();
        let (a_str, b_str) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("", head),
        };
        let a = if a_str.is_empty() {
            Rat::zero()
        } else {
            parse_rat(a_str)?
        };
        let b = match b_str {
            "" | "+" => Rat::from_integer(1.into()),
            "-" => Rat::from_integer((-1).into()),
            other => parse_rat(other.strip_prefix('+').unwrap_or(other))?,
        };
        QuadReal::new(a, b, d)
    }

    pub(crate) fn json_parts(&self) -> (String, String, u64) {
        (format_rat(&self.a), format_rat(&self.b), self.d)
    }
}

impl PartialEq for QuadReal {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.d == other.d)
    }
}

impl Eq for QuadReal {}

impl Hash for QuadReal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
        if !self.b.is_zero() {
            self.d.hash(state);
        }
    }
}

impl PartialOrd for QuadReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadReal {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).sign().cmp(&0)
    }
}

impl Add for &QuadReal {
    type Output = QuadReal;
    fn add(self, rhs: &QuadReal) -> QuadReal {
        QuadReal {
            d: self.radicand_with(rhs),
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Sub for &QuadReal {
    type Output = QuadReal;
    fn sub(self, rhs: &QuadReal) -> QuadReal {
        QuadReal {
            d: self.radicand_with(rhs),
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl Mul for &QuadReal {
    type Output = QuadReal;
    fn mul(self, rhs: &QuadReal) -> QuadReal {
        let d = self.radicand_with(rhs);
        let dr = Rat::from_integer(BigInt::from(d));
        QuadReal {
            a: &self.a * &rhs.a + &self.b * &rhs.b * dr,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            d,
        }
    }
}

impl Neg for &QuadReal {
    type Output = QuadReal;
    fn neg(self) -> QuadReal {
        QuadReal {
            a: -&self.a,
            b: -&self.b,
            d: self.d,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QuadReal {
            type Output = QuadReal;
            fn $m(self, rhs: QuadReal) -> QuadReal {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QuadReal {
    type Output = QuadReal;
    fn neg(self) -> QuadReal {
        -&self
    }
}

impl fmt::Display for QuadReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if !self.a.is_zero() {
            write!(f, "{}", self.a)?;
            if rat_sign(&self.b) > 0 {
                write!(f, "+")?;
            }
        }
        write!(f, "{}*sqrt({})", self.b, self.d)
    }
}
