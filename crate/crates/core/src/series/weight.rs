use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::{QuadReal, Rat};

/// An exponent vector in `(1/k) Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExpVec(Vec<Rat>);

impl ExpVec {
    pub fn new(entries: Vec<Rat>) -> Self {
        ExpVec(entries)
    }

    pub fn zero(n: usize) -> Self {
        ExpVec(vec![Rat::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![Rat::zero(); n];
        v[i] = Rat::one();
        ExpVec(v)
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        ExpVec(
            entries
                .iter()
                .map(|&e| Rat::from_integer(e.into()))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Least common denominator of the entries (saturating at `u64::MAX`).
    pub fn denominator(&self) -> u64 {
        let l = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
        l.to_u64().unwrap_or(u64::MAX)
    }

    pub fn scale(&self, r: &Rat) -> ExpVec {
        ExpVec(self.0.iter().map(|e| e * r).collect())
    }

    /// `k * self` as integers; `None` unless `k` is a multiple of the denominator.
    pub fn scaled_integers(&self, k: u64) -> Option<Vec<BigInt>> {
        let kr = Rat::from_integer(k.into());
        self.0
            .iter()
            .map(|e| {
                let v = e * &kr;
                v.is_integer().then(|| v.to_integer())
            })
            .collect()
    }
}

impl Add for &ExpVec {
    type Output = ExpVec;
    fn add(self, rhs: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &ExpVec {
    type Output = ExpVec;
    fn sub(self, rhs: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &ExpVec {
    type Output = ExpVec;
    fn neg(self) -> ExpVec {
        ExpVec(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A strictly positive weight vector inducing the order `a <= b iff w.a <= w.b`.
///
/// All components share one quadratic field `Q(sqrt(d))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weight {
    comps: Vec<QuadReal>,
    radicand: u64,
}

impl Weight {
    pub fn new(comps: Vec<QuadReal>) -> Result<Self> {
        if comps.is_empty() {
            return Err(Error::Invalid("weight vector is empty".into()));
        }
        let mut radicand = None;
        for (i, c) in comps.iter().enumerate() {
            if !c.is_positive() {
                return Err(Error::NonPositiveWeight { index: i });
            }
            if !c.is_rational() {
                match radicand {
                    None => radicand = Some(c.d()),
                    Some(d) if d != c.d() => return Err(Error::QuadFieldMismatch(d, c.d())),
                    Some(_) => {}
                }
            }
        }
        let radicand = radicand.unwrap_or(2);
        let comps = comps
            .into_iter()
            .map(|c| c.with_radicand(radicand))
            .collect();
        Ok(Weight { comps, radicand })
    }

    /// Parses a list of quadratic literals such as `["1", "0+1*sqrt(2)"]`.
    pub fn parse<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        let comps = items
            .iter()
            .map(|s| QuadReal::parse(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Weight::new(comps)
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn components(&self) -> &[QuadReal] {
        &self.comps
    }

    /// A rational value lifted into this weight's quadratic field.
    pub fn quad(&self, r: Rat) -> QuadReal {
        QuadReal::rational(r).with_radicand(self.radicand)
    }

    /// `w . e`, computed exactly.
    pub fn weight_of(&self, e: &ExpVec) -> Result<QuadReal> {
        if e.dim() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                found: e.dim(),
            });
        }
        let mut acc = self.quad(Rat::zero());
        for (w, x) in self.comps.iter().zip(e.entries()) {
            if !x.is_zero() {
                acc = &acc + &w.mul_rat(x);
            }
        }
        Ok(acc)
    }

    /// Compares two exponents by weight; equal weight with distinct exponents is an error.
    pub fn cmp_exps(&self, a: &ExpVec, b: &ExpVec) -> Result<Ordering> {
        let ord = self.weight_of(a)?.cmp(&self.weight_of(b)?);
        if ord == Ordering::Equal && a != b {
            return Err(not_injective(a, b));
        }
        Ok(ord)
    }
}

pub(crate) fn not_injective(a: &ExpVec, b: &ExpVec) -> Error {
    Error::WeightNotInjective {
        a: a.to_string(),
        b: b.to_string(),
    }
}

/// Per-computation record of weights seen so far, used to detect exponents
/// that the weight vector fails to separate.
#[derive(Debug)]
pub struct WeightLog<'w> {
    omega: &'w Weight,
    seen: HashMap<QuadReal, ExpVec>,
}

impl<'w> WeightLog<'w> {
    pub fn new(omega: &'w Weight) -> Self {
        WeightLog {
            omega,
            seen: HashMap::new(),
        }
    }

    pub fn weight_of(&mut self, e: &ExpVec) -> Result<QuadReal> {
        let w = self.omega.weight_of(e)?;
        match self.seen.get(&w) {
            Some(prev) if prev != e => Err(not_injective(prev, e)),
            Some(_) => Ok(w),
            None => {
                self.seen.insert(w.clone(), e.clone());
                Ok(w)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn w(items: &[&str]) -> Weight {
        Weight::parse(items).unwrap()
    }

    #[test]
    fn weight_examples() {
        let om = w(&["1", "sqrt(2)"]);
        let e = ExpVec::new(vec![rat(1, 2), int(0)]);
        assert_eq!(om.weight_of(&e).unwrap(), QuadReal::rational(rat(1, 2)));
        assert!(om.weight_of(&ExpVec::zero(2)).unwrap().is_zero());

        let om5 = w(&["1", "sqrt(5)"]);
        let e = ExpVec::new(vec![int(-1), rat(3, 2)]);
        let v = om5.weight_of(&e).unwrap();
        assert_eq!(v, QuadReal::new(int(-1), rat(3, 2), 5).unwrap());
        assert!(v.is_positive());
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(matches!(
            Weight::parse(&["1", "-1"]),
            Err(Error::NonPositiveWeight { index: 1 })
        ));
        assert!(matches!(
            Weight::parse(&["sqrt(2)", "sqrt(3)"]),
            Err(Error::QuadFieldMismatch(2, 3))
        ));
        assert!(Weight::parse(&["1-sqrt(2)"]).is_err());
    }

    #[test]
    fn injectivity_violation_names_both_exponents() {
        let om = w(&["1", "1"]);
        let mut log = WeightLog::new(&om);
        log.weight_of(&ExpVec::from_ints(&[1, 0])).unwrap();
        log.weight_of(&ExpVec::from_ints(&[1, 0])).unwrap();
        let err = log.weight_of(&ExpVec::from_ints(&[0, 1])).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("(1, 0)") && msg.contains("(0, 1)"), "{msg}");
        assert!(om
            .cmp_exps(&ExpVec::from_ints(&[2, 0]), &ExpVec::from_ints(&[0, 2]))
            .is_err());
    }

    #[test]
    fn denominators() {
        let e = ExpVec::new(vec![rat(2, 3), rat(-1, 2)]);
        assert_eq!(e.denominator(), 6);
        assert_eq!(
            e.scaled_integers(6).unwrap(),
            vec![BigInt::from(4), BigInt::from(-3)]
        );
        assert!(e.scaled_integers(3).is_none());
    }
}
