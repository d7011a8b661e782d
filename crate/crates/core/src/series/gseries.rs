//! Truncated generalized power series ordered by a weight vector.
//!
//! A [`GSeries`] stores every term whose weight is at most its truncation
//! bound `trunc`; everything above the bound is unknown. Terms are kept
//! sorted by ascending weight, with nonzero coefficients only.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::weight::{not_injective, ExpVec, Weight};
use crate::error::{Error, Result};
use crate::scalar::{lcm_u64, Cyc, QuadReal, Rat, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Term<C> {
    pub exp: ExpVec,
    pub weight: QuadReal,
    pub coeff: C,
}

#[derive(Clone, Debug)]
pub struct GSeries<C = Cyc> {
    omega: Arc<Weight>,
    trunc: QuadReal,
    terms: Vec<Term<C>>,
}

/// `series = X^gamma * unit` with `unit` having a nonzero constant term.
#[derive(Clone, Debug)]
pub struct MonomialUnitForm<C = Cyc> {
    pub gamma: ExpVec,
    pub unit: GSeries<C>,
}

impl<C: Scalar> PartialEq for MonomialUnitForm<C> {
    fn eq(&self, other: &Self) -> bool {
        self.gamma == other.gamma && self.unit == other.unit
    }
}

impl<C: Scalar> MonomialUnitForm<C> {
    pub fn recompose(&self) -> Result<GSeries<C>> {
        self.unit.shift(&self.gamma)
    }
}

fn sort_terms<C>(omega: &Weight, mut terms: Vec<Term<C>>) -> Result<Vec<Term<C>>> {
    terms.sort_by(|a, b| a.weight.cmp(&b.weight));
    for pair in terms.windows(2) {
        if pair[0].weight == pair[1].weight {
            return Err(not_injective(&pair[0].exp, &pair[1].exp));
        }
    }
    debug_assert!(terms.iter().all(|t| t.exp.dim() == omega.dim()));
    Ok(terms)
}

impl<C: Scalar> GSeries<C> {
    /// Builds a series, combining repeated exponents and dropping zero
    /// coefficients and terms above `trunc`.
    pub fn from_terms<I>(omega: &Arc<Weight>, trunc: QuadReal, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExpVec, C)>,
    {
        let mut acc: HashMap<ExpVec, C> = HashMap::new();
        for (e, c) in terms {
            if e.dim() != omega.dim() {
                return Err(Error::Dimension {
                    expected: omega.dim(),
                    found: e.dim(),
                });
            }
            match acc.get_mut(&e) {
                Some(v) => *v = v.clone() + c,
                None => {
                    acc.insert(e, c);
                }
            }
        }
        Self::from_map(omega, trunc, acc)
    }

    fn from_map(omega: &Arc<Weight>, trunc: QuadReal, acc: HashMap<ExpVec, C>) -> Result<Self> {
        let mut out = Vec::with_capacity(acc.len());
        for (exp, coeff) in acc {
            if coeff.is_zero() {
                continue;
            }
            let weight = omega.weight_of(&exp)?;
            if weight <= trunc {
                out.push(Term { exp, weight, coeff });
            }
        }
        Ok(GSeries {
            omega: omega.clone(),
            terms: sort_terms(omega, out)?,
            trunc: trunc.with_radicand(omega.radicand()),
        })
    }

    pub fn zero(omega: &Arc<Weight>, trunc: QuadReal) -> Self {
        GSeries {
            omega: omega.clone(),
            trunc: trunc.with_radicand(omega.radicand()),
            terms: Vec::new(),
        }
    }

    pub fn constant(omega: &Arc<Weight>, trunc: QuadReal, c: C) -> Self {
        Self::monomial(omega, trunc, ExpVec::zero(omega.dim()), c)
            .expect("constant has the right dimension")
    }

    pub fn one(omega: &Arc<Weight>, trunc: QuadReal) -> Self {
        Self::constant(omega, trunc, C::one())
    }

    pub fn monomial(omega: &Arc<Weight>, trunc: QuadReal, exp: ExpVec, c: C) -> Result<Self> {
        Self::from_terms(omega, trunc, [(exp, c)])
    }

    pub fn omega(&self) -> &Arc<Weight> {
        &self.omega
    }

    pub fn trunc(&self) -> &QuadReal {
        &self.trunc
    }

    pub fn terms(&self) -> &[Term<C>] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when no term is known below the truncation bound.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &ExpVec) -> Option<&C> {
        self.terms.iter().find(|t| &t.exp == e).map(|t| &t.coeff)
    }

    pub fn support(&self) -> Vec<ExpVec> {
        self.terms.iter().map(|t| t.exp.clone()).collect()
    }

    /// Least common denominator `k` of all exponents (1 for the zero series).
    pub fn lattice_denominator(&self) -> u64 {
        self.terms
            .iter()
            .fold(1, |k, t| lcm_u64(k, t.exp.denominator()))
    }

    /// Weight of the lowest known term, or the truncation bound if there is none.
    pub(crate) fn low_weight(&self) -> QuadReal {
        self.terms
            .first()
            .map(|t| t.weight.clone())
            .unwrap_or_else(|| self.trunc.clone())
    }

    pub fn max_weight(&self) -> Option<&QuadReal> {
        self.terms.last().map(|t| &t.weight)
    }

    fn check_omega(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.omega, &other.omega) || self.omega == other.omega {
            Ok(())
        } else {
            Err(Error::OmegaMismatch)
        }
    }

    /// Coefficient-wise sum; the result is known up to the smaller bound.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_omega(other)?;
        let trunc = self.trunc.clone().min(other.trunc.clone());
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.weight.cmp(&y.weight),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            let term = match ord {
                Ordering::Less => {
                    i += 1;
                    a[i - 1].clone()
                }
                Ordering::Greater => {
                    j += 1;
                    b[j - 1].clone()
                }
                Ordering::Equal => {
                    if a[i].exp != b[j].exp {
                        return Err(not_injective(&a[i].exp, &b[j].exp));
                    }
                    let t = Term {
                        exp: a[i].exp.clone(),
                        weight: a[i].weight.clone(),
                        coeff: a[i].coeff.clone() + b[j].coeff.clone(),
                    };
                    i += 1;
                    j += 1;
                    t
                }
            };
            if term.weight > trunc {
                continue;
            }
            if !term.coeff.is_zero() {
                out.push(term);
            }
        }
        Ok(GSeries {
            omega: self.omega.clone(),
            trunc,
            terms: out,
        })
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|t| -t.coeff.clone())
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.omega, self.trunc.clone());
        }
        self.map_coeffs(|t| t.coeff.clone() * c.clone())
    }

    /// Replaces each coefficient by `f(term)`; `f` must not produce zero.
    pub(crate) fn map_coeffs(&self, mut f: impl FnMut(&Term<C>) -> C) -> Self {
        GSeries {
            omega: self.omega.clone(),
            trunc: self.trunc.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    exp: t.exp.clone(),
                    weight: t.weight.clone(),
                    coeff: f(t),
                })
                .collect(),
        }
    }

    /// Truncated product. The result bound is the smaller input bound, lowered
    /// further if an operand has lowest weight below zero.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_omega(other)?;
        let trunc = self
            .trunc
            .clone()
            .min(other.trunc.clone())
            .min(&self.trunc + &other.low_weight())
            .min(&other.trunc + &self.low_weight());
        let mut acc: HashMap<ExpVec, (QuadReal, C)> = HashMap::new();
        for x in &self.terms {
            for y in &other.terms {
                let w = &x.weight + &y.weight;
                if w > trunc {
                    break;
                }
                let e = &x.exp + &y.exp;
                let c = x.coeff.clone() * y.coeff.clone();
                match acc.get_mut(&e) {
                    Some(slot) => slot.1 = slot.1.clone() + c,
                    None => {
                        acc.insert(e, (w, c));
                    }
                }
            }
        }
        let terms = acc
            .into_iter()
            .filter(|(_, (_, c))| !c.is_zero())
            .map(|(exp, (weight, coeff))| Term { exp, weight, coeff })
            .collect();
        Ok(GSeries {
            omega: self.omega.clone(),
            terms: sort_terms(&self.omega, terms)?,
            trunc,
        })
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(&self.omega, self.trunc.clone());
        for _ in 0..e {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Multiplication by the monomial `X^gamma`; the bound shifts with it.
    pub fn shift(&self, gamma: &ExpVec) -> Result<Self> {
        let dw = self.omega.weight_of(gamma)?;
        Ok(GSeries {
            omega: self.omega.clone(),
            trunc: &self.trunc + &dw,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    exp: &t.exp + gamma,
                    weight: &t.weight + &dw,
                    coeff: t.coeff.clone(),
                })
                .collect(),
        })
    }

    /// Lowers the truncation bound, discarding terms above it.
    pub fn truncate(&self, bound: &QuadReal) -> Result<Self> {
        if *bound > self.trunc {
            return Err(Error::BoundAboveTrunc {
                bound: bound.to_string(),
                trunc: self.trunc.to_string(),
            });
        }
        Ok(self.with_trunc_unchecked(bound.clone()))
    }

    /// Sets the bound without checking that the stored terms are complete up to it.
    pub(crate) fn with_trunc_unchecked(&self, bound: QuadReal) -> Self {
        GSeries {
            omega: self.omega.clone(),
            terms: self
                .terms
                .iter()
                .filter(|t| t.weight <= bound)
                .cloned()
                .collect(),
            trunc: bound.with_radicand(self.omega.radicand()),
        }
    }

    /// The weight-minimal exponent (the valuation).
    pub fn valuation(&self) -> Result<ExpVec> {
        self.terms
            .first()
            .map(|t| t.exp.clone())
            .ok_or(Error::ZeroSeries("valuation"))
    }

    pub fn leading_term(&self) -> Option<&Term<C>> {
        self.terms.first()
    }

    pub fn factor_monomial_unit(&self) -> Result<MonomialUnitForm<C>> {
        let gamma = self
            .valuation()
            .map_err(|_| Error::ZeroSeries("monomial-unit factorization"))?;
        let unit = self.shift(&(-&gamma))?;
        Ok(MonomialUnitForm { gamma, unit })
    }

    /// Inverse of a unit `a0 (1 - r)` as `a0^-1 * sum r^m`, summed to the bound.
    pub fn unit_inverse(&self) -> Result<Self> {
        let lead = self
            .terms
            .first()
            .ok_or_else(|| Error::NotAUnit("zero series".into()))?;
        if !lead.exp.is_zero() {
            return Err(Error::NotAUnit(format!(
                "lowest term has exponent {} instead of a nonzero constant",
                lead.exp
            )));
        }
        let a0_inv = lead.coeff.inv().expect("stored coefficients are nonzero");
        let one = Self::one(&self.omega, self.trunc.clone());
        let r = one.checked_sub(&self.scale(&a0_inv))?;
        let mut sum = one.clone();
        let mut power = one;
        loop {
            power = power.checked_mul(&r)?;
            if power.is_zero() {
                break;
            }
            sum = sum.checked_add(&power)?;
        }
        Ok(sum.scale(&a0_inv))
    }

    /// Whether all terms of weight at most `bound` coincide.
    pub fn equal_upto(&self, other: &Self, bound: &QuadReal) -> Result<bool> {
        self.check_omega(other)?;
        for t in [&self.trunc, &other.trunc] {
            if bound > t {
                return Err(Error::BoundAboveTrunc {
                    bound: bound.to_string(),
                    trunc: t.to_string(),
                });
            }
        }
        let a = self.terms.iter().take_while(|t| t.weight <= *bound);
        let b = other.terms.iter().take_while(|t| t.weight <= *bound);
        Ok(a.eq(b))
    }

    /// Checks the representation invariants.
    pub fn validate(&self) -> Result<()> {
        for t in &self.terms {
            if t.coeff.is_zero() {
                return Err(Error::Invalid(format!("zero coefficient at {}", t.exp)));
            }
            if t.weight != self.omega.weight_of(&t.exp)? {
                return Err(Error::Invalid(format!("stale weight at {}", t.exp)));
            }
            if t.weight > self.trunc {
                return Err(Error::Invalid(format!("term {} above trunc", t.exp)));
            }
        }
        for pair in self.terms.windows(2) {
            if pair[0].weight >= pair[1].weight {
                return Err(Error::Invalid("terms not strictly ascending".into()));
            }
        }
        Ok(())
    }
}

impl<C: Scalar> PartialEq for GSeries<C> {
    fn eq(&self, other: &Self) -> bool {
        self.omega == other.omega && self.trunc == other.trunc && self.terms == other.terms
    }
}

fn fmt_exponent(e: &Rat) -> String {
    if e.is_integer() && !e.is_negative() {
        e.to_string()
    } else {
        format!("({e})")
    }
}

/// Writes `x1^a*x2^b`; empty for the constant monomial.
pub(crate) fn format_monomial(exp: &ExpVec) -> String {
    exp.entries()
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.is_zero())
        .map(|(i, e)| {
            if e.is_one() {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{}", i + 1, fmt_exponent(e))
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Appends `coeff*monomial` to `out` with a sign-aware separator.
pub(crate) fn push_term<C: Scalar>(out: &mut String, coeff: &C, mono: &str) {
    let (negative, mag) = match coeff.as_rat() {
        Some(r) => (r.is_negative(), Some(r.abs())),
        None => (false, None),
    };
    if out.is_empty() {
        if negative {
            out.push('-');
        }
    } else {
        out.push_str(if negative { " - " } else { " + " });
    }
    let body = match mag {
        Some(m) if m.is_one() && !mono.is_empty() => String::new(),
        Some(m) => m.to_string(),
        None => {
            let s = coeff.to_string();
            if s.contains(' ') {
                format!("({s})")
            } else {
                s
            }
        }
    };
    out.push_str(&body);
    if !body.is_empty() && !mono.is_empty() {
        out.push('*');
    }
    out.push_str(mono);
}

impl<C: Scalar> fmt::Display for GSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for t in &self.terms {
            push_term(&mut out, &t.coeff, &format_monomial(&t.exp));
        }
        if out.is_empty() {
            out.push('0');
        }
        write!(f, "{out} + O(w > {})", self.trunc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn omega(items: &[&str]) -> Arc<Weight> {
        Arc::new(Weight::parse(items).unwrap())
    }

    fn t(v: i64) -> QuadReal {
        QuadReal::rational(int(v))
    }

    fn series(om: &Arc<Weight>, trunc: i64, terms: &[(&[(i64, i64)], i64)]) -> GSeries<Rat> {
        GSeries::from_terms(
            om,
            t(trunc),
            terms.iter().map(|(e, c)| {
                (
                    ExpVec::new(e.iter().map(|&(p, q)| rat(p, q)).collect()),
                    int(*c),
                )
            }),
        )
        .unwrap()
    }

    #[test]
    fn add_examples() {
        let om = omega(&["1", "sqrt(2)"]);
        let a = series(&om, 5, &[(&[(1, 2), (0, 1)], 1)]);
        assert!(a.checked_add(&a.neg()).unwrap().is_zero());

        let b = series(
            &om,
            5,
            &[
                (&[(1, 2), (0, 1)], 1),
                (&[(0, 1), (1, 1)], 1),
                (&[(0, 1), (0, 1)], 1),
            ],
        );
        let c = series(&om, 5, &[(&[(0, 1), (1, 1)], 1)]);
        let expect = series(
            &om,
            5,
            &[
                (&[(1, 2), (0, 1)], 1),
                (&[(0, 1), (1, 1)], 2),
                (&[(0, 1), (0, 1)], 1),
            ],
        );
        assert_eq!(b.checked_add(&c).unwrap(), expect);
    }

    #[test]
    fn mul_examples() {
        let om = omega(&["1", "sqrt(2)"]);
        let a = series(&om, 5, &[(&[(1, 2), (0, 1)], 1), (&[(0, 1), (1, 2)], 1)]);
        let b = series(&om, 5, &[(&[(1, 2), (0, 1)], 1), (&[(0, 1), (1, 2)], -1)]);
        let expect = series(&om, 5, &[(&[(1, 1), (0, 1)], 1), (&[(0, 1), (1, 1)], -1)]);
        assert_eq!(a.checked_mul(&b).unwrap(), expect);
        let one = GSeries::one(&om, t(5));
        assert_eq!(a.checked_mul(&one).unwrap(), a);
    }

    #[test]
    fn mul_bound_accounts_for_negative_weights() {
        let om = omega(&["1", "sqrt(2)"]);
        let a = series(&om, 3, &[(&[(-1, 1), (1, 1)], 1)]); // weight sqrt(2) - 1 > 0
        let b = series(&om, 3, &[(&[(-2, 1), (0, 1)], 1)]); // weight -2
        let p = a.checked_mul(&b).unwrap();
        assert_eq!(*p.trunc(), t(1));
    }

    #[test]
    fn monomial_unit_examples() {
        let om = omega(&["1", "sqrt(2)"]);
        let xi = series(
            &om,
            4,
            &[
                (&[(1, 2), (0, 1)], 1),
                (&[(0, 1), (1, 1)], 1),
                (&[(0, 1), (0, 1)], 1),
            ],
        );
        let f = xi.factor_monomial_unit().unwrap();
        assert!(f.gamma.is_zero());
        assert_eq!(f.unit, xi);

        let xi = series(&om, 4, &[(&[(1, 2), (0, 1)], 1), (&[(0, 1), (1, 2)], 1)]);
        assert_eq!(
            xi.factor_monomial_unit().unwrap().gamma,
            ExpVec::new(vec![rat(1, 2), int(0)])
        );
        let om2 = omega(&["sqrt(2)", "1"]);
        let xi = series(&om2, 4, &[(&[(1, 2), (0, 1)], 1), (&[(0, 1), (1, 2)], 1)]);
        let form = xi.factor_monomial_unit().unwrap();
        assert_eq!(form.gamma, ExpVec::new(vec![int(0), rat(1, 2)]));
        assert_eq!(form.recompose().unwrap(), xi);
        assert!(GSeries::<Rat>::zero(&om, t(1))
            .factor_monomial_unit()
            .is_err());
    }

    #[test]
    fn unit_inverse_examples() {
        let om = omega(&["1"]);
        let u = series(&om, 4, &[(&[(0, 1)], 1), (&[(1, 1)], -1)]);
        let inv = u.unit_inverse().unwrap();
        let geometric = series(
            &om,
            4,
            &[
                (&[(0, 1)], 1),
                (&[(1, 1)], 1),
                (&[(2, 1)], 1),
                (&[(3, 1)], 1),
                (&[(4, 1)], 1),
            ],
        );
        assert_eq!(inv, geometric);
        let two = series(&om, 4, &[(&[(0, 1)], 2)]);
        assert_eq!(two.unit_inverse().unwrap().terms()[0].coeff, rat(1, 2));
        let not_unit = series(&om, 4, &[(&[(1, 1)], 2)]);
        assert!(matches!(not_unit.unit_inverse(), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn equal_upto_examples() {
        let om = omega(&["1", "sqrt(2)"]);
        let a = series(&om, 4, &[(&[(1, 2), (0, 1)], 1), (&[(0, 1), (1, 1)], 1)]);
        let b = series(&om, 4, &[(&[(1, 2), (0, 1)], 1)]);
        assert!(a.equal_upto(&a, &t(4)).unwrap());
        assert!(!a.equal_upto(&b, &t(2)).unwrap());
        assert!(a.equal_upto(&b, &t(1)).unwrap());
        assert!(a.equal_upto(&b, &t(5)).is_err());
    }

    #[test]
    fn display() {
        let om = omega(&["1", "sqrt(5)"]);
        let s = series(&om, 4, &[(&[(2, 3), (2, 3)], -1), (&[(-8, 3), (7, 3)], 1)]);
        assert_eq!(
            s.to_string(),
            "-x1^(2/3)*x2^(2/3) + x1^(-8/3)*x2^(7/3) + O(w > 4)"
        );
    }

    #[test]
    fn omega_mismatch() {
        let a = GSeries::<Rat>::one(&omega(&["1", "sqrt(2)"]), t(2));
        let b = GSeries::<Rat>::one(&omega(&["1", "sqrt(3)"]), t(2));
        assert_eq!(a.checked_add(&b).unwrap_err(), Error::OmegaMismatch);
    }
}
