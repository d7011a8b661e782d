//! Dense univariate polynomials over an exact field.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Coefficients in ascending degree, without trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<C> {
    coeffs: Vec<C>,
}

impl<C: Scalar> UniPoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// `c - r`
    pub fn linear_root(r: C) -> Self {
        Self::new(vec![-r, C::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn lead(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * C::from_int(i as i64))
                .collect(),
        )
    }

    /// Euclidean division `(q, r)` with `self = q * d + r`.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        let dl = d.lead().ok_or(Error::DivisionByZero)?;
        let inv = dl.inv().expect("leading coefficient is nonzero");
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![C::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].clone() * inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].clone() - c.clone() * dc.clone();
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Self::new(q), Self::new(r)))
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::Invalid("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(l) => self.scale(&l.inv().expect("nonzero")),
            None => Self::zero(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Squarefree decomposition (Yun): monic `(factor, multiplicity)` pairs
    /// with `self = lead * prod factor^multiplicity`.
    pub fn squarefree(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let g = f.gcd(&df);
        let mut c = f.div_exact(&g).expect("gcd divides");
        let mut d = df.div_exact(&g).expect("gcd divides").sub(&c.derivative());
        let mut i = 1;
        while c.degree().unwrap_or(0) > 0 {
            let a = c.gcd(&d);
            c = c.div_exact(&a).expect("gcd divides");
            d = d.div_exact(&a).expect("gcd divides").sub(&c.derivative());
            if a.degree().unwrap_or(0) > 0 {
                out.push((a, i));
            }
            i += 1;
        }
        out
    }

    /// Number of leading zero coefficients, i.e. the multiplicity of the root 0.
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides by `c^k`, assuming the low `k` coefficients vanish.
    pub fn shift_down(&self, k: usize) -> Self {
        Self::new(self.coeffs[k.min(self.coeffs.len())..].to_vec())
    }
}

impl<C: Scalar> fmt::Display for UniPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "c".to_string(),
                _ => format!("c^{i}"),
            };
            crate::series::push_term(&mut out, c, &mono);
        }
        write!(f, "{out}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rat};

    fn p(c: &[i64]) -> UniPoly<Rat> {
        UniPoly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&[1, 2, 1])), p(&[1, 1]));
        assert!(a.divrem(&UniPoly::zero()).is_err());
    }

    #[test]
    fn yun() {
        // (c-1)^2 (c+2)^3 (c^2+1)
        let f = p(&[-1, 1])
            .mul(&p(&[-1, 1]))
            .mul(&p(&[2, 1]).mul(&p(&[2, 1])).mul(&p(&[2, 1])))
            .mul(&p(&[1, 0, 1]));
        let sq = f.squarefree();
        assert_eq!(
            sq,
            vec![(p(&[1, 0, 1]), 1), (p(&[-1, 1]), 2), (p(&[2, 1]), 3)]
        );
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -2, 1]).to_string(), "c^2 - 2*c + 1");
    }
}
