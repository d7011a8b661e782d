use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::{Cyc, QuadReal};
use crate::series::{ExpVec, Weight};
use crate::Series;

/// A polynomial `sum c_j y^j` with series coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct YPoly {
    omega: Arc<Weight>,
    coeffs: Vec<Series>,
    exact: bool,
}

impl YPoly {
    /// Wraps truncated coefficients `c_0..c_d`; the top one must be nonzero.
    pub fn new(coeffs: Vec<Series>) -> Result<Self> {
        let first = coeffs
            .first()
            .ok_or_else(|| Error::Invalid("polynomial has no coefficients".into()))?;
        let omega = first.omega().clone();
        if coeffs.iter().any(|c| **c.omega() != *omega) {
            return Err(Error::OmegaMismatch);
        }
        if coeffs.last().is_some_and(Series::is_zero) {
            return Err(Error::Invalid("leading y-coefficient is zero".into()));
        }
        Ok(YPoly {
            omega,
            coeffs,
            exact: false,
        })
    }

    /// A polynomial whose coefficients are known completely (finite sums).
    /// The stored bound is the largest weight present, and may be raised freely.
    pub fn from_exact(omega: &Arc<Weight>, coeffs: Vec<Vec<(ExpVec, Cyc)>>) -> Result<Self> {
        let mut top = QuadReal::zero();
        for (e, _) in coeffs.iter().flatten() {
            top = top.max(omega.weight_of(e)?);
        }
        let series = coeffs
            .into_iter()
            .map(|terms| Series::from_terms(omega, top.clone(), terms))
            .collect::<Result<Vec<_>>>()?;
        let mut p = YPoly::new(series)?;
        p.exact = true;
        Ok(p)
    }

    pub fn omega(&self) -> &Arc<Weight> {
        &self.omega
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Series] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &Series {
        &self.coeffs[j]
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// The smallest coefficient truncation bound.
    pub fn trunc(&self) -> QuadReal {
        self.coeffs
            .iter()
            .map(|c| c.trunc().clone())
            .min()
            .expect("at least one coefficient")
    }

    pub fn is_monic(&self) -> bool {
        let lead = &self.coeffs[self.degree()];
        lead.len() == 1 && lead.terms()[0].exp.is_zero() && lead.terms()[0].coeff.is_one()
    }

    /// Number of stored-zero low coefficients.
    pub fn y_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Coefficients known at least up to `bound`, then cut down to exactly `bound`.
    pub fn with_precision(&self, bound: &QuadReal) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                if self.exact {
                    Ok(c.with_trunc_unchecked(bound.clone()))
                } else {
                    c.truncate(bound).map_err(|_| {
                        Error::Precision(format!(
                            "coefficients are known up to weight {}, {} needed",
                            c.trunc(),
                            bound
                        ))
                    })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(YPoly {
            omega: self.omega.clone(),
            coeffs,
            exact: self.exact && *bound >= self.trunc(),
        })
    }

    /// Horner evaluation with truncated products.
    pub fn evaluate(&self, xi: &Series) -> Result<Series> {
        let mut acc = self.coeffs[self.degree()].clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc.checked_mul(xi)?.checked_add(c)?;
        }
        Ok(acc)
    }

    /// Multiplicity of the finite sum `xi` as a root, counting at most `upto`,
    /// with every stored term treated as exact.
    pub(crate) fn exact_root_multiplicity(&self, xi: &[(ExpVec, Cyc)], upto: usize) -> usize {
        let d = self.degree();
        let xi: Sparse = xi.iter().cloned().collect();
        let mut powers: Vec<Sparse> = vec![unit(self.omega.dim())];
        for _ in 0..d {
            let next = sparse_mul(powers.last().expect("nonempty"), &xi);
            powers.push(next);
        }
        let mut mult = 0;
        while mult < upto {
            // f^(i)(xi) / i! = sum_j binom(j, i) c_j xi^(j - i)
            let i = mult;
            let mut acc = Sparse::new();
            for j in i..=d {
                let b = Cyc::from_int(binomial(j, i) as i64);
                for t in self.coeffs[j].terms() {
                    let c = &t.coeff * &b;
                    for (e, x) in &powers[j - i] {
                        add_into(&mut acc, &t.exp + e, &c * x);
                    }
                }
            }
            if !acc.is_empty() {
                break;
            }
            mult += 1;
        }
        mult
    }
}

type Sparse = HashMap<ExpVec, Cyc>;

fn unit(n: usize) -> Sparse {
    let mut s = Sparse::new();
    s.insert(ExpVec::zero(n), Cyc::one());
    s
}

fn add_into(acc: &mut Sparse, e: ExpVec, c: Cyc) {
    match acc.get_mut(&e) {
        Some(v) => {
            *v = &*v + &c;
            if v.is_zero() {
                acc.remove(&e);
            }
        }
        None => {
            if !c.is_zero() {
                acc.insert(e, c);
            }
        }
    }
}

fn sparse_mul(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            add_into(&mut out, ea + eb, ca * cb);
        }
    }
    out
}

pub(crate) fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

impl fmt::Display for YPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let y = match j {
                0 => String::new(),
                1 => "*y".to_string(),
                _ => format!("*y^{j}"),
            };
            let body = c.to_string();
            let body = body.rsplit_once(" + O(").map_or(body.as_str(), |(b, _)| b);
            parts.push(format!("({body}){y}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}
