//! JSON form of cyclotomic series; rationals are written as `"p/q"` strings.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::gseries::GSeries;
use super::weight::{ExpVec, Weight};
use crate::error::{Error, Result};
use crate::scalar::{format_rat, parse_rat, Cyc, QuadReal};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct QuadJson {
    pub a: String,
    pub b: String,
    pub d: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CycJson {
    pub m: u64,
    pub coeffs: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TermJson {
    pub exp: Vec<String>,
    pub coeff: CycJson,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SeriesJson {
    pub k: u64,
    pub trunc: QuadJson,
    pub terms: Vec<TermJson>,
}

impl From<&QuadReal> for QuadJson {
    fn from(q: &QuadReal) -> Self {
        let (a, b, d) = q.json_parts();
        QuadJson { a, b, d }
    }
}

impl QuadJson {
    pub fn to_quad(&self) -> Result<QuadReal> {
        QuadReal::new(parse_rat(&self.a)?, parse_rat(&self.b)?, self.d)
    }
}

impl From<&Cyc> for CycJson {
    fn from(c: &Cyc) -> Self {
        CycJson {
            m: c.conductor(),
            coeffs: c.coeffs().iter().map(format_rat).collect(),
        }
    }
}

impl CycJson {
    pub fn to_cyc(&self) -> Result<Cyc> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|s| parse_rat(s))
            .collect::<Result<Vec<_>>>()?;
        Cyc::new(self.m, coeffs)
    }
}

impl From<&GSeries<Cyc>> for SeriesJson {
    fn from(s: &GSeries<Cyc>) -> Self {
        SeriesJson {
            k: s.lattice_denominator(),
            trunc: s.trunc().into(),
            terms: s
                .terms()
                .iter()
                .map(|t| TermJson {
                    exp: t.exp.entries().iter().map(format_rat).collect(),
                    coeff: (&t.coeff).into(),
                })
                .collect(),
        }
    }
}

impl SeriesJson {
    /// Rebuilds the series; the weight vector is not part of the format.
    pub fn to_series(&self, omega: &Arc<Weight>) -> Result<GSeries<Cyc>> {
        let trunc = self.trunc.to_quad()?;
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let exp = ExpVec::new(
                t.exp
                    .iter()
                    .map(|s| parse_rat(s))
                    .collect::<Result<Vec<_>>>()?,
            );
            if exp.scaled_integers(self.k).is_none() {
                return Err(Error::LatticeMismatch { k: self.k });
            }
            let coeff = t.coeff.to_cyc()?;
            if coeff.is_zero() {
                return Err(Error::Invalid(format!("zero coefficient at {exp}")));
            }
            terms.push((exp, coeff));
        }
        let n = terms.len();
        let s = GSeries::from_terms(omega, trunc, terms)?;
        if s.len() != n {
            return Err(Error::Invalid(
                "terms repeat an exponent or lie above trunc".into(),
            ));
        }
        Ok(s)
    }
}

impl GSeries<Cyc> {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&SeriesJson::from(self)).expect("plain data serializes")
    }

    pub fn from_json(s: &str, omega: &Arc<Weight>) -> Result<Self> {
        let dto: SeriesJson =
            serde_json::from_str(s).map_err(|e| Error::Invalid(format!("series JSON: {e}")))?;
        dto.to_series(omega)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn round_trip_is_bit_exact() {
        let om = Arc::new(Weight::parse(&["1", "sqrt(5)"]).unwrap());
        let s = GSeries::from_terms(
            &om,
            QuadReal::new(int(1), int(1), 5).unwrap(),
            [
                (ExpVec::new(vec![int(-1), rat(3, 2)]), Cyc::zeta(4, 3)),
                (
                    ExpVec::new(vec![rat(2, 3), rat(2, 3)]),
                    Cyc::from_rat(rat(-1, 3)),
                ),
            ],
        )
        .unwrap();
        let text = s.to_json();
        assert!(text.contains("\"k\":6"), "{text}");
        let back = GSeries::from_json(&text, &om).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn rejects_malformed() {
        let om = Arc::new(Weight::parse(&["1"]).unwrap());
        assert!(GSeries::from_json("{\"k\":1}", &om).is_err());
        let bad = r#"{"k":1,"trunc":{"a":"1/1","b":"0/1","d":2},"terms":[{"exp":["1/2"],"coeff":{"m":1,"coeffs":["1/1"]}}]}"#;
        assert_eq!(
            GSeries::from_json(bad, &om).unwrap_err(),
            Error::LatticeMismatch { k: 1 }
        );
    }
}
