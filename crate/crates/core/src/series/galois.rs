//! The Galois action of `mu in (Z/k)^n` on series with exponents in `(1/k) Z^n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::gseries::GSeries;
use crate::error::{Error, Result};
use crate::scalar::Cyc;

impl GSeries<Cyc> {
    /// Maps `c X^alpha` to `c zeta_k^(mu . k alpha) X^alpha`.
    pub fn galois_apply(&self, k: u64, mu: &[i64]) -> Result<Self> {
        if k == 0 {
            return Err(Error::Invalid("Galois order k must be positive".into()));
        }
        if mu.len() != self.omega().dim() {
            return Err(Error::Dimension {
                expected: self.omega().dim(),
                found: mu.len(),
            });
        }
        let kb = BigInt::from(k);
        let mut shifts = Vec::with_capacity(self.len());
        for t in self.terms() {
            let ints = t
                .exp
                .scaled_integers(k)
                .ok_or(Error::LatticeMismatch { k })?;
            let dot: BigInt = ints.iter().zip(mu).map(|(a, &m)| a * m).sum();
            shifts.push(dot.mod_floor(&kb).to_i64().expect("reduced mod k"));
        }
        let mut idx = 0;
        Ok(self.map_coeffs(|t| {
            let s = shifts[idx];
            idx += 1;
            if s == 0 {
                t.coeff.clone()
            } else {
                &t.coeff * &Cyc::zeta(k, s)
            }
        }))
    }
}
