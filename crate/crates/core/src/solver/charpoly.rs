//! Nonzero roots of univariate polynomials inside the cyclotomic tower.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::scalar::{divisors, lcm_u64, sqrt_rational_in_cyclotomic, Cyc, Rat, Scalar};
use crate::unipoly::UniPoly;

/// Nonzero roots with multiplicities, sorted canonically.
///
/// Errors when some root lies outside the supported tower; no root is dropped.
pub fn charpoly_roots(p: &UniPoly<Cyc>, conductor_cap: u64) -> Result<Vec<(Cyc, usize)>> {
    if p.is_zero() {
        return Err(Error::Invalid("zero characteristic polynomial".into()));
    }
    let p = p.shift_down(p.low_order());
    let mut out = Vec::new();
    for (factor, mult) in p.squarefree() {
        for r in squarefree_roots(&factor, conductor_cap)? {
            let r = r.minimal();
            if r.conductor() > conductor_cap {
                return Err(Error::ConductorCap {
                    needed: r.conductor(),
                    cap: conductor_cap,
                });
            }
            out.push((r, mult));
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(out)
}

fn tower_error(p: &UniPoly<Cyc>) -> Error {
    Error::Tower(format!("cannot split {p}"))
}

/// Roots of a monic squarefree polynomial with nonzero constant term.
fn squarefree_roots(p: &UniPoly<Cyc>, cap: u64) -> Result<Vec<Cyc>> {
    let p = p.monic();
    let deg = p.degree().unwrap_or(0);
    if deg == 0 {
        return Ok(Vec::new());
    }
    if deg == 1 {
        return Ok(vec![-p.coeff(0)]);
    }
    let g = p
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, c)| !c.is_zero())
        .fold(0usize, |g, (i, _)| g.gcd(&i));
    if g > 1 {
        let reduced = UniPoly::new(p.coeffs().iter().step_by(g).cloned().collect());
        let mut out = Vec::new();
        for u in squarefree_roots(&reduced, cap)? {
            out.extend(binomial_roots(&u, g as u64, cap).map_err(|_| tower_error(&p))?);
        }
        return Ok(out);
    }
    if deg == 2 {
        if let Some(roots) = quadratic_roots(&p, cap)? {
            return Ok(roots);
        }
    }
    if let Some(r) = find_linear_factor(&p) {
        let rest = p.div_exact(&UniPoly::linear_root(r.clone()))?;
        let mut out = vec![r];
        out.extend(squarefree_roots(&rest, cap)?);
        return Ok(out);
    }
    Err(tower_error(&p))
}

/// `sqrt(u)` when `u = r * zeta_L^t` with `r` rational.
fn sqrt_scaled_unit(u: &Cyc, cap: u64) -> Result<Option<Cyc>> {
    let Some((r, l, t)) = u.minimal().as_scaled_root_of_unity() else {
        return Ok(None);
    };
    let (s, _) = sqrt_rational_in_cyclotomic(&r, cap)?;
    Ok(Some(&s * &Cyc::zeta(2 * l, t as i64)))
}

fn quadratic_roots(p: &UniPoly<Cyc>, cap: u64) -> Result<Option<Vec<Cyc>>> {
    let (a, b) = (p.coeff(0), p.coeff(1));
    let disc = &(&b * &b) - &a.scale(&Rat::from_integer(4.into()));
    let Some(s) = sqrt_scaled_unit(&disc, cap)? else {
        return Ok(None);
    };
    let half = Rat::new(1.into(), 2.into());
    Ok(Some(vec![
        (&(-&b) + &s).scale(&half),
        (&(-&b) - &s).scale(&half),
    ]))
}

/// All `q` solutions of `c^q = u`.
pub(crate) fn binomial_roots(u: &Cyc, q: u64, cap: u64) -> Result<Vec<Cyc>> {
    let Some((r, l, t)) = u.minimal().as_scaled_root_of_unity() else {
        return Err(Error::Tower(format!("c^{q} = {u}")));
    };
    let modulus = match crate::scalar::rational_root(&r, q as u32) {
        Some(m) => Cyc::from_rat(m),
        None => {
            let s = q
                .is_multiple_of(2)
                .then(|| crate::scalar::rational_root(&r, (q / 2) as u32))
                .flatten()
                .ok_or_else(|| Error::Tower(format!("c^{q} = {u}")))?;
            sqrt_rational_in_cyclotomic(&s, cap)?.0
        }
    };
    // zeta_L^t = zeta_{qL}^{qt}; the q-th roots are zeta_{qL}^{t + kL}.
    let big = q * l;
    if big > cap.saturating_mul(2) {
        return Err(Error::ConductorCap { needed: big, cap });
    }
    Ok((0..q)
        .map(|k| &modulus * &Cyc::zeta(big, (t + k * l) as i64))
        .collect())
}

const RATIONAL_SEARCH_LIMIT: u64 = 1_000_000_000_000;

/// Trial roots: rational-root-theorem candidates and small multiples of roots of unity.
fn find_linear_factor(p: &UniPoly<Cyc>) -> Option<Cyc> {
    let mut magnitudes: Vec<Rat> = Vec::new();
    if let Some(rats) = p
        .coeffs()
        .iter()
        .map(|c| c.as_rational())
        .collect::<Option<Vec<_>>>()
    {
        magnitudes.extend(rational_candidates(&rats));
    }
    for a in 1..=4i64 {
        for b in 1..=4i64 {
            magnitudes.push(Rat::new(a.into(), b.into()));
        }
    }
    magnitudes.sort();
    magnitudes.dedup();
    let l = p
        .coeffs()
        .iter()
        .fold(12, |acc, c| lcm_u64(acc, c.conductor()));
    let l = lcm_u64(l, 2);
    for r in &magnitudes {
        for t in 0..l {
            let cand = Cyc::zeta(l, t as i64).scale(r);
            if p.eval(&cand).is_zero() {
                return Some(cand);
            }
        }
    }
    None
}

/// Positive `p/q` with `p | a_0` and `q | a_n` after clearing denominators.
fn rational_candidates(coeffs: &[Rat]) -> Vec<Rat> {
    let den = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * &den).to_integer()).collect();
    let a0 = ints.first().map(|x| x.abs());
    let an = ints.last().map(|x| x.abs());
    let (Some(a0), Some(an)) = (a0.and_then(|x| x.to_u64()), an.and_then(|x| x.to_u64())) else {
        return Vec::new();
    };
    if a0 == 0 || a0 > RATIONAL_SEARCH_LIMIT || an > RATIONAL_SEARCH_LIMIT {
        return Vec::new();
    }
    let mut out = Vec::new();
    for p in divisors(a0) {
        for q in divisors(an) {
            out.push(Rat::new(p.into(), q.into()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn cp(c: &[i64]) -> UniPoly<Cyc> {
        UniPoly::new(c.iter().map(|&x| Cyc::from_int(x)).collect())
    }

    #[test]
    fn quintic_face() {
        // c^5 + c^2
        let roots = charpoly_roots(&cp(&[0, 0, 1, 0, 0, 1]), 240).unwrap();
        let mut expect = vec![
            (Cyc::from_int(-1), 1),
            (Cyc::zeta(6, 1), 1),
            (Cyc::zeta(6, 5), 1),
        ];
        expect.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        assert_eq!(roots, expect);
    }

    #[test]
    fn plus_minus_i() {
        let roots = charpoly_roots(&cp(&[1, 0, 1]), 240).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&(Cyc::zeta(4, 1), 1)));
        assert!(roots.contains(&(Cyc::zeta(4, 3), 1)));
    }

    #[test]
    fn double_root() {
        assert_eq!(
            charpoly_roots(&cp(&[1, -2, 1]), 240).unwrap(),
            vec![(Cyc::one(), 2)]
        );
    }

    #[test]
    fn mixed_strategies() {
        // (c - 1/2)(c - 2i)(c - zeta_3)
        let f = UniPoly::linear_root(Cyc::from_rat(rat(1, 2)))
            .mul(&UniPoly::linear_root(Cyc::zeta(4, 1).scale(&int(2))))
            .mul(&UniPoly::linear_root(Cyc::zeta(3, 1)));
        let roots = charpoly_roots(&f, 240).unwrap();
        assert_eq!(roots.len(), 3);
        for (r, m) in &roots {
            assert_eq!(*m, 1);
            assert!(f.eval(r).is_zero());
        }
        // quadratic with irrational discriminant: c^2 - 2
        let roots = charpoly_roots(&cp(&[-2, 0, 1]), 240).unwrap();
        for (r, _) in &roots {
            assert_eq!(r * r, Cyc::from_int(2));
        }
        // c^4 = 4 needs sqrt(2)
        let roots = charpoly_roots(&cp(&[-4, 0, 0, 0, 1]), 240).unwrap();
        assert_eq!(roots.len(), 4);
    }

    #[test]
    fn outside_the_tower() {
        // c^3 - c - 1 has no cyclotomic root
        let err = charpoly_roots(&cp(&[-1, -1, 0, 1]), 240).unwrap_err();
        assert!(matches!(err, Error::Tower(_)));
    }
}
