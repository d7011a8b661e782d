use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{lcm_u64, Cyc, Rat};
use crate::error::{Error, Result};

fn legendre(j: u64, p: u64) -> i64 {
    // Euler's criterion
    let mut result = 1u64;
    let mut base = j % p;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    match result {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// `sqrt(p)` for an odd prime `p` via the quadratic Gauss sum.
fn sqrt_odd_prime(p: u64) -> Cyc {
    let mut g = Cyc::from_rat(Rat::zero());
    for j in 1..p {
        let s = legendre(j, p);
        g = &g + &Cyc::zeta(p, j as i64).scale(&Rat::from_integer(s.into()));
    }
    if p % 4 == 1 {
        g
    } else {
        // g^2 = -p, so g / zeta_4 squares to p
        &g * &Cyc::zeta(4, 3)
    }
}

/// Splits a positive integer into (square root of its largest square factor, squarefree part).
fn square_split(n: &BigInt) -> Result<(BigInt, Vec<u64>)> {
    let mut rest = n.clone();
    let mut root = BigInt::one();
    let mut primes = Vec::new();
    let mut p = 2u64;
    while BigInt::from(p) * BigInt::from(p) <= rest {
        let bp = BigInt::from(p);
        let mut e = 0u32;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            root *= bp.pow(e / 2);
            if e % 2 == 1 {
                primes.push(p);
            }
        }
        p += 1;
        if p > 1_000_000 {
            return Err(Error::Tower(format!(
                "cannot factor {n} to extract a square root"
            )));
        }
    }
    if rest > BigInt::one() {
        let p = rest
            .to_u64()
            .ok_or_else(|| Error::Tower(format!("prime factor {rest} too large")))?;
        primes.push(p);
    }
    Ok((root, primes))
}

/// A square root of the nonzero rational `r` inside some cyclotomic field,
/// together with the conductor of that field.
///
/// The root is assembled multiplicatively from the rational square part,
/// `sqrt(2) = zeta_8 + zeta_8^-1`, Gauss sums for odd primes and `zeta_4`
/// for the sign. Errors if the conductor would exceed `cap`.
pub fn sqrt_rational_in_cyclotomic(r: &Rat, cap: u64) -> Result<(Cyc, u64)> {
    if r.is_zero() {
        return Err(Error::Invalid("square root of zero requested".into()));
    }
    // sqrt(p/q) = sqrt(p*q)/q
    let num = r.numer().abs() * r.denom();
    let (root, primes) = square_split(&num)?;
    let mut conductor = 1u64;
    if r.is_negative() {
        conductor = 4;
    }
    for &p in &primes {
        let need = match p {
            2 => 8,
            p if p % 4 == 1 => p,
            p => 4 * p,
        };
        conductor = lcm_u64(conductor, need);
        if conductor > cap {
            return Err(Error::ConductorCap {
                needed: conductor,
                cap,
            });
        }
    }
    let mut s = Cyc::from_rat(Rat::new(root, r.denom().clone()));
    if r.is_negative() {
        s = &s * &Cyc::zeta(4, 1);
    }
    for &p in &primes {
        let factor = if p == 2 {
            &Cyc::zeta(8, 1) + &Cyc::zeta(8, 7)
        } else {
            sqrt_odd_prime(p)
        };
        s = &s * &factor;
    }
    let s = s.promote(conductor)?;
    Ok((s, conductor))
}

/// Exact rational `q`-th root of a positive rational, if it exists.
pub(crate) fn rational_root(r: &Rat, q: u32) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().nth_root(q);
    let d = r.denom().nth_root(q);
    if n.pow(q) == *r.numer() && d.pow(q) == *r.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn examples() {
        let (s, m) = sqrt_rational_in_cyclotomic(&int(4), 240).unwrap();
        assert_eq!((s, m), (Cyc::from_rat(int(2)), 1));

        let (s, m) = sqrt_rational_in_cyclotomic(&int(2), 240).unwrap();
        assert_eq!(m, 8);
        assert_eq!(s, &Cyc::zeta(8, 1) + &Cyc::zeta(8, 7));
        assert_eq!(&s * &s, Cyc::from_rat(int(2)));

        let (s, m) = sqrt_rational_in_cyclotomic(&int(5), 240).unwrap();
        assert_eq!(m, 5);
        let gauss = &(&Cyc::zeta(5, 1) - &Cyc::zeta(5, 2)) + &(&Cyc::zeta(5, 4) - &Cyc::zeta(5, 3));
        assert_eq!(s, gauss);
        assert_eq!(&s * &s, Cyc::from_rat(int(5)));
    }

    #[test]
    fn negative_and_fractional() {
        for r in [rat(-3, 1), rat(-1, 1), rat(7, 12), rat(-50, 9), rat(11, 1)] {
            let (s, _) = sqrt_rational_in_cyclotomic(&r, 240).unwrap();
            assert_eq!(&s * &s, Cyc::from_rat(r.clone()), "sqrt of {r}");
        }
    }

    #[test]
    fn conductor_cap_is_explicit() {
        let err = sqrt_rational_in_cyclotomic(&int(241), 240).unwrap_err();
        assert!(matches!(err, Error::ConductorCap { cap: 240, .. }));
    }

    #[test]
    fn rational_roots() {
        assert_eq!(rational_root(&rat(8, 27), 3), Some(rat(2, 3)));
        assert_eq!(rational_root(&rat(2, 1), 2), None);
    }
}
