//! Arithmetic in cyclotomic fields `Q(zeta_m)`.
//!
//! An element is stored in the power basis `1, zeta, ..., zeta^(phi(m)-1)`
//! modulo the m-th cyclotomic polynomial. Binary operations on elements of
//! different conductors first promote both operands to the lcm conductor.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{divisors, lcm_u64, Rat, Scalar};
use crate::error::{Error, Result};

pub fn euler_phi(m: u64) -> u64 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn phi_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (lowest degree first) of the m-th cyclotomic polynomial,
/// obtained by dividing `x^m - 1` by `Phi_e` for every proper divisor `e`.
pub fn cyclotomic_poly(m: u64) -> Arc<Vec<i64>> {
    assert!(m >= 1, "conductor must be positive");
    if let Some(p) = phi_cache().lock().unwrap().get(&m) {
        return p.clone();
    }
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for e in divisors(m) {
        if e == m {
            continue;
        }
        num = exact_div_monic(&num, &cyclotomic_poly(e));
    }
    let arc = Arc::new(num);
    phi_cache().lock().unwrap().insert(m, arc.clone());
    arc
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = num.len() - 1 - dn;
    let mut quot = vec![0i64; qn + 1];
    for i in (0..=qn).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Reduces a dense polynomial in `zeta` modulo `Phi_m`.
fn reduce(mut poly: Vec<Rat>, m: u64) -> Vec<Rat> {
    let phi = cyclotomic_poly(m);
    let deg = phi.len() - 1;
    if poly.len() <= deg {
        poly.resize(deg, Rat::zero());
        return poly;
    }
    for i in (deg..poly.len()).rev() {
        if poly[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut poly[i], Rat::zero());
        for (j, &pj) in phi.iter().enumerate().take(deg) {
            if pj != 0 {
                poly[i - deg + j] -= &c * Rat::from_integer(BigInt::from(pj));
            }
        }
    }
    poly.truncate(deg);
    poly
}

/// An element of the cyclotomic field `Q(zeta_m)`.
#[derive(Clone, Debug)]
pub struct Cyc {
    m: u64,
    coeffs: Vec<Rat>,
}

impl Cyc {
    /// Builds from power-basis coordinates; `coeffs.len()` must equal `phi(m)`.
    pub fn new(m: u64, coeffs: Vec<Rat>) -> Result<Self> {
        if m == 0 {
            return Err(Error::Invalid("conductor must be positive".into()));
        }
        let phi = euler_phi(m) as usize;
        if coeffs.len() != phi {
            return Err(Error::Dimension {
                expected: phi,
                found: coeffs.len(),
            });
        }
        Ok(Cyc { m, coeffs })
    }

    pub fn from_rat(r: Rat) -> Self {
        Cyc {
            m: 1,
            coeffs: vec![r],
        }
    }

    /// `zeta_m^t`, with `t` taken modulo `m`.
    pub fn from_int(n: i64) -> Self {
        Cyc::from_rat(Rat::from_integer(BigInt::from(n)))
    }

    pub fn zeta(m: u64, t: i64) -> Self {
        assert!(m >= 1);
        let t = t.rem_euclid(m as i64) as usize;
        let mut poly = vec![Rat::zero(); t + 1];
        poly[t] = Rat::one();
        Cyc {
            m,
            coeffs: reduce(poly, m),
        }
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value, if this element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-expresses the element in `Q(zeta_m2)` via `zeta_m = zeta_m2^(m2/m)`.
    pub fn promote(&self, m2: u64) -> Result<Cyc> {
        if m2 == 0 || !m2.is_multiple_of(self.m) {
            return Err(Error::ConductorMismatch {
                conductor: self.m,
                target: m2,
            });
        }
        if m2 == self.m {
            return Ok(self.clone());
        }
        let step = (m2 / self.m) as usize;
        let mut poly = vec![Rat::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Ok(Cyc {
            m: m2,
            coeffs: reduce(poly, m2),
        })
    }

    fn aligned(&self, other: &Cyc) -> (Cyc, Cyc) {
        let m = lcm_u64(self.m, other.m);
        (
            self.promote(m).expect("lcm is a multiple"),
            other.promote(m).expect("lcm is a multiple"),
        )
    }

    pub fn pow(&self, e: i64) -> Result<Cyc> {
        let base = if e < 0 {
            Scalar::inv(self).ok_or(Error::DivisionByZero)?
        } else {
            self.clone()
        };
        let mut e = e.unsigned_abs();
        let mut acc = Cyc::from_rat(Rat::one());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// The same element expressed over the smallest conductor dividing `m`
    /// whose field contains it.
    pub fn minimal(&self) -> Cyc {
        if let Some(r) = self.as_rational() {
            return Cyc::from_rat(r);
        }
        for sub in divisors(self.m) {
            if sub == self.m {
                break;
            }
            if let Some(found) = self.try_demote(sub) {
                return found;
            }
        }
        self.clone()
    }

    fn try_demote(&self, sub: u64) -> Option<Cyc> {
        let cols: Vec<Vec<Rat>> = (0..euler_phi(sub) as i64)
            .map(|i| Cyc::zeta(sub, i).promote(self.m).unwrap().coeffs)
            .collect();
        let sol = solve_linear(&cols, &self.coeffs)?;
        Some(Cyc {
            m: sub,
            coeffs: sol,
        })
    }

    /// Writes the element as `r * zeta_L^t` with `r > 0` rational, if possible.
    pub fn as_scaled_root_of_unity(&self) -> Option<(Rat, u64, u64)> {
        if self.is_zero() {
            return None;
        }
        let l = if self.m % 2 == 1 { 2 * self.m } else { self.m };
        for t in 0..l {
            let y = self * &Cyc::zeta(l, -(t as i64));
            if let Some(r) = y.as_rational() {
                return Some(if r.is_negative() {
                    (-r, l, (t + l / 2) % l)
                } else {
                    (r, l, t)
                });
            }
        }
        None
    }

    fn canonical_key(&self) -> Cyc {
        self.minimal()
    }
}

/// Solves `sum_j x_j * cols[j] = rhs` exactly; `None` if inconsistent.
fn solve_linear(cols: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let rows = rhs.len();
    let ncols = cols.len();
    let mut mat: Vec<Vec<Rat>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rat> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][c].recip();
        for v in mat[r].iter_mut() {
            *v *= &inv;
        }
        let pivot = mat[r].clone();
        for (i, row) in mat.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot).skip(c) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if mat[r..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let mut sol = vec![Rat::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = mat[i][ncols].clone();
    }
    Some(sol)
}

// Dense rational polynomial helpers for the extended Euclidean algorithm.
fn trim(p: &mut Vec<Rat>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_divrem(num: &[Rat], den: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem = num.to_vec();
    trim(&mut rem);
    let dn = den.len() - 1;
    if rem.len() < den.len() {
        return (vec![Rat::zero()], rem);
    }
    let lead_inv = den[dn].recip();
    let mut quot = vec![Rat::zero(); rem.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + dn] * &lead_inv;
        if !c.is_zero() {
            for (j, dj) in den.iter().enumerate() {
                rem[i + j] -= &c * dj;
            }
        }
        quot[i] = c;
    }
    rem.truncate(dn.max(1));
    trim(&mut rem);
    (quot, rem)
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

impl Scalar for Cyc {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(Cyc::from_rat(r.recip()));
        }
        let phi: Vec<Rat> = cyclotomic_poly(self.m)
            .iter()
            .map(|&c| Rat::from_integer(BigInt::from(c)))
            .collect();
        let mut a = self.coeffs.clone();
        trim(&mut a);
        let (mut r0, mut r1) = (phi, a);
        let (mut s0, mut s1) = (vec![Rat::zero()], vec![Rat::one()]);
        while !(r1.len() == 1 && r1[0].is_zero()) {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant because Phi_m is irreducible.
        let c = r0[0].recip();
        let s: Vec<Rat> = s0.into_iter().map(|x| x * &c).collect();
        Some(Cyc {
            m: self.m,
            coeffs: reduce(s, self.m),
        })
    }

    fn from_rat(r: Rat) -> Self {
        Cyc::from_rat(r)
    }

    fn as_rat(&self) -> Option<Rat> {
        self.as_rational()
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        let a = self.canonical_key();
        let b = other.canonical_key();
        a.m.cmp(&b.m).then_with(|| a.coeffs.cmp(&b.coeffs))
    }
}

impl PartialEq for Cyc {
    fn eq(&self, other: &Self) -> bool {
        if self.m == other.m {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.aligned(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyc {}

impl Zero for Cyc {
    fn zero() -> Self {
        Cyc::from_rat(Rat::zero())
    }

    fn is_zero(&self) -> bool {
        Cyc::is_zero(self)
    }
}

impl One for Cyc {
    fn one() -> Self {
        Cyc::from_rat(Rat::one())
    }
}

impl Add for &Cyc {
    type Output = Cyc;
    fn add(self, rhs: &Cyc) -> Cyc {
        if self.m == rhs.m {
            return Cyc {
                m: self.m,
                coeffs: self
                    .coeffs
                    .iter()
                    .zip(&rhs.coeffs)
                    .map(|(a, b)| a + b)
                    .collect(),
            };
        }
        let (a, b) = self.aligned(rhs);
        &a + &b
    }
}

impl Neg for &Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        Cyc {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &Cyc {
    type Output = Cyc;
    fn sub(self, rhs: &Cyc) -> Cyc {
        self + &(-rhs)
    }
}

impl Mul for &Cyc {
    type Output = Cyc;
    fn mul(self, rhs: &Cyc) -> Cyc {
        if self.m != rhs.m {
            if self.m == 1 {
                return rhs.scale(&self.coeffs[0]);
            }
            if rhs.m == 1 {
                return self.scale(&rhs.coeffs[0]);
            }
            let (a, b) = self.aligned(rhs);
            return &a * &b;
        }
        if self.m == 1 {
            return Cyc::from_rat(&self.coeffs[0] * &rhs.coeffs[0]);
        }
        Cyc {
            m: self.m,
            coeffs: reduce(poly_mul(&self.coeffs, &rhs.coeffs), self.m),
        }
    }
}

impl Cyc {
    pub fn scale(&self, r: &Rat) -> Cyc {
        Cyc {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyc {
            type Output = Cyc;
            fn $m(self, rhs: Cyc) -> Cyc {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        -&self
    }
}

/// Renders in the polynomial-input grammar, e.g. `1/2 + 1/2*zeta(3)`.
impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let min = self.minimal();
        if let Some(r) = min.as_rational() {
            return write!(f, "{r}");
        }
        if let Some((r, l, t)) = min.as_scaled_root_of_unity() {
            let unit = match t {
                1 => format!("zeta({l})"),
                _ => format!("zeta({l})^{t}"),
            };
            return if r.is_one() {
                write!(f, "{unit}")
            } else {
                write!(f, "{r}*{unit}")
            };
        }
        let mut first = true;
        for (i, c) in min.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let unit = match i {
                0 => String::new(),
                1 => format!("zeta({})", min.m),
                _ => format!("zeta({})^{}", min.m, i),
            };
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "{unit}")?,
                (_, false) => write!(f, "{mag}*{unit}")?,
            }
        }
        Ok(())
    }
}
