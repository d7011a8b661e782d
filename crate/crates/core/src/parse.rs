//! Polynomials in `x1..xn, y` with rational and root-of-unity coefficients.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' ['-'] integer)?
//! base   := rational | 'zeta(' integer ')' | var | '(' expr ')'
//! ```
//!
//! Negative exponents are accepted on constants only.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Cyc, Rat, Scalar};
use crate::series::{format_monomial, push_term, ExpVec, Weight};
use crate::solver::YPoly;

/// Exponents of `x1..xn` (without trailing zeros) and of `y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub x: Vec<u32>,
    pub y: u32,
}

impl Monomial {
    fn one() -> Self {
        Monomial {
            x: Vec::new(),
            y: 0,
        }
    }

    fn mul(&self, other: &Self) -> Self {
        let n = self.x.len().max(other.x.len());
        let x = (0..n)
            .map(|i| self.x.get(i).unwrap_or(&0) + other.x.get(i).unwrap_or(&0))
            .collect();
        Monomial {
            x,
            y: self.y + other.y,
        }
    }

    fn is_one(&self) -> bool {
        self.y == 0 && self.x.is_empty()
    }
}

type Key = (Reverse<u32>, Reverse<Vec<u32>>);

fn key(m: &Monomial) -> Key {
    (Reverse(m.y), Reverse(m.x.clone()))
}

/// An expanded polynomial, kept in canonical term order.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct PolyExpr {
    terms: BTreeMap<Key, Cyc>,
}

impl PolyExpr {
    pub fn parse(input: &str) -> Result<Self> {
        let mut p = Parser::new(input);
        let e = p.expr()?;
        p.skip_ws();
        if let Some(c) = p.peek() {
            return Err(p.error(format!("unexpected {c:?}")));
        }
        Ok(e)
    }

    pub fn constant(c: Cyc) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    pub fn monomial(mut m: Monomial, c: Cyc) -> Self {
        while m.x.last() == Some(&0) {
            m.x.pop();
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(key(&m), c);
        }
        PolyExpr { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order: descending `y` degree, then descending `x` exponents.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Cyc)> {
        self.terms.iter().map(|((Reverse(y), Reverse(x)), c)| {
            (
                Monomial {
                    x: x.clone(),
                    y: *y,
                },
                c,
            )
        })
    }

    /// Highest `x` index used.
    pub fn nvars(&self) -> usize {
        self.terms.keys().map(|k| k.1 .0.len()).max().unwrap_or(0)
    }

    pub fn y_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|k| k.0 .0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            let v = match terms.remove(k) {
                Some(v) => &v + c,
                None => c.clone(),
            };
            if !v.is_zero() {
                terms.insert(k.clone(), v);
            }
        }
        PolyExpr { terms }
    }

    pub fn neg(&self) -> Self {
        PolyExpr {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc = PolyExpr::default();
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                acc = acc.add(&PolyExpr::monomial(ma.mul(&mb), ca * cb));
            }
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = PolyExpr::constant(Cyc::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn as_constant(&self) -> Option<Cyc> {
        match self.terms.len() {
            0 => Some(Cyc::zero()),
            1 => {
                let (m, c) = self.terms().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Divides by the leading `y` coefficient, which must be a nonzero constant.
    pub fn monic(&self) -> Result<Self> {
        let d = self
            .y_degree()
            .ok_or_else(|| Error::NotMonic("the zero polynomial".into()))?;
        let lead: Vec<_> = self.terms().filter(|(m, _)| m.y == d).collect();
        if lead.len() != 1 || !lead[0].0.x.is_empty() {
            return Err(Error::NotMonic(format!(
                "the coefficient of y^{d} is not a constant"
            )));
        }
        let inv = lead[0].1.inv().expect("stored coefficients are nonzero");
        Ok(PolyExpr {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c * &inv))
                .collect(),
        })
    }

    /// Coefficients of `y^0..y^d` as exact series under `omega`.
    pub fn to_ypoly(&self, omega: &Arc<Weight>) -> Result<YPoly> {
        let n = omega.dim();
        if self.nvars() > n {
            return Err(Error::Dimension {
                expected: n,
                found: self.nvars(),
            });
        }
        let d = self
            .y_degree()
            .ok_or_else(|| Error::Invalid("the zero polynomial has no roots or values".into()))?;
        let mut coeffs = vec![Vec::new(); d as usize + 1];
        for (m, c) in self.terms() {
            let mut e = vec![0i64; n];
            for (i, &v) in m.x.iter().enumerate() {
                e[i] = v as i64;
            }
            coeffs[m.y as usize].push((ExpVec::from_ints(&e), c.clone()));
        }
        YPoly::from_exact(omega, coeffs)
    }
}

impl fmt::Display for PolyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (m, c) in self.terms() {
            let mut mono = format_monomial(&ExpVec::from_ints(
                &m.x.iter().map(|&v| v as i64).collect::<Vec<_>>(),
            ));
            let y = match m.y {
                0 => String::new(),
                1 => "y".to_string(),
                k => format!("y^{k}"),
            };
            if !y.is_empty() {
                if !mono.is_empty() {
                    mono.push('*');
                }
                mono.push_str(&y);
            }
            push_term(&mut out, c, &mono);
        }
        if out.is_empty() {
            out.push('0');
        }
        write!(f, "{out}")
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    fn error(&self, message: String) -> Error {
        let before: String = self.chars[..self.pos.min(self.chars.len())]
            .iter()
            .collect();
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Error::Parse {
            line,
            column,
            message,
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self
                .peek()
                .map_or("end of input".to_string(), |f| format!("{f:?}"));
            Err(self.error(format!("expected {c:?}, found {found}")))
        }
    }

    fn expr(&mut self) -> Result<PolyExpr> {
        let negate = self.eat('-');
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.add(&self.term()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<PolyExpr> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<PolyExpr> {
        let base = self.base()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        let start = self.pos;
        let e = self.integer()?;
        let e = e
            .to_u32()
            .filter(|&e| e <= 10_000)
            .ok_or_else(|| self.error(format!("exponent {e} is too large")))?;
        if !negative {
            return Ok(base.pow(e));
        }
        match base.as_constant() {
            Some(c) => {
                let inv = c.inv().ok_or_else(|| {
                    self.pos = start;
                    self.error("zero raised to a negative power".into())
                })?;
                Ok(PolyExpr::constant(inv).pow(e))
            }
            None => {
                self.pos = start;
                Err(self.error("negative exponent on a non-constant".into()))
            }
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            let found = self
                .peek()
                .map_or("end of input".to_string(), |f| format!("{f:?}"));
            return Err(self.error(format!("expected an integer, found {found}")));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits"))
    }

    fn base(&mut self) -> Result<PolyExpr> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let p = self.integer()?;
                let q = if self.eat('/') {
                    let at = self.pos;
                    let q = self.integer()?;
                    if q.is_zero() {
                        self.pos = at;
                        return Err(self.error("zero denominator".into()));
                    }
                    q
                } else {
                    BigInt::one()
                };
                Ok(PolyExpr::constant(Cyc::from_rat(Rat::new(p, q))))
            }
            Some(c) if c.is_ascii_alphabetic() => self.ident(),
            Some(c) => Err(self.error(format!("unexpected {c:?}"))),
            None => Err(self.error("unexpected end of input".into())),
        }
    }

    fn ident(&mut self) -> Result<PolyExpr> {
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric())
        {
            self.pos += 1;
        }
        let word: String = self.chars[start..self.pos].iter().collect();
        if word == "y" {
            return Ok(PolyExpr::monomial(Monomial { x: vec![], y: 1 }, Cyc::one()));
        }
        if word == "zeta" {
            self.expect('(')?;
            let at = self.pos;
            let m = self.integer()?;
            let m = m
                .to_u64()
                .filter(|&m| (1..=10_000).contains(&m))
                .ok_or_else(|| {
                    self.pos = at;
                    self.error(format!("unsupported root-of-unity order {m}"))
                })?;
            self.expect(')')?;
            return Ok(PolyExpr::constant(Cyc::zeta(m, 1)));
        }
        if let Some(idx) = word.strip_prefix('x') {
            if let Ok(i) = idx.parse::<usize>() {
                if (1..=64).contains(&i) && !idx.starts_with('0') {
                    let mut x = vec![0; i];
                    x[i - 1] = 1;
                    return Ok(PolyExpr::monomial(Monomial { x, y: 0 }, Cyc::one()));
                }
            }
        }
        self.pos = start;
        Err(self.error(format!("unknown identifier {word:?}")))
    }
}

/// Shorthand used by tests and the CLI.
pub fn parse_poly(input: &str) -> Result<PolyExpr> {
    PolyExpr::parse(input)
}
