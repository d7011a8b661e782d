#![allow(dead_code)]

use std::sync::Arc;

use num_traits::One;
use proptest::prelude::*;
use puiseux::parse::parse_poly;
use puiseux::scalar::{int, rat};
use puiseux::solver::{expand_roots, Caps, RootExpansion, YPoly};
use puiseux::{Cyc, ExpVec, QuadReal, Series, Weight};

pub struct Fixture {
    pub omega: Arc<Weight>,
    pub f: YPoly,
    pub trunc: QuadReal,
    pub roots: Vec<RootExpansion>,
}

pub fn fixture(poly: &str, omega: &[&str], trunc: &str) -> Fixture {
    let omega = Arc::new(Weight::parse(omega).unwrap());
    let f = parse_poly(poly)
        .unwrap()
        .monic()
        .unwrap()
        .to_ypoly(&omega)
        .unwrap();
    let trunc = QuadReal::parse(trunc).unwrap();
    let roots = expand_roots(&f, &trunc, &Caps::default()).unwrap();
    Fixture {
        omega,
        f,
        trunc,
        roots,
    }
}

pub fn q(s: &str) -> QuadReal {
    QuadReal::parse(s).unwrap()
}

/// `(num, den)` pairs to an exponent vector.
pub fn ev(entries: &[(i64, i64)]) -> ExpVec {
    ExpVec::new(entries.iter().map(|&(a, b)| rat(a, b)).collect())
}

pub fn omega2() -> Arc<Weight> {
    Arc::new(Weight::parse(&["1", "sqrt(2)"]).unwrap())
}

/// Small rationals and their products with low-order roots of unity.
pub fn coeff() -> impl Strategy<Value = Cyc> {
    let r = (prop_oneof![-3i64..=-1, 1i64..=3], 1i64..=3).prop_map(|(p, d)| rat(p, d));
    (
        r,
        prop_oneof![Just(1u64), Just(3), Just(4), Just(6)],
        0i64..6,
    )
        .prop_map(|(r, m, t)| Cyc::zeta(m, t).scale(&r))
}

/// Exponents in `(1/6) Z^2` with entries in `[lo/6, 24/6]` and nonnegative weight.
pub fn exponent(lo: i64) -> impl Strategy<Value = ExpVec> {
    (lo..=24i64, lo..=24i64)
        .prop_map(|(a, b)| ExpVec::new(vec![rat(a, 6), rat(b, 6)]))
        .prop_filter("nonnegative weight", |e| {
            omega2().weight_of(e).unwrap().sign() >= 0
        })
}

pub fn trunc() -> impl Strategy<Value = QuadReal> {
    (2i64..=5, 0i64..=1).prop_map(|(a, b)| QuadReal::new(int(a), int(b), 2).unwrap())
}

pub fn series_with(lo: i64) -> impl Strategy<Value = Series> {
    (
        trunc(),
        prop::collection::vec((exponent(lo), coeff()), 0..6),
    )
        .prop_map(|(t, terms)| Series::from_terms(&omega2(), t, terms).unwrap())
}

pub fn series() -> impl Strategy<Value = Series> {
    series_with(-6)
}

/// Units: nonzero constant plus terms of positive weight.
pub fn unit() -> impl Strategy<Value = Series> {
    (coeff(), series_with(0)).prop_map(|(c, s)| {
        let terms = s
            .terms()
            .iter()
            .filter(|t| !t.exp.is_zero())
            .map(|t| (t.exp.clone(), t.coeff.clone()))
            .chain([(ExpVec::zero(2), c)]);
        Series::from_terms(&omega2(), s.trunc().clone(), terms).unwrap()
    })
}

pub fn one(t: &QuadReal) -> Series {
    Series::from_terms(&omega2(), t.clone(), [(ExpVec::zero(2), Cyc::one())]).unwrap()
}
