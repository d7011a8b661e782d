mod common;

use std::collections::HashSet;

use common::*;
use num_traits::{One, Zero};
use proptest::prelude::*;
use puiseux::parse::{parse_poly, Monomial, PolyExpr};
use puiseux::scalar::rat;
use puiseux::semigroup::{
    orbit, partition_branches, semigroup_window, SubringSpec, DEFAULT_ORBIT_CAP,
};
use puiseux::solver::{expand_roots, Caps, YPoly};
use puiseux::{Cyc, ExpVec, QuadReal, Series};

type Sparse = std::collections::HashMap<ExpVec, Cyc>;

fn sparse_mul(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = ea + eb;
            let v = out.remove(&e).unwrap_or_else(Cyc::zero) + ca * cb;
            if !v.is_zero() {
                out.insert(e, v);
            }
        }
    }
    out
}

/// Finite sums with exponents in `(1/2) Z^2`, entries in `[0, 3/2]`, and rational coefficients.
fn half_root() -> impl Strategy<Value = Sparse> {
    let term = ((0i64..=3, 0i64..=3), prop_oneof![-2i64..=-1, 1i64..=2]);
    prop::collection::vec(term, 1..=3).prop_map(|terms| {
        let mut out = Sparse::new();
        for ((a, b), c) in terms {
            let e = ExpVec::new(vec![rat(a, 2), rat(b, 2)]);
            let v = out.remove(&e).unwrap_or_else(Cyc::zero) + Cyc::from_int(c);
            if !v.is_zero() {
                out.insert(e, v);
            }
        }
        out
    })
}

/// The product of `y - tau(r)` over the Galois orbit of `r`: an irreducible
/// polynomial with coefficients in `K[X]`.
fn orbit_poly(r: &Sparse) -> Option<YPoly> {
    let omega = omega2();
    let top = QuadReal::rational(rat(10, 1));
    let s = Series::from_terms(&omega, top.clone(), r.clone()).ok()?;
    if s.is_zero() {
        return None;
    }
    let images = orbit(&s, 2, &top, 16).ok()?;
    let mut f: Vec<Sparse> = vec![[(ExpVec::zero(2), Cyc::one())].into_iter().collect()];
    for img in images {
        let neg: Sparse = img
            .terms()
            .iter()
            .map(|t| (t.exp.clone(), -t.coeff.clone()))
            .collect();
        let mut next = vec![Sparse::new(); f.len() + 1];
        for (j, cj) in f.iter().enumerate() {
            for (e, c) in cj {
                let v = next[j + 1].remove(e).unwrap_or_else(Cyc::zero) + c.clone();
                if !v.is_zero() {
                    next[j + 1].insert(e.clone(), v);
                }
            }
            for (e, c) in sparse_mul(cj, &neg) {
                let v = next[j].remove(&e).unwrap_or_else(Cyc::zero) + c;
                if !v.is_zero() {
                    next[j].insert(e, v);
                }
            }
        }
        f = next;
    }
    YPoly::from_exact(
        &omega,
        f.into_iter().map(|c| c.into_iter().collect()).collect(),
    )
    .ok()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 150, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn windows_are_semigroup_windows(r in half_root()) {
        let Some(f) = orbit_poly(&r) else { return Ok(()); };
        let t = q("3");
        let roots = expand_roots(&f, &t, &Caps::default()).unwrap();
        let omega = omega2();
        for root in &roots {
            let w = semigroup_window(&root.series, &f, &SubringSpec::Formal, &t).unwrap();
            prop_assert!(w.values[0].is_zero());
            let weights: Vec<QuadReal> = w.values.iter().map(|v| omega.weight_of(v).unwrap()).collect();
            prop_assert!(weights.iter().all(|x| x.sign() >= 0));
            prop_assert!(weights.windows(2).all(|p| p[0] < p[1]));
            let set: HashSet<&ExpVec> = w.values.iter().collect();
            for a in &w.values {
                for b in &w.values {
                    let s = a + b;
                    if omega.weight_of(&s).unwrap() <= t {
                        prop_assert!(set.contains(&s), "{} + {} missing", a, b);
                    }
                }
            }
            for i in 0..2 {
                prop_assert!(set.contains(&ExpVec::unit(2, i)));
            }
            if let Some(lead) = root.series.leading_term() {
                prop_assert!(set.contains(&lead.exp));
            }
        }
    }

    #[test]
    fn one_branch_with_equal_windows(r in half_root()) {
        let Some(f) = orbit_poly(&r) else { return Ok(()); };
        let t = q("3");
        let roots = expand_roots(&f, &t, &Caps::default()).unwrap();
        let part = partition_branches(&roots, &t, DEFAULT_ORBIT_CAP).unwrap();
        prop_assert_eq!(part.branches.len(), 1);
        let windows: Vec<Vec<ExpVec>> = roots
            .iter()
            .map(|x| semigroup_window(&x.series, &f, &SubringSpec::Formal, &t).unwrap().values)
            .collect();
        prop_assert!(windows.windows(2).all(|p| p[0] == p[1]));
    }

    #[test]
    fn partition_is_stable_under_seed(r in half_root(), extra in half_root()) {
        // two orbits multiplied together
        let (Some(f), Some(g)) = (orbit_poly(&r), orbit_poly(&extra)) else { return Ok(()); };
        let mut coeffs = vec![Sparse::new(); f.degree() + g.degree() + 1];
        for (i, a) in f.coeffs().iter().enumerate() {
            for (j, b) in g.coeffs().iter().enumerate() {
                let sa: Sparse = a.terms().iter().map(|t| (t.exp.clone(), t.coeff.clone())).collect();
                let sb: Sparse = b.terms().iter().map(|t| (t.exp.clone(), t.coeff.clone())).collect();
                for (e, c) in sparse_mul(&sa, &sb) {
                    let v = coeffs[i + j].remove(&e).unwrap_or_else(Cyc::zero) + c;
                    if !v.is_zero() {
                        coeffs[i + j].insert(e, v);
                    }
                }
            }
        }
        let h = YPoly::from_exact(&omega2(), coeffs.into_iter().map(|c| c.into_iter().collect()).collect()).unwrap();
        let t = q("3");
        let roots = expand_roots(&h, &t, &Caps::default()).unwrap();
        let part = partition_branches(&roots, &t, DEFAULT_ORBIT_CAP).unwrap();
        let mut seen = vec![0; roots.len()];
        for b in &part.branches {
            for &m in &b.members {
                seen[m] += 1;
                let images = orbit(&roots[m].series, 2, &t, 16).unwrap();
                for img in &images {
                    prop_assert!(b.members.iter().any(|&o| roots[o].series.equal_upto(img, &t).unwrap()));
                    prop_assert_eq!(img.support(), roots[m].series.support());
                }
                for &o in &b.members {
                    prop_assert!(images.iter().any(|img| roots[o].series.equal_upto(img, &t).unwrap()));
                }
            }
        }
        prop_assert!(seen.iter().all(|&s| s == 1));
    }
}

fn poly_expr() -> impl Strategy<Value = PolyExpr> {
    let mono = (prop::collection::vec(0u32..=3, 0..=3), 0u32..=3);
    let coeff = prop::collection::vec(coeff(), 1..=2)
        .prop_map(|cs| cs.into_iter().fold(Cyc::zero(), |a, b| a + b));
    prop::collection::vec((mono, coeff), 0..6).prop_map(|terms| {
        terms
            .into_iter()
            .fold(PolyExpr::constant(Cyc::zero()), |acc, ((x, y), c)| {
                acc.add(&PolyExpr::monomial(Monomial { x, y }, c))
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn parser_round_trip(p in poly_expr()) {
        let printed = p.to_string();
        let back = parse_poly(&printed).unwrap();
        prop_assert_eq!(&back, &p, "{}", printed);
        prop_assert_eq!(back.to_string(), printed);
    }
}
