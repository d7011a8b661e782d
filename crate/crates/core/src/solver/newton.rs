//! Initial exponents from the lower hull of the valuation points `(j, w(nu(c_j)))`.

use num_traits::Zero;

use super::ypoly::YPoly;
use crate::error::Result;
use crate::scalar::{int, rat, Cyc, QuadReal};
use crate::series::{ExpVec, Weight};
use crate::unipoly::UniPoly;
use crate::Series;

/// Every `(alpha, j)` with `alpha` in the support of `c_j`.
pub fn support_points(f: &YPoly) -> Vec<(ExpVec, usize)> {
    f.coeffs()
        .iter()
        .enumerate()
        .flat_map(|(j, c)| c.terms().iter().map(move |t| (t.exp.clone(), j)))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct NewtonCandidate {
    pub gamma: ExpVec,
    pub weight: QuadReal,
    /// Support points `(alpha, j)` with `alpha + j*gamma` minimal.
    pub face: Vec<(ExpVec, usize)>,
    /// `sum coeff(alpha, j) c^j` over the face.
    pub charpoly: UniPoly<Cyc>,
}

/// All initial exponents of roots of `f`, ascending by weight.
pub fn initial_candidates(f: &YPoly) -> Result<Vec<NewtonCandidate>> {
    let edges = lower_edges(f.omega(), f.coeffs(), f.degree())?;
    Ok(edges
        .into_iter()
        .map(|e| {
            let mut coeffs = vec![Cyc::zero(); e.lo];
            coeffs.extend(e.charpoly.coeffs().iter().cloned());
            NewtonCandidate {
                face: e.face,
                gamma: e.gamma,
                weight: e.weight,
                charpoly: UniPoly::new(coeffs),
            }
        })
        .collect())
}

#[derive(Clone, Debug)]
pub(crate) struct Edge {
    pub gamma: ExpVec,
    pub weight: QuadReal,
    /// The common value `alpha + j*gamma` along the face.
    pub delta: ExpVec,
    pub lo: usize,
    pub hi: usize,
    pub face: Vec<(ExpVec, usize)>,
    /// Face polynomial divided by `c^lo`.
    pub charpoly: UniPoly<Cyc>,
}

struct Point<'a> {
    j: usize,
    v: QuadReal,
    nu: &'a ExpVec,
    lc: &'a Cyc,
}

/// `(b - a) x (c - a)` sign for the lower hull.
fn turn(a: &Point, b: &Point, c: &Point) -> i8 {
    let x1 = int((b.j - a.j) as i64);
    let x2 = int((c.j - a.j) as i64);
    let lhs = (&c.v - &a.v).mul_rat(&x1);
    let rhs = (&b.v - &a.v).mul_rat(&x2);
    (&lhs - &rhs).sign()
}

/// Edges of the lower convex hull of the points with `j <= upto`, ascending by weight.
pub(crate) fn lower_edges(omega: &Weight, coeffs: &[Series], upto: usize) -> Result<Vec<Edge>> {
    let points: Vec<Point> = coeffs
        .iter()
        .enumerate()
        .take(upto + 1)
        .filter_map(|(j, c)| {
            c.leading_term().map(|t| Point {
                j,
                v: t.weight.clone(),
                nu: &t.exp,
                lc: &t.coeff,
            })
        })
        .collect();
    let mut hull: Vec<usize> = Vec::new();
    for (k, p) in points.iter().enumerate() {
        while hull.len() >= 2
            && turn(
                &points[hull[hull.len() - 2]],
                &points[hull[hull.len() - 1]],
                p,
            ) <= 0
        {
            hull.pop();
        }
        hull.push(k);
    }
    let mut edges = Vec::new();
    for pair in hull.windows(2) {
        let (a, b) = (&points[pair[0]], &points[pair[1]]);
        let len = (b.j - a.j) as i64;
        let gamma = (a.nu - b.nu).scale(&rat(1, len));
        let weight = omega.weight_of(&gamma)?;
        let delta = a.nu + &gamma.scale(&int(a.j as i64));
        let level = &a.v + &weight.mul_rat(&int(a.j as i64));
        let mut face = Vec::new();
        let mut cp = vec![Cyc::zero(); b.j - a.j + 1];
        for p in points.iter().filter(|p| p.j >= a.j && p.j <= b.j) {
            if &p.v + &weight.mul_rat(&int(p.j as i64)) != level {
                continue;
            }
            let at = p.nu + &gamma.scale(&int(p.j as i64));
            omega.cmp_exps(&at, &delta)?;
            face.push((p.nu.clone(), p.j));
            cp[p.j - a.j] = p.lc.clone();
        }
        edges.push(Edge {
            gamma,
            weight,
            delta,
            lo: a.j,
            hi: b.j,
            face,
            charpoly: UniPoly::new(cp),
        });
    }
    edges.reverse();
    Ok(edges)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;

    fn ypoly(om: &Arc<Weight>, coeffs: Vec<Vec<(&[i64], i64)>>) -> YPoly {
        YPoly::from_exact(
            om,
            coeffs
                .into_iter()
                .map(|c| {
                    c.into_iter()
                        .map(|(e, k)| (ExpVec::from_ints(e), Cyc::from_int(k)))
                        .collect()
                })
                .collect(),
        )
        .unwrap()
    }

    fn cyc_poly(c: &[i64]) -> UniPoly<Cyc> {
        UniPoly::new(c.iter().map(|&x| Cyc::from_int(x)).collect())
    }

    #[test]
    fn support_examples() {
        let om = Arc::new(Weight::parse(&["1", "sqrt(5)"]).unwrap());
        let f = ypoly(
            &om,
            vec![
                vec![(&[0, 5], 1)],
                vec![],
                vec![(&[2, 2], 1)],
                vec![],
                vec![],
                vec![(&[0, 0], 1)],
            ],
        );
        let mut s = support_points(&f);
        s.sort();
        assert_eq!(
            s,
            vec![
                (ExpVec::from_ints(&[0, 0]), 5),
                (ExpVec::from_ints(&[0, 5]), 0),
                (ExpVec::from_ints(&[2, 2]), 2)
            ]
        );
    }

    #[test]
    fn quintic_candidates() {
        let om = Arc::new(Weight::parse(&["1", "sqrt(5)"]).unwrap());
        let f = ypoly(
            &om,
            vec![
                vec![(&[0, 5], 1)],
                vec![],
                vec![(&[2, 2], 1)],
                vec![],
                vec![],
                vec![(&[0, 0], 1)],
            ],
        );
        let c = initial_candidates(&f).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].gamma, ExpVec::new(vec![rat(2, 3), rat(2, 3)]));
        assert_eq!(c[0].charpoly, cyc_poly(&[0, 0, 1, 0, 0, 1]));
        assert_eq!(c[1].gamma, ExpVec::new(vec![int(-1), rat(3, 2)]));
        assert_eq!(c[1].charpoly, cyc_poly(&[1, 0, 1]));
        assert!(c[0].weight < c[1].weight);
    }

    #[test]
    fn square_root_candidate() {
        let om = Arc::new(Weight::parse(&["1"]).unwrap());
        let f = ypoly(&om, vec![vec![(&[1], -1)], vec![], vec![(&[0], 1)]]);
        let c = initial_candidates(&f).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].gamma, ExpVec::new(vec![rat(1, 2)]));
        assert_eq!(c[0].charpoly, cyc_poly(&[-1, 0, 1]));
    }

    #[test]
    fn dominant_y_squared() {
        // z^2 - (x + y^2) under (4, sqrt 2)
        let om = Arc::new(Weight::parse(&["4", "sqrt(2)"]).unwrap());
        let f = ypoly(
            &om,
            vec![
                vec![(&[1, 0], -1), (&[0, 2], -1)],
                vec![],
                vec![(&[0, 0], 1)],
            ],
        );
        let c = initial_candidates(&f).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].gamma, ExpVec::from_ints(&[0, 1]));
        assert_eq!(c[0].charpoly, cyc_poly(&[-1, 0, 1]));
    }
}
