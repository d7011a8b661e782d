use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::echelon::Echelon;
use crate::error::{Error, Result};
use crate::scalar::{format_rat, Cyc, QuadReal, Rat};
use crate::series::{QuadJson, Weight};
use crate::solver::{RootExpansion, YPoly};
use crate::{ExpVec, Series};

use super::branches::Branch;

/// The coefficient ring `A`: formal power series, or series supported on a cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubringSpec {
    Formal,
    Cone(Vec<Vec<i64>>),
}

impl SubringSpec {
    /// `formal`, or `cone:g1;g2;...` with comma-separated integer entries.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "formal" {
            return Ok(SubringSpec::Formal);
        }
        let Some(body) = s.strip_prefix("cone:") else {
            return Err(Error::Invalid(format!("unknown subring {s:?}")));
        };
        let gens = body
            .split(';')
            .map(|g| {
                g.split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<i64>()
                            .map_err(|_| Error::Invalid(format!("bad cone generator {g:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if gens.is_empty() || gens.iter().any(|g| g.len() != gens[0].len()) {
            return Err(Error::Invalid(
                "cone generators must share one length".into(),
            ));
        }
        Ok(SubringSpec::Cone(gens))
    }

    fn check(&self, omega: &Weight) -> Result<()> {
        let SubringSpec::Cone(gens) = self else {
            return Ok(());
        };
        let n = omega.dim();
        if gens[0].len() != n {
            return Err(Error::Dimension {
                expected: n,
                found: gens[0].len(),
            });
        }
        for g in gens {
            if omega.weight_of(&ExpVec::from_ints(g))?.sign() <= 0 {
                return Err(Error::Subring(format!(
                    "generator {g:?} has nonpositive weight"
                )));
            }
        }
        for i in 0..n {
            if !self.contains(&ExpVec::unit(n, i)) {
                return Err(Error::Subring(format!(
                    "cone does not contain the unit vector e{}",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    /// Whether `e` is an exponent of a monomial in `A`.
    pub fn contains(&self, e: &ExpVec) -> bool {
        if e.denominator() != 1 {
            return false;
        }
        match self {
            SubringSpec::Formal => e.entries().iter().all(|x| !x.is_negative()),
            SubringSpec::Cone(gens) => in_cone(gens, e.entries()),
        }
    }

    /// All exponents of `A` with weight at most `bound`.
    fn exponents(&self, omega: &Weight, bound: &QuadReal) -> Result<Vec<ExpVec>> {
        let n = omega.dim();
        let comps: Vec<f64> = omega.components().iter().map(QuadReal::to_f64).collect();
        let b = bound.to_f64();
        let radius: Vec<i64> = match self {
            SubringSpec::Formal => comps.iter().map(|w| (b / w).floor() as i64 + 1).collect(),
            SubringSpec::Cone(gens) => (0..n)
                .map(|k| {
                    let r: f64 = gens
                        .iter()
                        .map(|g| {
                            let wg: f64 = g.iter().zip(&comps).map(|(x, w)| *x as f64 * w).sum();
                            b / wg * g[k].abs() as f64
                        })
                        .sum();
                    r.ceil() as i64 + 1
                })
                .collect(),
        };
        let lo: Vec<i64> = match self {
            SubringSpec::Formal => vec![0; n],
            SubringSpec::Cone(_) => radius.iter().map(|r| -r).collect(),
        };
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            let e = ExpVec::from_ints(&cur);
            if omega.weight_of(&e)? <= *bound && self.contains(&e) {
                out.push(e);
            }
            let mut i = 0;
            while i < n && cur[i] == radius[i] {
                cur[i] = lo[i];
                i += 1;
            }
            if i == n {
                break;
            }
            cur[i] += 1;
        }
        Ok(out)
    }
}

impl fmt::Display for SubringSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubringSpec::Formal => write!(f, "formal"),
            SubringSpec::Cone(gens) => {
                let g: Vec<String> = gens
                    .iter()
                    .map(|g| g.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
                    .collect();
                write!(f, "cone:{}", g.join(";"))
            }
        }
    }
}

/// Membership in the real cone spanned by `gens`: some basis drawn from
/// `gens` expresses `v` with nonnegative coordinates.
fn in_cone(gens: &[Vec<i64>], v: &[Rat]) -> bool {
    let n = v.len();
    let mut pick = Vec::with_capacity(n);
    subsets(gens, v, 0, &mut pick)
}

fn subsets(gens: &[Vec<i64>], v: &[Rat], start: usize, pick: &mut Vec<usize>) -> bool {
    if pick.len() == v.len() {
        return solve(gens, pick, v).is_some_and(|x| x.iter().all(|c| !c.is_negative()));
    }
    for i in start..gens.len() {
        pick.push(i);
        if subsets(gens, v, i + 1, pick) {
            return true;
        }
        pick.pop();
    }
    false
}

/// Solves `sum x_j gens[pick[j]] = v`; `None` when the picked vectors are dependent.
fn solve(gens: &[Vec<i64>], pick: &[usize], v: &[Rat]) -> Option<Vec<Rat>> {
    let n = v.len();
    let mut m: Vec<Vec<Rat>> = (0..n)
        .map(|r| {
            let mut row: Vec<Rat> = pick
                .iter()
                .map(|&j| Rat::from_integer(gens[j][r].into()))
                .collect();
            row.push(v[r].clone());
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        let inv = Rat::from_integer(1.into()) / m[col][col].clone();
        for x in m[col].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot).skip(col) {
                    *x -= p * &f;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Attainable values of weight at most `bound`.
#[derive(Clone, Debug, PartialEq)]
pub struct ValueWindow {
    /// Ascending in weight.
    pub values: Vec<ExpVec>,
    pub bound: QuadReal,
    /// Values that are not sums of two nonzero values of the window.
    pub generators: Vec<ExpVec>,
    pub tentative: bool,
}

#[derive(Serialize)]
struct WindowJson {
    bound: QuadJson,
    values: Vec<Vec<String>>,
    generators: Vec<Vec<String>>,
    tentative: bool,
}

fn exp_json(e: &ExpVec) -> Vec<String> {
    e.entries().iter().map(format_rat).collect()
}

impl ValueWindow {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(WindowJson {
            bound: QuadJson::from(&self.bound),
            values: self.values.iter().map(exp_json).collect(),
            generators: self.generators.iter().map(exp_json).collect(),
            tentative: self.tentative,
        })
        .expect("plain data")
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }
}

impl fmt::Display for ValueWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[ExpVec]| {
            v.iter()
                .map(ExpVec::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        };
        writeln!(f, "bound: {}", self.bound)?;
        writeln!(f, "values: {}", list(&self.values))?;
        write!(f, "generators (tentative): {}", list(&self.generators))
    }
}

/// Leading exponents of the `K`-span of `X^a xi^b`, `a` in `A`, `b < deg f`,
/// up to weight `bound`.
pub fn semigroup_window(
    xi: &Series,
    f: &YPoly,
    subring: &SubringSpec,
    bound: &QuadReal,
) -> Result<ValueWindow> {
    let omega: &Arc<Weight> = f.omega();
    if **xi.omega() != **omega {
        return Err(Error::OmegaMismatch);
    }
    subring.check(omega)?;
    let bound = bound.clone().with_radicand(omega.radicand());
    if bound.sign() < 0 {
        return Err(Error::Invalid(format!("negative window bound {bound}")));
    }
    if bound > *xi.trunc() {
        return Err(Error::BoundAboveTrunc {
            bound: bound.to_string(),
            trunc: xi.trunc().to_string(),
        });
    }
    if xi.terms().first().is_some_and(|t| t.weight.sign() < 0) {
        return Err(Error::Invalid("root has a term of negative weight".into()));
    }
    for c in f.coeffs() {
        if let Some(t) = c.terms().iter().find(|t| !subring.contains(&t.exp)) {
            return Err(Error::Subring(format!(
                "coefficient exponent {} lies outside {subring}",
                t.exp
            )));
        }
    }

    let exps = subring.exponents(omega, &bound)?;
    let xi_b = xi.truncate(&bound)?;
    let mut power = Series::one(omega, bound.clone());
    let mut ech: Echelon<(QuadReal, ExpVec), Cyc> = Echelon::new();
    for b in 0..f.degree() {
        if b > 0 {
            power = power.checked_mul(&xi_b)?;
        }
        for a in &exps {
            let wa = omega.weight_of(a)?;
            let row: Vec<((QuadReal, ExpVec), Cyc)> = power
                .terms()
                .iter()
                .map(|t| (&wa + &t.weight, t))
                .filter(|(w, _)| *w <= bound)
                .map(|(w, t)| ((w, a + &t.exp), t.coeff.clone()))
                .collect();
            ech.insert(row);
        }
    }
    let values: Vec<ExpVec> = ech.pivot_columns().into_iter().map(|(_, e)| e).collect();
    let generators = greedy_generators(&values);
    Ok(ValueWindow {
        values,
        bound,
        generators,
        tentative: true,
    })
}

fn greedy_generators(values: &[ExpVec]) -> Vec<ExpVec> {
    let set: HashSet<&ExpVec> = values.iter().collect();
    values
        .iter()
        .filter(|v| !v.is_zero())
        .filter(|v| {
            !values
                .iter()
                .any(|u| !u.is_zero() && u != *v && set.contains(&(*v - u)))
        })
        .cloned()
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairVerdict {
    pub first: usize,
    pub second: usize,
    pub equal: bool,
    /// Lowest-weight value present in only one of the two windows.
    pub discrepancy: Option<ExpVec>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvarianceReport {
    pub windows: Vec<(usize, ValueWindow)>,
    pub pairs: Vec<PairVerdict>,
}

impl InvarianceReport {
    pub fn invariant(&self) -> bool {
        self.pairs.iter().all(|p| p.equal)
    }
}

/// Windows of every member of `branch`, compared pairwise.
pub fn check_invariance(
    f: &YPoly,
    roots: &[RootExpansion],
    branch: &Branch,
    subring: &SubringSpec,
    bound: &QuadReal,
) -> Result<InvarianceReport> {
    let mut windows = Vec::new();
    for &i in &branch.members {
        let root = roots
            .get(i)
            .ok_or_else(|| Error::Invalid(format!("no root with index {i}")))?;
        windows.push((i, semigroup_window(&root.series, f, subring, bound)?));
    }
    let omega = f.omega();
    let mut pairs = Vec::new();
    for (x, (i, wi)) in windows.iter().enumerate() {
        for (j, wj) in windows.iter().skip(x + 1) {
            let a: HashSet<&ExpVec> = wi.values.iter().collect();
            let b: HashSet<&ExpVec> = wj.values.iter().collect();
            let mut diff = Vec::new();
            for e in a.symmetric_difference(&b) {
                diff.push((omega.weight_of(e)?, (*e).clone()));
            }
            diff.sort();
            pairs.push(PairVerdict {
                first: *i,
                second: *j,
                equal: diff.is_empty(),
                discrepancy: diff.into_iter().next().map(|(_, e)| e),
            });
        }
    }
    Ok(InvarianceReport { windows, pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    use crate::scalar::{int, rat};

    #[test]
    fn parse_subrings() {
        assert_eq!(SubringSpec::parse("formal").unwrap(), SubringSpec::Formal);
        let c = SubringSpec::parse("cone:1,0;-1,2").unwrap();
        assert_eq!(c, SubringSpec::Cone(vec![vec![1, 0], vec![-1, 2]]));
        assert_eq!(c.to_string(), "cone:1,0;-1,2");
        assert!(SubringSpec::parse("cone:1,0;1").is_err());
        assert!(SubringSpec::parse("ring").is_err());
    }

    #[test]
    fn cone_membership() {
        let c = SubringSpec::Cone(vec![vec![1, 0], vec![-1, 2]]);
        assert!(c.contains(&ExpVec::from_ints(&[0, 1])));
        assert!(c.contains(&ExpVec::from_ints(&[-1, 2])));
        assert!(!c.contains(&ExpVec::from_ints(&[-1, 1])));
        assert!(!c.contains(&ExpVec::new(vec![rat(1, 2), int(0)])));
    }

    #[test]
    fn cusp_window() {
        let om = Arc::new(Weight::parse(&["1"]).unwrap());
        let f = YPoly::from_exact(
            &om,
            vec![
                vec![(ExpVec::from_ints(&[3]), Cyc::from_int(-1))],
                vec![],
                vec![(ExpVec::zero(1), Cyc::one())],
            ],
        )
        .unwrap();
        let four = QuadReal::rational(int(4));
        let xi = Series::from_terms(
            &om,
            four.clone(),
            [(ExpVec::new(vec![rat(3, 2)]), Cyc::one())],
        )
        .unwrap();
        let w = semigroup_window(&xi, &f, &SubringSpec::Formal, &four).unwrap();
        let expect: Vec<ExpVec> = [0, 2, 3, 4, 5, 6, 7, 8]
            .iter()
            .map(|&k| ExpVec::new(vec![rat(k, 2)]))
            .collect();
        assert_eq!(w.values, expect);
        assert_eq!(
            w.generators,
            vec![ExpVec::from_ints(&[1]), ExpVec::new(vec![rat(3, 2)])]
        );
        let five = QuadReal::rational(int(5));
        assert!(matches!(
            semigroup_window(&xi, &f, &SubringSpec::Formal, &five),
            Err(Error::BoundAboveTrunc { .. })
        ));
        let bad = SubringSpec::Cone(vec![vec![-1]]);
        assert!(matches!(
            semigroup_window(&xi, &f, &bad, &four),
            Err(Error::Subring(_))
        ));
    }
}
