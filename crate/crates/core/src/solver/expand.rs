//! Root expansion by repeated initial-term extraction and substitution
//! `y = X^gamma (c + y')`.
//!
//! A node keeps the transformed coefficients `g_0..g_d`, the size `m` of the
//! root cluster it is resolving and the weight budget `t_rel` left before the
//! global bound. Only points `j <= m` matter for the cluster, and a point whose
//! lowest weight exceeds `(m - j) * t_rel` cannot lie on a face of weight at
//! most `t_rel`, so coefficients are kept up to `m * t_rel` only.

use super::charpoly::charpoly_roots;
use super::newton::lower_edges;
use super::ypoly::{binomial, YPoly};
use crate::error::{Error, Result};
use crate::scalar::{int, Cyc, QuadReal};
use crate::series::ExpVec;
use crate::Series;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub depth: usize,
    pub denominator: u64,
    pub conductor: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            depth: 64,
            denominator: 360,
            conductor: 240,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootExpansion {
    pub series: Series,
    pub multiplicity: usize,
    /// The finite sum is an exact root.
    pub exact: bool,
}

struct Node {
    g: Vec<Series>,
    m: usize,
    t_rel: QuadReal,
    exp: ExpVec,
    partial: Vec<(ExpVec, Cyc)>,
    depth: usize,
}

struct Leaf {
    partial: Vec<(ExpVec, Cyc)>,
    multiplicity: usize,
}

/// All roots of the monic `f`, each known up to weight `trunc`.
///
/// Coefficients must be known up to `deg(f) * trunc`; exact polynomials
/// always are.
pub fn expand_roots(f: &YPoly, trunc: &QuadReal, caps: &Caps) -> Result<Vec<RootExpansion>> {
    if !f.is_monic() {
        return Err(Error::NotMonic("leading y-coefficient is not 1".into()));
    }
    if trunc.sign() < 0 {
        return Err(Error::Invalid(format!("negative truncation bound {trunc}")));
    }
    let omega = f.omega().clone();
    let trunc = trunc.clone().with_radicand(omega.radicand());
    let d = f.degree();
    let bound = trunc.mul_rat(&int(d as i64));
    let start = f.with_precision(&bound)?;
    let mut leaves = Vec::new();
    let root = Node {
        g: start.coeffs().to_vec(),
        m: d,
        t_rel: trunc.clone(),
        exp: ExpVec::zero(omega.dim()),
        partial: Vec::new(),
        depth: 0,
    };
    solve(root, caps, &mut leaves)?;

    let mut out = Vec::new();
    for leaf in leaves {
        let series = Series::from_terms(&omega, trunc.clone(), leaf.partial.iter().cloned())?;
        let exact_mult = f.exact_root_multiplicity(&leaf.partial, leaf.multiplicity);
        if exact_mult > 0 {
            out.push(RootExpansion {
                series: series.clone(),
                multiplicity: exact_mult,
                exact: true,
            });
        }
        if leaf.multiplicity > exact_mult {
            out.push(RootExpansion {
                series,
                multiplicity: leaf.multiplicity - exact_mult,
                exact: false,
            });
        }
    }
    Ok(out)
}

fn solve(node: Node, caps: &Caps, leaves: &mut Vec<Leaf>) -> Result<()> {
    let omega = node.g[0].omega().clone();
    let top = node.depth == 0;
    let mut covered = 0;
    for edge in lower_edges(&omega, &node.g, node.m)? {
        if edge.weight > node.t_rel || (!top && edge.weight.sign() <= 0) {
            continue;
        }
        if node.depth + 1 > caps.depth {
            return Err(Error::DepthCap(caps.depth));
        }
        let exp = &node.exp + &edge.gamma;
        let den = exp.denominator();
        if den > caps.denominator {
            return Err(Error::DenominatorCap {
                needed: den,
                cap: caps.denominator,
            });
        }
        let roots = charpoly_roots(&edge.charpoly, caps.conductor)?;
        let found: usize = roots.iter().map(|r| r.1).sum();
        if found != edge.hi - edge.lo {
            return Err(Error::Tower(format!("face polynomial {}", edge.charpoly)));
        }
        covered += found;
        let t_rel = &node.t_rel - &edge.weight;
        for (c, mult) in roots {
            let g = substitute(&node.g, &edge.gamma, &edge.delta, &c, mult, &t_rel)?;
            let mut partial = node.partial.clone();
            partial.push((exp.clone(), c));
            solve(
                Node {
                    g,
                    m: mult,
                    t_rel: t_rel.clone(),
                    exp: exp.clone(),
                    partial,
                    depth: node.depth + 1,
                },
                caps,
                leaves,
            )?;
        }
    }
    if covered < node.m {
        leaves.push(Leaf {
            partial: node.partial,
            multiplicity: node.m - covered,
        });
    }
    Ok(())
}

/// Coefficients of `X^-delta g(X^gamma (c + y))`, known up to `mult * t_rel`.
fn substitute(
    g: &[Series],
    gamma: &ExpVec,
    delta: &ExpVec,
    c: &Cyc,
    mult: usize,
    t_rel: &QuadReal,
) -> Result<Vec<Series>> {
    let bound = t_rel.mul_rat(&int(mult as i64));
    let shifted = g
        .iter()
        .enumerate()
        .map(|(j, gj)| {
            let s = gj.shift(&(&gamma.scale(&int(j as i64)) - delta))?;
            s.truncate(&bound).map_err(|_| {
                Error::Precision(format!(
                    "coefficient of y^{j} known up to {}, {} needed",
                    s.trunc(),
                    bound
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let d = g.len() - 1;
    let mut powers = vec![Cyc::from_int(1)];
    for _ in 0..d {
        let next = powers.last().expect("nonempty") * c;
        powers.push(next);
    }
    let omega = g[0].omega();
    (0..=d)
        .map(|i| {
            let mut acc = Series::zero(omega, bound.clone());
            for j in i..=d {
                if shifted[j].is_zero() {
                    continue;
                }
                let k = &powers[j - i] * &Cyc::from_int(binomial(j, i) as i64);
                if !k.is_zero() {
                    acc = acc.checked_add(&shifted[j].scale(&k))?;
                }
            }
            Ok(acc)
        })
        .collect()
}
