use crate::error::{Error, Result};
use crate::scalar::{lcm_u64, QuadReal};
use crate::solver::RootExpansion;
use crate::Series;

pub const DEFAULT_ORBIT_CAP: u64 = 10_000;

/// Indices into a root list forming one Galois orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub members: Vec<usize>,
    /// Least common denominator of the members' exponents.
    pub k: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BranchPartition {
    pub branches: Vec<Branch>,
    pub warnings: Vec<String>,
}

fn all_mu(k: u64, n: usize, cap: u64) -> Result<Vec<Vec<i64>>> {
    let size = (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > cap as u128 {
        return Err(Error::OrbitCap {
            needed: size.min(u64::MAX as u128) as u64,
            cap,
        });
    }
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|mu| {
                (0..k as i64).map(move |m| {
                    let mut v = mu.clone();
                    v.push(m);
                    v
                })
            })
            .collect();
    }
    Ok(out)
}

/// The distinct images of `xi` under all `tau_mu`, `mu` in `(Z/k)^n`, compared up to `bound`.
pub fn orbit(xi: &Series, k: u64, bound: &QuadReal, orbit_cap: u64) -> Result<Vec<Series>> {
    let mut out: Vec<Series> = Vec::new();
    for mu in all_mu(k, xi.omega().dim(), orbit_cap)? {
        let image = xi.galois_apply(k, &mu)?;
        let mut fresh = true;
        for o in &out {
            if o.equal_upto(&image, bound)? {
                fresh = false;
                break;
            }
        }
        if fresh {
            out.push(image);
        }
    }
    Ok(out)
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    let mut i = i;
    while parent[i] != r {
        let next = parent[i];
        parent[i] = r;
        i = next;
    }
    r
}

/// Groups roots that some Galois map sends onto each other up to `bound`.
pub fn partition_branches(
    roots: &[RootExpansion],
    bound: &QuadReal,
    orbit_cap: u64,
) -> Result<BranchPartition> {
    let k = roots
        .iter()
        .fold(1, |k, r| lcm_u64(k, r.series.lattice_denominator()));
    let mut parent: Vec<usize> = (0..roots.len()).collect();
    let mut warnings = Vec::new();
    if let Some(first) = roots.first() {
        let mus = all_mu(k, first.series.omega().dim(), orbit_cap)?;
        for (i, ri) in roots.iter().enumerate() {
            for mu in &mus {
                let image = ri.series.galois_apply(k, mu)?;
                for (j, rj) in roots.iter().enumerate().skip(i + 1) {
                    if image.equal_upto(&rj.series, bound)? {
                        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
            for (j, rj) in roots.iter().enumerate().skip(i + 1) {
                if (!ri.exact || !rj.exact) && ri.series.equal_upto(&rj.series, bound)? {
                    warnings.push(format!(
                        "roots {i} and {j} agree up to weight {bound} and are not known exactly"
                    ));
                }
            }
        }
    }
    let mut branches: Vec<Branch> = Vec::new();
    let mut slot = vec![usize::MAX; roots.len()];
    for (i, root) in roots.iter().enumerate() {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = branches.len();
            branches.push(Branch {
                members: Vec::new(),
                k: 1,
            });
        }
        let b = &mut branches[slot[r]];
        b.members.push(i);
        b.k = lcm_u64(b.k, root.series.lattice_denominator());
    }
    Ok(BranchPartition { branches, warnings })
}
