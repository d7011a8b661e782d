//! Incremental sparse row echelon form over an exact field.
//!
//! Rows are sparse vectors whose columns are totally ordered; the leading
//! entry of a row is its smallest column. The set of pivot columns equals the
//! set of leading columns of nonzero vectors in the row span, so it does not
//! depend on insertion order.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct Echelon<K, C> {
    pivots: BTreeMap<K, Vec<(K, C)>>,
}

impl<K: Ord + Clone, C: Scalar> Default for Echelon<K, C> {
    fn default() -> Self {
        Self::new()
    }
}

/// `a - f * b` on sparse sorted rows.
fn axpy<K: Ord + Clone, C: Scalar>(a: &[(K, C)], f: &C, b: &[(K, C)]) -> Vec<(K, C)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => std::cmp::Ordering::Less,
            _ => std::cmp::Ordering::Greater,
        };
        match take_a {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push((b[j].0.clone(), -(f.clone() * b[j].1.clone())));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let v = a[i].1.clone() - f.clone() * b[j].1.clone();
                if !v.is_zero() {
                    out.push((a[i].0.clone(), v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

impl<K: Ord + Clone, C: Scalar> Echelon<K, C> {
    pub fn new() -> Self {
        Echelon {
            pivots: BTreeMap::new(),
        }
    }

    /// Reduces `row` against the basis and adds it if independent.
    /// Returns the new pivot column, if any.
    pub fn insert(&mut self, row: Vec<(K, C)>) -> Option<K> {
        let mut row: Vec<(K, C)> = row.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        row.sort_by(|a, b| a.0.cmp(&b.0));
        loop {
            let (lead, lc) = row.first()?.clone();
            match self.pivots.get(&lead) {
                Some(p) => row = axpy(&row, &lc, p),
                None => {
                    let inv = lc.inv().expect("nonzero leading entry");
                    let row = row.into_iter().map(|(k, c)| (k, c * inv.clone())).collect();
                    self.pivots.insert(lead.clone(), row);
                    return Some(lead);
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Pivot columns in ascending order.
    pub fn pivot_columns(&self) -> Vec<K> {
        self.pivots.keys().cloned().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rat};

    #[test]
    fn leading_columns_of_span() {
        let mut e: Echelon<u32, Rat> = Echelon::new();
        assert_eq!(e.insert(vec![(0, int(1)), (1, int(1))]), Some(0));
        assert_eq!(e.insert(vec![(0, int(1)), (2, int(1))]), Some(1));
        assert_eq!(e.insert(vec![(1, int(2)), (2, int(-2))]), None);
        assert_eq!(e.insert(vec![]), None);
        assert_eq!(e.pivot_columns(), vec![0, 1]);
    }
}
