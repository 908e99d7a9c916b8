//! Row reduction over 𝔽_p.

use crate::scalars::Modulus;

/// An echelon basis grown one vector at a time.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    field: Modulus,
    /// Reduced rows paired with their pivot column.
    rows: Vec<(usize, Vec<u64>)>,
}

impl EchelonBasis {
    /// `p` must be prime.
    pub fn new(p: u64) -> Self {
        EchelonBasis {
            field: Modulus::prime_field(p).expect("prime"),
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [u64]) {
        let f = &self.field;
        for (pivot, row) in &self.rows {
            let c = v.get(*pivot).copied().unwrap_or(0);
            if c != 0 {
                for (a, &b) in v.iter_mut().zip(row) {
                    *a = f.sub(*a, f.mul(c, b));
                }
            }
        }
    }

    /// Adds `v` if it is independent of the current rows; returns whether
    /// the rank grew. Vectors may have different lengths (missing entries
    /// are zero).
    pub fn insert(&mut self, v: &[u64]) -> bool {
        let f = self.field;
        let width = self.rows.iter().map(|r| r.1.len()).max().unwrap_or(0).max(v.len());
        for (_, row) in &mut self.rows {
            row.resize(width, 0);
        }
        let mut v: Vec<u64> = v.iter().map(|&c| c % f.order()).collect();
        v.resize(width, 0);
        self.reduce(&mut v);
        let Some(pivot) = v.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = f.inv(v[pivot]).expect("nonzero in a field");
        for c in &mut v {
            *c = f.mul(*c, inv);
        }
        // keep earlier rows reduced against the new pivot
        for (_, row) in &mut self.rows {
            let c = row[pivot];
            if c != 0 {
                for (a, &b) in row.iter_mut().zip(&v) {
                    *a = f.sub(*a, f.mul(c, b));
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }
}

/// Rank of a matrix over 𝔽_p.
pub fn rank_mod_p(rows: &[Vec<u64>], p: u64) -> usize {
    let mut basis = EchelonBasis::new(p);
    for r in rows {
        basis.insert(r);
    }
    basis.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        assert_eq!(rank_mod_p(&[vec![1, 2], vec![2, 4]], 5), 1);
        assert_eq!(rank_mod_p(&[vec![1, 2], vec![2, 1]], 3), 1);
        assert_eq!(rank_mod_p(&[vec![1, 2], vec![2, 1]], 5), 2);
        assert_eq!(rank_mod_p(&[vec![0, 0, 0]], 2), 0);
        assert_eq!(rank_mod_p(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]], 2), 2);
        assert_eq!(rank_mod_p(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]], 3), 3);
    }

    #[test]
    fn ragged_rows() {
        let mut b = EchelonBasis::new(2);
        assert!(b.insert(&[0, 1]));
        assert!(b.insert(&[0, 1, 1]));
        assert!(!b.insert(&[0, 0, 1, 0]));
        assert!(b.insert(&[1]));
        assert_eq!(b.rank(), 3);
    }
}
