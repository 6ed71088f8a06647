use num_traits::{One, Zero};

use super::{bit_size, QMatrix, Rational};
use crate::error::{Error, Result};

/// Reduces `rows` in place to reduced row echelon form and returns the pivot
/// columns in order. Pivots are chosen as the nonzero entry of smallest bit
/// size in the current column.
fn rref(rows: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..cols {
        if top == rows.len() {
            break;
        }
        let Some(best) = (top..rows.len())
            .filter(|&r| !rows[r][col].is_zero())
            .min_by_key(|&r| bit_size(&rows[r][col]))
        else {
            continue;
        };
        rows.swap(top, best);
        let inv = rows[top][col].recip();
        for e in rows[top][col..].iter_mut() {
            *e *= &inv;
        }
        let pivot_row = rows[top].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == top || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (e, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                if !p.is_zero() {
                    *e -= &f * p;
                }
            }
        }
        pivots.push(col);
        top += 1;
    }
    pivots
}

/// Exact row rank.
pub fn rank(m: &QMatrix) -> usize {
    let mut rows = m.row_vectors();
    rref(&mut rows, m.cols()).len()
}

/// Basis of the right null space `{x : M x = 0}`, one vector per free column.
pub fn kernel_basis(m: &QMatrix) -> Vec<Vec<Rational>> {
    let cols = m.cols();
    let mut rows = m.row_vectors();
    let pivots = rref(&mut rows, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (row, &p) in rows.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect()
}

/// Dimension of the span of `vectors`.
pub fn subspace_dim(vectors: &[Vec<Rational>]) -> Result<usize> {
    let Some(first) = vectors.first() else {
        return Ok(0);
    };
    let mut space = Subspace::new(first.len());
    for v in vectors {
        space.insert(v)?;
    }
    Ok(space.dim())
}

/// An incrementally built subspace of `Q^len`, kept in reduced echelon form so
/// membership and rank-increase tests cost one reduction pass.
#[derive(Clone, Debug)]
pub struct Subspace {
    len: usize,
    basis: Vec<(usize, Vec<Rational>)>,
}

impl Subspace {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            basis: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.len
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn check_len(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.len {
            return Err(Error::DimensionMismatch {
                expected: self.len,
                found: v.len(),
            });
        }
        Ok(())
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (pivot, row) in &self.basis {
            if v[*pivot].is_zero() {
                continue;
            }
            let f = v[*pivot].clone();
            for (e, b) in v.iter_mut().zip(row) {
                if !b.is_zero() {
                    *e -= &f * b;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        self.check_len(v)?;
        Ok(self.reduce(v).iter().all(Zero::is_zero))
    }

    /// Adds `v` to the span; returns true iff the dimension grew.
    pub fn insert(&mut self, v: &[Rational]) -> Result<bool> {
        self.check_len(v)?;
        let mut r = self.reduce(v);
        let Some(pivot) = r.iter().position(|e| !e.is_zero()) else {
            return Ok(false);
        };
        let inv = r[pivot].recip();
        for e in r.iter_mut() {
            *e *= &inv;
        }
        for (_, row) in self.basis.iter_mut() {
            if row[pivot].is_zero() {
                continue;
            }
            let f = row[pivot].clone();
            for (e, b) in row.iter_mut().zip(&r) {
                if !b.is_zero() {
                    *e -= &f * b;
                }
            }
        }
        self.basis.push((pivot, r));
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::int;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&QMatrix::zeros(2, 2)), 0);
        assert_eq!(rank(&QMatrix::identity(3)), 3);
        assert_eq!(rank(&QMatrix::from_i64(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&QMatrix::zeros(0, 3)), 0);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&QMatrix::identity(2)).is_empty());
        assert_eq!(kernel_basis(&QMatrix::zeros(2, 2)).len(), 2);
        let k = kernel_basis(&QMatrix::from_i64(&[&[1, 1], &[1, 1]]));
        assert_eq!(k.len(), 1);
        assert_eq!(&k[0][0], &-k[0][1].clone());
        assert!(!k[0][0].is_zero());
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = QMatrix::from_i64(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, -1, 2]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 2);
        for x in &k {
            for r in 0..m.rows() {
                let dot = m
                    .row(r)
                    .iter()
                    .zip(x)
                    .fold(Rational::zero(), |a, (p, q)| a + p * q);
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn subspace_dim_examples() {
        assert_eq!(
            subspace_dim(&[v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]).unwrap(),
            2
        );
        assert_eq!(subspace_dim(&[]).unwrap(), 0);
        assert_eq!(subspace_dim(&[v(&[1, 2, 3]), v(&[2, 4, 6])]).unwrap(), 1);
        assert_eq!(
            subspace_dim(&[v(&[1, 2]), v(&[1, 2, 3])]),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn subspace_membership() {
        let mut s = Subspace::new(3);
        assert!(s.insert(&v(&[1, 1, 0])).unwrap());
        assert!(s.insert(&v(&[0, 1, 1])).unwrap());
        assert!(s.contains(&v(&[1, 2, 1])).unwrap());
        assert!(!s.contains(&v(&[1, 0, 0])).unwrap());
        assert!(!s.insert(&v(&[2, 0, -2])).unwrap());
        assert_eq!(s.dim(), 2);
    }
}
