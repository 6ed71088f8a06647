//! Exact linear algebra over arbitrary-precision rationals.
//!
//! Every matrix entry is a [`Rational`] in lowest terms with a positive
//! denominator, so structural equality is numerical equality.

mod linalg;
mod poly;

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use linalg::{kernel_basis, rank, subspace_dim, Subspace};
pub use poly::{char_poly, rational_roots, QPoly, RationalRoots};

/// Arbitrary-precision rational, always normalized by `num-rational`.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `"17"` or `"-3/7"`: an optional sign, digits, and an optional
/// `/denominator` with a strictly positive denominator.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::InvalidRational(text.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let is_int = |t: &str, allow_sign: bool| {
        let digits = if allow_sign {
            t.strip_prefix(['-', '+']).unwrap_or(t)
        } else {
            t
        };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !is_int(num, true) {
        return Err(bad());
    }
    let numer: BigInt = num.parse().map_err(|_| bad())?;
    let denom = match den {
        None => BigInt::one(),
        Some(d) => {
            if !is_int(d, false) {
                return Err(bad());
            }
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            d
        }
    };
    Ok(Rational::new(numer, denom))
}

/// Canonical string form: `"a"` for integers, `"a/b"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Bit-size of a rational, used to choose the cheapest pivot.
pub(crate) fn bit_size(r: &Rational) -> u64 {
    r.numer().bits() + r.denom().bits()
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| {
            if r == c {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    /// Builds a matrix from integer rows. Panics if the rows are ragged.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |r, c| int(rows[r][c]))
    }

    pub fn diagonal(values: &[Rational]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |r, c| {
            if r == c {
                values[r].clone()
            } else {
                Rational::zero()
            }
        })
    }

    /// The matrix unit with a single 1 at `(row, col)` (0-based).
    pub fn unit(n: usize, row: usize, col: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(row, col)] = Rational::one();
        m
    }

    /// Block-diagonal direct sum of square or rectangular blocks.
    pub fn block_diag(blocks: &[QMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out[(r0 + r, c0 + c)] = b[(r, c)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Returns the size of a square matrix or `NotSquare`.
    pub fn square_size(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Row-major entries; this is also the `vec` of the matrix.
    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.entries
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(
        &self,
        other: &QMatrix,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<QMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.entries.len(),
                found: other.entries.len(),
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn add(&self, other: &QMatrix) -> Result<QMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &QMatrix) -> Result<QMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &Rational) -> QMatrix {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    /// `self - v * I`.
    pub fn shift(&self, v: &Rational) -> Result<QMatrix> {
        let n = self.square_size()?;
        let mut out = self.clone();
        for i in 0..n {
            out[(i, i)] -= v;
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<QMatrix> {
        let n = self.square_size()?;
        let mut acc = Self::identity(n);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Exact inverse by Gauss-Jordan elimination, `None` if singular.
    pub fn inverse(&self) -> Result<Option<QMatrix>> {
        let n = self.square_size()?;
        let mut aug: Vec<Vec<Rational>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..n).map(|c| {
                    if c == r {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }));
                row
            })
            .collect();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !aug[r][col].is_zero()) else {
                return Ok(None);
            };
            aug.swap(col, p);
            let inv = aug[col][col].recip();
            for e in aug[col].iter_mut() {
                *e *= &inv;
            }
            let pivot_row = aug[col].clone();
            for (r, row) in aug.iter_mut().enumerate() {
                if r == col || row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for (e, p) in row.iter_mut().zip(&pivot_row) {
                    *e -= &f * p;
                }
            }
        }
        let entries = aug
            .into_iter()
            .flat_map(|row| row.into_iter().skip(n))
            .collect();
        Ok(Some(Self {
            rows: n,
            cols: n,
            entries,
        }))
    }

    /// `P⁻¹ · self · P`; `None` when `P` is singular.
    pub fn conjugate_by(&self, p: &QMatrix) -> Result<Option<QMatrix>> {
        let Some(p_inv) = p.inverse()? else {
            return Ok(None);
        };
        Ok(Some(p_inv.mul(self)?.mul(p)?))
    }

    /// True iff some power of the matrix vanishes (equivalently `self^n = 0`).
    pub fn is_nilpotent(&self) -> Result<bool> {
        let n = self.square_size()?;
        Ok(self.pow(n as u32)?.is_zero())
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Rational;

    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of bounds"
        );
        &self.entries[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of bounds"
        );
        &mut self.entries[r * self.cols + c]
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(format_rational).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", cells[r * self.cols + c])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(
            parse_rational("-3/7").unwrap(),
            Rational::new((-3).into(), 7.into())
        );
        assert_eq!(
            parse_rational("4/6").unwrap(),
            Rational::new(2.into(), 3.into())
        );
        assert_eq!(format_rational(&parse_rational("10/5").unwrap()), "2");
        assert_eq!(format_rational(&parse_rational("-6/4").unwrap()), "-3/2");
        assert_eq!(format_rational(&parse_rational(" 0 ").unwrap()), "0");
        for bad in ["", "1/0", "1/-2", "a", "1.5", "--1", "1/", "/2"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn inverse_and_conjugation() {
        let p = QMatrix::from_i64(&[&[1, 2], &[3, 5]]);
        let inv = p.inverse().unwrap().unwrap();
        assert_eq!(p.mul(&inv).unwrap(), QMatrix::identity(2));
        assert!(QMatrix::from_i64(&[&[1, 2], &[2, 4]])
            .inverse()
            .unwrap()
            .is_none());
        let m = QMatrix::diagonal(&[int(1), int(2)]);
        let c = m.conjugate_by(&p).unwrap().unwrap();
        assert_eq!(c.trace(), int(3));
    }

    #[test]
    fn nilpotency() {
        assert!(QMatrix::from_i64(&[&[0, 1], &[0, 0]])
            .is_nilpotent()
            .unwrap());
        assert!(QMatrix::zeros(3, 3).is_nilpotent().unwrap());
        assert!(!QMatrix::identity(2).is_nilpotent().unwrap());
    }

    #[test]
    fn block_diag_layout() {
        let a = QMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        let b = QMatrix::from_i64(&[&[5]]);
        let m = QMatrix::block_diag(&[a, b]);
        assert_eq!(m, QMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 5]]));
    }
}
