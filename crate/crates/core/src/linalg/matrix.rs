use std::fmt;
use std::ops::Range;

use rayon::prelude::*;

use crate::error::{AlgebraError, Result};
use crate::rational::Rational;

/// Dense row-major matrix over the rationals.
///
/// Values are immutable once built; all arithmetic returns new matrices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(RatMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::DimensionMismatch("ragged rows".into()));
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer convenience constructor, mostly for tests and fixtures.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from(v)).collect())
                .collect(),
        )
        .expect("rectangular rows")
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                Rational::zero()
            }
        })
    }

    /// Builds a matrix from its columns.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(AlgebraError::DimensionMismatch("column length".into()));
        }
        Ok(Self::from_fn(rows, columns.len(), |i, j| {
            columns[j][i].clone()
        }))
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

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn count_nonzero(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    fn check_same_shape(&self, other: &Self, what: &str) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "add")?;
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "sub")?;
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Matrix product. Zero entries on either side are skipped, which makes
    /// block-sparse adjoint matrices cheap to multiply.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(AlgebraError::DimensionMismatch(format!(
                "mul: {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let n = other.cols;
        let sparse_rows: Vec<Vec<(usize, &Rational)>> = (0..other.rows)
            .map(|k| {
                other
                    .row(k)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        let data: Vec<Rational> = (0..self.rows)
            .into_par_iter()
            .flat_map_iter(|i| {
                let mut acc = vec![Rational::zero(); n];
                for (k, a) in self.row(i).iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for &(j, b) in &sparse_rows[k] {
                        acc[j] += &(a * b);
                    }
                }
                acc
            })
            .collect();
        Ok(RatMatrix {
            rows: self.rows,
            cols: n,
            data,
        })
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(AlgebraError::DimensionMismatch(format!(
                "mul_vec: {} columns, vector of {}",
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect())
    }

    /// `self^p` by repeated squaring; `p = 0` gives the identity.
    pub fn pow(&self, p: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(AlgebraError::DimensionMismatch(
                "pow of non-square matrix".into(),
            ));
        }
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Contiguous submatrix.
    pub fn block(&self, rows: Range<usize>, cols: Range<usize>) -> Result<Self> {
        if rows.start > rows.end || rows.end > self.rows {
            return Err(AlgebraError::IndexOutOfRange {
                index: rows.end,
                bound: self.rows,
            });
        }
        if cols.start > cols.end || cols.end > self.cols {
            return Err(AlgebraError::IndexOutOfRange {
                index: cols.end,
                bound: self.cols,
            });
        }
        Ok(Self::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows.start + i, cols.start + j).clone()
        }))
    }
}

/// `AB - BA`.
pub fn matrix_commutator(a: &RatMatrix, b: &RatMatrix) -> Result<RatMatrix> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(AlgebraError::DimensionMismatch(format!(
            "commutator of {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let (ab, ba) = rayon::join(|| a.mul(b), || b.mul(a));
    ab?.sub(&ba?)
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{}", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}

/// Aligned rows in the `| a b |` style.
impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(ToString::to_string).collect())
            .collect();
        let widths: Vec<usize> = (0..self.cols)
            .map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(0))
            .collect();
        for row in &cells {
            let padded: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            writeln!(f, "| {} |", padded.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutator_of_elementary_matrices() {
        let e01 = RatMatrix::from_i64_rows(&[&[0, 1], &[0, 0]]);
        let e10 = RatMatrix::from_i64_rows(&[&[0, 0], &[1, 0]]);
        let c = matrix_commutator(&e01, &e10).unwrap();
        assert_eq!(c, RatMatrix::from_i64_rows(&[&[1, 0], &[0, -1]]));
        assert!(matrix_commutator(&e01, &e01).unwrap().is_zero());
        assert!(matrix_commutator(&RatMatrix::identity(2), &e10)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn commutator_shape_error() {
        let a = RatMatrix::identity(2);
        let b = RatMatrix::identity(3);
        assert!(matches!(
            matrix_commutator(&a, &b),
            Err(AlgebraError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn blocks() {
        let m = RatMatrix::from_i64_rows(&[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(m.block(0..2, 0..3).unwrap(), m);
        assert_eq!(
            RatMatrix::identity(3).block(0..1, 0..1).unwrap(),
            RatMatrix::from_i64_rows(&[&[1]])
        );
        assert_eq!(
            m.block(1..2, 1..3).unwrap(),
            RatMatrix::from_i64_rows(&[&[5, 6]])
        );
        assert!(m.block(0..3, 0..1).is_err());
        assert!(m.block(0..1, 2..4).is_err());
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let m = RatMatrix::from_i64_rows(&[&[1, 1], &[1, 0]]);
        let p5 = m.pow(5).unwrap();
        assert_eq!(p5, RatMatrix::from_i64_rows(&[&[8, 5], &[5, 3]]));
        assert_eq!(m.pow(0).unwrap(), RatMatrix::identity(2));
    }
}
