//! Exact elimination: rank, determinant, linear solve and null spaces.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::RatMatrix;
use crate::error::{AlgebraError, Result};
use crate::rational::Rational;

/// Rows scaled by the lcm of their denominators, so every entry is integral,
/// together with the scale applied to each row.
fn integral_rows(m: &RatMatrix) -> (Vec<Vec<Rational>>, Vec<Rational>) {
    (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let l = row
                .iter()
                .filter(|x| !x.is_zero() && !x.is_integer())
                .fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()));
            if l.is_one() {
                (row.to_vec(), Rational::one())
            } else {
                let s = Rational::from(l);
                (row.iter().map(|x| x * &s).collect(), s)
            }
        })
        .unzip()
}

/// Fraction-free (Bareiss) forward elimination on integral rows.
///
/// Returns the rank and the last pivot, which for a square full-rank input
/// is the determinant up to the sign of the row swaps (also returned).
fn bareiss(mut a: Vec<Vec<Rational>>, cols: usize) -> (usize, Rational, bool) {
    let rows = a.len();
    let mut prev = Rational::one();
    let mut rank = 0;
    let mut swapped_odd = false;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            swapped_odd = !swapped_odd;
        }
        let (head, tail) = a.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pivot = &pivot_row[col];
        for row in tail.iter_mut() {
            let factor = row[col].clone();
            for j in col + 1..cols {
                let mut v = pivot * &row[j];
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    v -= &(&factor * &pivot_row[j]);
                }
                row[j] = if prev.is_one() || v.is_zero() {
                    v
                } else {
                    &v / &prev
                };
            }
            row[col] = Rational::zero();
        }
        prev = pivot.clone();
        rank += 1;
    }
    (rank, prev, swapped_odd)
}

/// Rank over the rationals.
pub fn mat_rank(m: &RatMatrix) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    // Work on the narrower orientation; rank is transpose invariant.
    if m.rows() > m.cols() {
        return mat_rank(&m.transpose());
    }
    bareiss(integral_rows(m).0, m.cols()).0
}

pub fn determinant(m: &RatMatrix) -> Result<Rational> {
    if !m.is_square() {
        return Err(AlgebraError::DimensionMismatch(
            "determinant of non-square matrix".into(),
        ));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Rational::one());
    }
    let (rows, scales) = integral_rows(m);
    let (rank, last, odd) = bareiss(rows, n);
    if rank < n {
        return Ok(Rational::zero());
    }
    let scale: Rational = scales.iter().fold(Rational::one(), |acc, s| &acc * s);
    let det = &last / &scale;
    Ok(if odd { -det } else { det })
}

/// Reduced row echelon form; returns the reduced matrix rows and pivot columns.
fn rref(mut a: Vec<Vec<Rational>>, cols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][col].recip().expect("nonzero pivot");
        for x in a[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    (a, pivots)
}

/// Solves `A x = b`. Returns `Ok(None)` when the system is inconsistent; free
/// variables of an underdetermined system are set to zero.
pub fn mat_solve(a: &RatMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if a.rows() != b.len() {
        return Err(AlgebraError::DimensionMismatch(format!(
            "{} equations, right-hand side of length {}",
            a.rows(),
            b.len()
        )));
    }
    let n = a.cols();
    let aug: Vec<Vec<Rational>> = (0..a.rows())
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let (red, pivots) = rref(aug, n + 1);
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = red[r][n].clone();
    }
    Ok(Some(x))
}

/// Basis of `{x : A x = 0}`, one vector per free column.
pub fn null_space(a: &RatMatrix) -> Vec<Vec<Rational>> {
    let n = a.cols();
    let (red, pivots) = rref(a.to_rows(), n);
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&red[r][f];
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn rank_basics() {
        assert_eq!(mat_rank(&RatMatrix::identity(2)), 2);
        assert_eq!(mat_rank(&RatMatrix::zeros(2, 2)), 0);
        let m = RatMatrix::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(mat_rank(&m), 2);
        let frac =
            RatMatrix::from_rows(vec![vec![q(1, 2), q(1, 3)], vec![q(3, 2), q(1, 1)]]).unwrap();
        assert_eq!(mat_rank(&frac), 1);
        assert_eq!(mat_rank(&RatMatrix::zeros(0, 3)), 0);
    }

    #[test]
    fn rank_skips_empty_columns() {
        let m = RatMatrix::from_i64_rows(&[&[0, 2, 1, 0], &[0, 4, 2, 1], &[0, 6, 3, 1]]);
        assert_eq!(mat_rank(&m), 2);
    }

    #[test]
    fn solve_cases() {
        let b = vec![q(1, 1), q(-2, 3)];
        assert_eq!(
            mat_solve(&RatMatrix::identity(2), &b).unwrap(),
            Some(b.clone())
        );
        let a = RatMatrix::from_i64_rows(&[&[2]]);
        assert_eq!(mat_solve(&a, &[q(3, 1)]).unwrap(), Some(vec![q(3, 2)]));
        let a = RatMatrix::from_i64_rows(&[&[1, 1], &[1, 1]]);
        assert_eq!(mat_solve(&a, &[q(1, 1), q(2, 1)]).unwrap(), None);
        let cartan = RatMatrix::from_i64_rows(&[&[1, 0], &[-1, 1], &[0, -1]]);
        assert_eq!(
            mat_solve(&cartan, &[q(1, 1), q(1, 1), q(-2, 1)]).unwrap(),
            Some(vec![q(1, 1), q(2, 1)])
        );
        assert!(mat_solve(&cartan, &[q(1, 1)]).is_err());
    }

    #[test]
    fn underdetermined_solve_is_a_solution() {
        let a = RatMatrix::from_i64_rows(&[&[1, 2, 3]]);
        let x = mat_solve(&a, &[q(6, 1)]).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), vec![q(6, 1)]);
    }

    #[test]
    fn null_space_spans_kernel() {
        let a = RatMatrix::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = null_space(&a);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(a.mul_vec(v).unwrap().iter().all(Rational::is_zero));
        }
        assert!(null_space(&RatMatrix::identity(3)).is_empty());
    }

    #[test]
    fn determinant_small() {
        let m = RatMatrix::from_i64_rows(&[&[0, 2], &[3, 1]]);
        assert_eq!(determinant(&m).unwrap(), q(-6, 1));
        let m = RatMatrix::from_rows(vec![
            vec![q(1, 2), q(1, 3), q(0, 1)],
            vec![q(2, 1), q(0, 1), q(1, 5)],
            vec![q(1, 1), q(1, 1), q(1, 1)],
        ])
        .unwrap();
        // cofactor expansion along the first row
        let expect = &(&q(1, 2) * &(&q(0, 1) - &q(1, 5))) - &(&q(1, 3) * &(&q(2, 1) - &q(1, 5)));
        assert_eq!(determinant(&m).unwrap(), expect);
    }
}
