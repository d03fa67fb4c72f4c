//! `sl(n)`: traceless matrices, their basis and coordinates, and the
//! derivation action on exterior powers.

use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::exterior::{ExteriorElement, IndexSet};
use crate::linalg::{mat_solve, RatMatrix};
use crate::rational::Rational;

/// An `n×n` rational matrix with trace exactly zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TracelessMatrix(RatMatrix);

impl TracelessMatrix {
    pub fn new(m: RatMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{}x{} matrix is not square",
                m.rows(),
                m.cols()
            )));
        }
        let t = m.trace();
        if !t.is_zero() {
            return Err(AlgebraError::NonzeroTrace(t.to_string()));
        }
        Ok(TracelessMatrix(m))
    }

    pub fn zero(n: usize) -> Self {
        TracelessMatrix(RatMatrix::zeros(n, n))
    }

    /// `E_ij` for `i != j`.
    pub fn elementary(n: usize, i: usize, j: usize) -> Result<Self> {
        if i >= n || j >= n {
            return Err(AlgebraError::IndexOutOfRange {
                index: i.max(j),
                bound: n,
            });
        }
        if i == j {
            return Err(AlgebraError::InvalidParameters(
                "E_ii is not traceless".into(),
            ));
        }
        Ok(TracelessMatrix(RatMatrix::from_fn(n, n, |a, b| {
            if (a, b) == (i, j) {
                Rational::one()
            } else {
                Rational::zero()
            }
        })))
    }

    /// `H_i = E_ii - E_{i+1,i+1}`.
    pub fn cartan(n: usize, i: usize) -> Result<Self> {
        if i + 1 >= n {
            return Err(AlgebraError::IndexOutOfRange {
                index: i,
                bound: n - 1,
            });
        }
        Ok(TracelessMatrix(RatMatrix::from_fn(n, n, |a, b| {
            if a != b {
                Rational::zero()
            } else if a == i {
                Rational::one()
            } else if a == i + 1 {
                Rational::from(-1)
            } else {
                Rational::zero()
            }
        })))
    }

    pub fn n(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> RatMatrix {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn transpose(&self) -> Self {
        TracelessMatrix(self.0.transpose())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        TracelessMatrix(self.0.scale(s))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(TracelessMatrix(self.0.add(&other.0)?))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(TracelessMatrix(self.0.sub(&other.0)?))
    }
}

impl fmt::Debug for TracelessMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

impl fmt::Display for TracelessMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// The traceless projection `M - (tr M / n) I`.
pub fn make_traceless(m: &RatMatrix) -> Result<TracelessMatrix> {
    if !m.is_square() {
        return Err(AlgebraError::DimensionMismatch(format!(
            "{}x{} matrix is not square",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let shift = &m.trace() / &Rational::from(n as i64);
    if shift.is_zero() {
        return Ok(TracelessMatrix(m.clone()));
    }
    let p = RatMatrix::from_fn(n, n, |i, j| {
        if i == j {
            m.get(i, j) - &shift
        } else {
            m.get(i, j).clone()
        }
    });
    Ok(TracelessMatrix(p))
}

/// Ordered basis of `sl(n)`: the Cartan elements `H_0 … H_{n-2}`, then the
/// off-diagonal `E_ij` in row-major order.
#[derive(Clone, Debug)]
pub struct SlBasis {
    n: usize,
    elements: Vec<TracelessMatrix>,
}

impl SlBasis {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(AlgebraError::InvalidParameters(format!(
                "sl({n}) is trivial"
            )));
        }
        let mut elements = Vec::with_capacity(n * n - 1);
        for i in 0..n - 1 {
            elements.push(TracelessMatrix::cartan(n, i)?);
        }
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    elements.push(TracelessMatrix::elementary(n, i, j)?);
                }
            }
        }
        Ok(SlBasis { n, elements })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[TracelessMatrix] {
        &self.elements
    }

    /// Slot of `E_ij` (`i != j`) in the basis.
    pub fn offdiag_index(&self, i: usize, j: usize) -> usize {
        let n = self.n;
        n - 1 + i * (n - 1) + if j < i { j } else { j - 1 }
    }
}

/// The `n × (n-1)` system whose columns are the diagonals of `H_i`.
fn cartan_system(n: usize) -> RatMatrix {
    RatMatrix::from_fn(n, n - 1, |r, c| {
        if r == c {
            Rational::one()
        } else if r == c + 1 {
            Rational::from(-1)
        } else {
            Rational::zero()
        }
    })
}

/// Coordinates of a traceless matrix against [`SlBasis`]. Off-diagonal slots
/// are read off directly; the Cartan part comes from a linear solve.
pub fn sl_coordinates(m: &TracelessMatrix) -> Result<Vec<Rational>> {
    let n = m.n();
    let mat = m.matrix();
    if !mat.trace().is_zero() {
        return Err(AlgebraError::NonzeroTrace(mat.trace().to_string()));
    }
    let diag: Vec<Rational> = (0..n).map(|i| mat.get(i, i).clone()).collect();
    let cartan = mat_solve(&cartan_system(n), &diag)?
        .ok_or_else(|| AlgebraError::NonzeroTrace("diagonal outside the Cartan span".into()))?;
    let mut out = cartan;
    out.reserve(n * (n - 1));
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(mat.get(i, j).clone());
            }
        }
    }
    Ok(out)
}

/// Inverse of [`sl_coordinates`].
pub fn from_coordinates(n: usize, coords: &[Rational]) -> Result<TracelessMatrix> {
    if n < 2 || coords.len() != n * n - 1 {
        return Err(AlgebraError::DimensionMismatch(format!(
            "{} coordinates for sl({n})",
            coords.len()
        )));
    }
    let mut diag = vec![Rational::zero(); n];
    for (i, c) in coords[..n - 1].iter().enumerate() {
        diag[i] += c;
        diag[i + 1] -= c;
    }
    let mut off = coords[n - 1..].iter();
    let m = RatMatrix::from_fn(n, n, |i, j| {
        if i == j {
            diag[i].clone()
        } else {
            off.next().expect("length checked").clone()
        }
    });
    TracelessMatrix::new(m)
}

/// Derivation action of a matrix on `⋀^d F^n`, with `A e_j = Σ_i A_ij e_i`.
///
/// Accepts any square matrix; the traceless case is [`act`].
pub fn act_matrix(a: &RatMatrix, s: &ExteriorElement) -> Result<ExteriorElement> {
    let n = s.n();
    if a.rows() != n || a.cols() != n {
        return Err(AlgebraError::DimensionMismatch(format!(
            "{}x{} matrix acting on Λ F^{n}",
            a.rows(),
            a.cols()
        )));
    }
    let mut out = ExteriorElement::zero(n, s.degree());
    for (set, c) in s.terms() {
        for j in set.iter() {
            let base = set.without(j);
            for i in 0..n {
                let aij = a.get(i, j);
                if aij.is_zero() {
                    continue;
                }
                if i == j {
                    out.add_term(*set, &(aij * c));
                    continue;
                }
                if base.contains(i) {
                    continue;
                }
                // moving e_i from j's slot to its sorted place crosses every
                // element strictly between i and j
                let (lo, hi) = if i < j { (i, j) } else { (j, i) };
                let between = (base.mask() >> lo >> 1) & ((1u64 << (hi - lo - 1)) - 1);
                let v = aij * c;
                let v = if between.count_ones().is_multiple_of(2) {
                    v
                } else {
                    -v
                };
                out.add_term(IndexSet::from_mask(base.mask() | (1 << i)), &v);
            }
        }
    }
    Ok(out)
}

pub fn act(a: &TracelessMatrix, s: &ExteriorElement) -> Result<ExteriorElement> {
    act_matrix(a.matrix(), s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::ExteriorElement;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn w(n: usize, word: &[usize]) -> ExteriorElement {
        ExteriorElement::from_word(n, word).unwrap()
    }

    #[test]
    fn traceless_projection() {
        assert!(make_traceless(&RatMatrix::identity(4)).unwrap().is_zero());
        let h = TracelessMatrix::cartan(4, 1).unwrap();
        assert_eq!(make_traceless(h.matrix()).unwrap(), h);
        let mut d = vec![q(-1, 4); 4];
        d[0] = q(3, 4);
        let e00 = RatMatrix::from_fn(
            4,
            4,
            |i, j| if (i, j) == (0, 0) { q(1, 1) } else { q(0, 1) },
        );
        assert_eq!(
            make_traceless(&e00).unwrap().matrix(),
            &RatMatrix::diagonal(&d)
        );
        assert!(make_traceless(&RatMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn action_examples() {
        let e01 = TracelessMatrix::elementary(4, 0, 1).unwrap();
        assert_eq!(act(&e01, &w(4, &[1, 2])).unwrap(), w(4, &[0, 2]));
        let h0 = TracelessMatrix::cartan(4, 0).unwrap();
        assert!(act(&h0, &w(4, &[0, 1])).unwrap().is_zero());
        let a = TracelessMatrix::new(RatMatrix::diagonal(&[q(1, 1), q(2, 1), q(5, 1), q(-8, 1)]))
            .unwrap();
        assert_eq!(
            act(&a, &w(4, &[0, 2])).unwrap(),
            w(4, &[0, 2]).scale(&q(6, 1))
        );
        // moving e3 across e1 and e2: e0 ∧ e3 ∧ ... sign check via the wedge oracle
        let e30 = TracelessMatrix::elementary(4, 3, 0).unwrap();
        assert_eq!(act(&e30, &w(4, &[0, 1, 2])).unwrap(), w(4, &[3, 1, 2]));
        assert!(act(&e01, &w(5, &[1])).is_err());
    }

    #[test]
    fn coordinates_examples() {
        let basis = SlBasis::new(4).unwrap();
        assert_eq!(basis.len(), 15);
        let h0 = &basis.elements()[0];
        let c = sl_coordinates(h0).unwrap();
        assert_eq!(c[0], q(1, 1));
        assert!(c[1..].iter().all(Rational::is_zero));
        let e01 = TracelessMatrix::elementary(4, 0, 1).unwrap();
        let c = sl_coordinates(&e01).unwrap();
        let slot = basis.offdiag_index(0, 1);
        assert_eq!(basis.elements()[slot], e01);
        assert!(c
            .iter()
            .enumerate()
            .all(|(i, x)| x.is_zero() == (i != slot)));

        let d = TracelessMatrix::new(RatMatrix::diagonal(&[q(1, 1), q(1, 1), q(-1, 1), q(-1, 1)]))
            .unwrap();
        let c = sl_coordinates(&d).unwrap();
        assert_eq!(&c[..3], &[q(1, 1), q(2, 1), q(1, 1)]);
        assert!(c[3..].iter().all(Rational::is_zero));
        assert_eq!(from_coordinates(4, &c).unwrap(), d);
        assert!(from_coordinates(4, &vec![q(0, 1); 15]).unwrap().is_zero());
        assert_eq!(
            from_coordinates(4, &sl_coordinates(h0).unwrap()).unwrap(),
            *h0
        );
        assert!(from_coordinates(4, &vec![q(0, 1); 3]).is_err());
    }

    #[test]
    fn offdiag_slots_cover_basis() {
        let b = SlBasis::new(5).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                if i != j {
                    assert_eq!(
                        b.elements()[b.offdiag_index(i, j)],
                        TracelessMatrix::elementary(5, i, j).unwrap()
                    );
                }
            }
        }
    }
}
