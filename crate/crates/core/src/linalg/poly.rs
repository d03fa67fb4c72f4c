//! Univariate polynomials over the rationals and the matrix invariants built
//! from them.

use std::fmt;

use super::RatMatrix;
use crate::error::{AlgebraError, Result};
use crate::rational::Rational;

/// Dense polynomial, ascending coefficients with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPolynomial {
    coeffs: Vec<Rational>,
}

impl RatPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        RatPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn zero() -> Self {
        RatPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r, Rational::one()])
    }

    pub fn monomial(degree: usize) -> Self {
        let mut c = vec![Rational::zero(); degree + 1];
        c[degree] = Rational::one();
        RatPolynomial { coeffs: c }
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let inv = l.recip().expect("nonzero leading coefficient");
                Self::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(Rational::one()), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Rational::from(i as i64))
                .collect(),
        )
    }

    /// Euclidean division: `(q, r)` with `self = q*d + r`, `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(AlgebraError::ZeroPolynomial)?;
        let lead_inv = d.coeffs[dd].recip().expect("nonzero leading");
        let mut r = self.coeffs.clone();
        let mut q = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let c = &r[top] * &lead_inv;
            let shift = top - dd;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    r[shift + i] -= &(&c * dc);
                }
            }
            q[shift] = c;
            r.pop();
            while r.last().is_some_and(Rational::is_zero) {
                r.pop();
            }
        }
        Ok((Self::new(q), Self::new(r)))
    }

    /// Monic greatest common divisor (zero when both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(other);
        let (q, _) = self.div_rem(&g).expect("gcd nonzero");
        q.mul(other).monic()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| &(&acc * x) + c)
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &RatMatrix) -> Result<RatMatrix> {
        if !m.is_square() {
            return Err(AlgebraError::DimensionMismatch(
                "polynomial of non-square matrix".into(),
            ));
        }
        let n = m.rows();
        let mut acc = RatMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m)?.add(&RatMatrix::identity(n).scale(c))?;
        }
        Ok(acc)
    }
}

impl fmt::Display for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
                if i > 0 {
                    write!(f, "*")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `det(xI - M)` by Berkowitz's division-free algorithm.
pub fn char_poly(m: &RatMatrix) -> Result<RatPolynomial> {
    if !m.is_square() {
        return Err(AlgebraError::DimensionMismatch(
            "char_poly of non-square matrix".into(),
        ));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(RatPolynomial::constant(Rational::one()));
    }
    // c holds coefficients in descending degree order: c[0] = 1.
    let mut c = vec![Rational::one(), -m.get(0, 0)];
    for r in 1..n {
        // Leading r x r block A, row R = m[r][0..r], column S = m[0..r][r].
        let row: Vec<&Rational> = (0..r).map(|j| m.get(r, j)).collect();
        let mut v: Vec<Rational> = (0..r).map(|i| m.get(i, r).clone()).collect();
        let mut toeplitz = Vec::with_capacity(r + 2);
        toeplitz.push(Rational::one());
        toeplitz.push(-m.get(r, r));
        for k in 0..r {
            let rv: Rational = row
                .iter()
                .zip(&v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .map(|(a, b)| *a * b)
                .sum();
            toeplitz.push(-rv);
            if k + 1 < r {
                v = (0..r)
                    .map(|i| {
                        (0..r)
                            .filter(|&j| !v[j].is_zero())
                            .map(|j| m.get(i, j) * &v[j])
                            .sum()
                    })
                    .collect();
            }
        }
        // new_c = T * c where T is (r+2) x (r+1) lower-triangular Toeplitz.
        let mut next = vec![Rational::zero(); r + 2];
        for (i, out) in next.iter_mut().enumerate() {
            for (j, cj) in c.iter().enumerate().take(i + 1) {
                if !cj.is_zero() && !toeplitz[i - j].is_zero() {
                    *out += &(&toeplitz[i - j] * cj);
                }
            }
        }
        c = next;
    }
    c.reverse();
    Ok(RatPolynomial::new(c))
}

/// Incremental echelon basis used for Krylov computations. Each stored
/// vector remembers its pivot column.
struct Echelon {
    vecs: Vec<(usize, Vec<Rational>)>,
}

impl Echelon {
    fn new() -> Self {
        Echelon { vecs: Vec::new() }
    }

    /// Reduces `v` against the basis; returns the residual.
    fn reduce(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        for (p, b) in &self.vecs {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        v
    }

    /// Inserts a nonzero residual, normalizing its pivot to one.
    fn insert(&mut self, v: Vec<Rational>) {
        let p = v
            .iter()
            .position(|x| !x.is_zero())
            .expect("nonzero residual");
        let inv = v[p].recip().expect("nonzero pivot");
        let v: Vec<Rational> = v.iter().map(|x| x * &inv).collect();
        self.vecs.push((p, v));
    }
}

/// Minimal polynomial of `v` under `m`: the least monic `p` with `p(M) v = 0`.
/// Also returns the Krylov vectors spanning the cyclic subspace.
fn local_min_poly(m: &RatMatrix, v: Vec<Rational>) -> Result<(RatPolynomial, Vec<Vec<Rational>>)> {
    let n = m.rows();
    // Each basis row tracks the combination of Krylov powers it represents.
    let mut basis: Vec<(usize, Vec<Rational>, Vec<Rational>)> = Vec::new();
    let mut krylov = Vec::new();
    let mut current = v;
    loop {
        let d = krylov.len();
        let mut residual = current.clone();
        let mut combo = vec![Rational::zero(); n + 1];
        combo[d] = Rational::one();
        for (p, b, bc) in &basis {
            if residual[*p].is_zero() {
                continue;
            }
            let f = residual[*p].clone();
            for (x, y) in residual.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
            for (x, y) in combo.iter_mut().zip(bc) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        match residual.iter().position(|x| !x.is_zero()) {
            None => {
                // combo is a monic relation of degree d among the powers
                combo.truncate(d + 1);
                return Ok((RatPolynomial::new(combo), krylov));
            }
            Some(p) => {
                let inv = residual[p].recip().expect("nonzero");
                let residual = residual.iter().map(|x| x * &inv).collect();
                let combo = combo.iter().map(|x| x * &inv).collect();
                basis.push((p, residual, combo));
                let next = m.mul_vec(&current)?;
                krylov.push(current);
                current = next;
            }
        }
    }
}

/// Monic minimal polynomial, as the lcm of the local minimal polynomials of
/// the standard basis vectors not already inside the accumulated invariant
/// subspace.
pub fn min_poly(m: &RatMatrix) -> Result<RatPolynomial> {
    if !m.is_square() {
        return Err(AlgebraError::DimensionMismatch(
            "min_poly of non-square matrix".into(),
        ));
    }
    let n = m.rows();
    let mut result = RatPolynomial::constant(Rational::one());
    let mut span = Echelon::new();
    for j in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[j] = Rational::one();
        if span.reduce(e.clone()).iter().all(Rational::is_zero) {
            continue;
        }
        let (local, krylov) = local_min_poly(m, e)?;
        result = result.lcm(&local);
        for k in krylov {
            let r = span.reduce(k);
            if r.iter().any(|x| !x.is_zero()) {
                span.insert(r);
            }
        }
        if span.vecs.len() == n {
            break;
        }
    }
    Ok(result)
}

/// True iff `gcd(p, p')` is constant.
pub fn is_squarefree(p: &RatPolynomial) -> Result<bool> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    Ok(p.gcd(&p.derivative()).degree() == Some(0))
}

/// Sturm sequence `p, p', -rem(p, p'), ...`.
pub fn sturm_sequence(p: &RatPolynomial) -> Result<Vec<RatPolynomial>> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let mut seq = vec![p.clone(), p.derivative()];
    while !seq.last().expect("nonempty").is_zero() {
        let k = seq.len();
        let (_, r) = seq[k - 2].div_rem(&seq[k - 1])?;
        seq.push(r.scale(&Rational::from(-1)));
    }
    seq.pop();
    Ok(seq)
}

fn sign_changes(seq: &[RatPolynomial], x: &Rational) -> usize {
    let signs: Vec<i32> = seq
        .iter()
        .map(|q| q.eval(x).signum())
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots in the open interval `(lo, hi)`.
pub fn count_real_roots(p: &RatPolynomial, lo: &Rational, hi: &Rational) -> Result<usize> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if lo >= hi {
        return Err(AlgebraError::InvalidParameters(format!(
            "empty interval ({lo}, {hi})"
        )));
    }
    for x in [lo, hi] {
        if p.eval(x).is_zero() {
            return Err(AlgebraError::EndpointIsRoot(x.to_string()));
        }
    }
    let seq = sturm_sequence(p)?;
    Ok(sign_changes(&seq, lo) - sign_changes(&seq, hi))
}

/// Cauchy bound: every real root lies strictly inside `(-B, B)`.
pub fn root_bound(p: &RatPolynomial) -> Result<Rational> {
    let lead = p.leading().ok_or(AlgebraError::ZeroPolynomial)?;
    let max = p.coeffs[..p.coeffs.len() - 1]
        .iter()
        .map(|c| (c / lead).abs())
        .max()
        .unwrap_or_default();
    Ok(max + Rational::from(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(
            char_poly(&RatMatrix::zeros(2, 2)).unwrap(),
            RatPolynomial::from_i64(&[0, 0, 1])
        );
        assert_eq!(
            char_poly(&RatMatrix::identity(2)).unwrap(),
            RatPolynomial::from_i64(&[1, -2, 1])
        );
        let m = RatMatrix::from_i64_rows(&[&[0, 2], &[2, 0]]);
        assert_eq!(char_poly(&m).unwrap(), RatPolynomial::from_i64(&[-4, 0, 1]));
    }

    #[test]
    fn min_poly_examples() {
        assert_eq!(
            min_poly(&RatMatrix::zeros(2, 2)).unwrap(),
            RatPolynomial::from_i64(&[0, 1])
        );
        let nil = RatMatrix::from_i64_rows(&[&[0, 1], &[0, 0]]);
        assert_eq!(min_poly(&nil).unwrap(), RatPolynomial::from_i64(&[0, 0, 1]));
        let d = RatMatrix::diagonal(&[q(2, 1), q(-2, 1), q(0, 1)]);
        assert_eq!(
            min_poly(&d).unwrap(),
            RatPolynomial::from_i64(&[0, -4, 0, 1])
        );
        // repeated eigenvalue with a single block of size two
        let m = RatMatrix::from_i64_rows(&[&[3, 1, 0], &[0, 3, 0], &[0, 0, 3]]);
        assert_eq!(min_poly(&m).unwrap(), RatPolynomial::from_i64(&[9, -6, 1]));
    }

    #[test]
    fn squarefree_examples() {
        assert!(!is_squarefree(&RatPolynomial::from_i64(&[0, 0, 1])).unwrap());
        assert!(is_squarefree(&RatPolynomial::from_i64(&[0, -4, 0, 1])).unwrap());
        assert!(is_squarefree(&RatPolynomial::from_i64(&[-5, 1])).unwrap());
        assert_eq!(
            is_squarefree(&RatPolynomial::zero()),
            Err(AlgebraError::ZeroPolynomial)
        );
    }

    #[test]
    fn sturm_examples() {
        let (lo, hi) = (q(-10, 1), q(10, 1));
        assert_eq!(
            count_real_roots(&RatPolynomial::from_i64(&[-4, 0, 1]), &lo, &hi).unwrap(),
            2
        );
        assert_eq!(
            count_real_roots(&RatPolynomial::from_i64(&[1, 0, 1]), &lo, &hi).unwrap(),
            0
        );
        let p = RatPolynomial::from_i64(&[200, -40, 1]);
        assert_eq!(count_real_roots(&p, &q(0, 1), &q(100, 1)).unwrap(), 2);
        // 20 - 10*sqrt(2) ~ 5.857 and 20 + 10*sqrt(2) ~ 34.142
        assert_eq!(count_real_roots(&p, &q(5, 1), &q(6, 1)).unwrap(), 1);
        assert_eq!(count_real_roots(&p, &q(34, 1), &q(35, 1)).unwrap(), 1);
        assert!(matches!(
            count_real_roots(&RatPolynomial::from_i64(&[-4, 0, 1]), &q(2, 1), &hi),
            Err(AlgebraError::EndpointIsRoot(_))
        ));
    }

    #[test]
    fn sturm_counts_distinct_roots_with_multiplicity() {
        // (x-1)^3 (x+2)
        let p = RatPolynomial::from_i64(&[-1, 1])
            .pow(3)
            .mul(&RatPolynomial::from_i64(&[2, 1]));
        assert_eq!(count_real_roots(&p, &q(-10, 1), &q(10, 1)).unwrap(), 2);
    }

    #[test]
    fn division_and_gcd() {
        let a = RatPolynomial::from_i64(&[-1, 0, 1]);
        let b = RatPolynomial::from_i64(&[1, 1]);
        let (qq, r) = a.div_rem(&b).unwrap();
        assert_eq!(qq, RatPolynomial::from_i64(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&b), b);
        assert_eq!(
            RatPolynomial::from_i64(&[0, -4, 0, 1]).gcd(&RatPolynomial::from_i64(&[-4, 0, 3])),
            RatPolynomial::from_i64(&[1])
        );
    }

    #[test]
    fn display() {
        assert_eq!(
            RatPolynomial::from_i64(&[200, -40, 1]).to_string(),
            "x^2 - 40*x + 200"
        );
        assert_eq!(RatPolynomial::from_i64(&[0, -1]).to_string(), "-x");
        assert_eq!(RatPolynomial::zero().to_string(), "0");
    }
}
