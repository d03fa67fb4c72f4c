//! The graded algebra `sl(n) ⊕ ⋀^k ⊕ ⋀^{2k mod n} ⊕ …` and its bracket.

mod adjoint;
mod analysis;

use std::fmt;

use num_integer::Integer;

pub use adjoint::{block_ranks, AdMatrix, BlockRankRow, BlockRankTable, PowerDepth};
pub use analysis::{
    centralizer_in_grade, is_ad_semisimple, jacobi_holds, jacobi_holds_for_matrix, random_element,
    verify_axioms, AxiomReport, PairReport,
};

use crate::error::{AlgebraError, Result};
use crate::exterior::{
    binomial, hodge_star, monomial_basis, pairing, partial, wedge, ExteriorElement, IndexSet,
    MAX_DIM,
};
use crate::linalg::{matrix_commutator, RatMatrix};
use crate::rational::Rational;
use crate::sl::{
    act, act_matrix, from_coordinates, make_traceless, sl_coordinates, SlBasis, TracelessMatrix,
};

/// Payload of a homogeneous element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Payload {
    Sl(TracelessMatrix),
    Form(ExteriorElement),
}

/// A homogeneous element of an [`ExtensionAlgebra`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    grade: usize,
    payload: Payload,
}

impl AlgebraElement {
    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    pub fn as_matrix(&self) -> Option<&TracelessMatrix> {
        match &self.payload {
            Payload::Sl(m) => Some(m),
            Payload::Form(_) => None,
        }
    }

    pub fn as_form(&self) -> Option<&ExteriorElement> {
        match &self.payload {
            Payload::Form(f) => Some(f),
            Payload::Sl(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.payload {
            Payload::Sl(m) => m.is_zero(),
            Payload::Form(f) => f.is_zero(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let payload = match &self.payload {
            Payload::Sl(m) => Payload::Sl(m.scale(s)),
            Payload::Form(f) => Payload::Form(f.scale(s)),
        };
        AlgebraElement {
            grade: self.grade,
            payload,
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rational::from(-1))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.grade != other.grade {
            return Err(AlgebraError::DimensionMismatch(format!(
                "adding grade {} to grade {}",
                self.grade, other.grade
            )));
        }
        let payload = match (&self.payload, &other.payload) {
            (Payload::Sl(a), Payload::Sl(b)) => Payload::Sl(a.add(b)?),
            (Payload::Form(a), Payload::Form(b)) => Payload::Form(a.add(b)?),
            _ => return Err(AlgebraError::MixedAlgebras),
        };
        Ok(AlgebraElement {
            grade: self.grade,
            payload,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.payload {
            Payload::Sl(m) => fmt::Display::fmt(m, f),
            Payload::Form(e) => fmt::Display::fmt(e, f),
        }
    }
}

/// Scale of the `⋀^d × ⋀^{n-d} → sl(n)` contraction.
///
/// Chosen so that for a monomial `S` of degree `k`, `h = [S, *S]` acts on `S`
/// by `(-1)^k · 2`. The unscaled contraction gives `h` acting by
/// `k(n-k)/n`; the sign reproduces the printed brackets for `(2,4)` and
/// `(3,9)` and is the one under which `(3,9)` satisfies Jacobi.
pub fn default_contraction_scale(k: usize, n: usize) -> Rational {
    let d = k % n;
    if d == 0 {
        return Rational::one();
    }
    let mag = Rational::new(2 * n as i64, (d * (n - d)) as i64);
    if d.is_multiple_of(2) {
        mag
    } else {
        -mag
    }
}

/// Immutable descriptor of the algebra with parameters `(k, n)`.
#[derive(Clone, Debug)]
pub struct ExtensionAlgebra {
    k: usize,
    n: usize,
    /// Exterior degree of each grade; entry 0 is unused (the sl part).
    degrees: Vec<usize>,
    offsets: Vec<usize>,
    dims: Vec<usize>,
    dim: usize,
    sl_basis: SlBasis,
    monomials: Vec<Vec<IndexSet>>,
    contraction_scale: Rational,
}

impl ExtensionAlgebra {
    /// Builds the algebra for `1 <= k < n`. Grade `i` for `1 <= i < m` is
    /// `⋀^{ik mod n}` with `m = n / gcd(n, k)`.
    pub fn new(k: usize, n: usize) -> Result<Self> {
        Self::with_contraction_scale(k, n, default_contraction_scale(k.max(1), n.max(2)))
    }

    /// Same as [`new`](Self::new) with an explicit contraction scale.
    pub fn with_contraction_scale(k: usize, n: usize, scale: Rational) -> Result<Self> {
        if !(2..=MAX_DIM).contains(&n) || k == 0 || k >= n {
            return Err(AlgebraError::InvalidParameters(format!(
                "need 1 <= k < n <= {MAX_DIM}, got k={k}, n={n}"
            )));
        }
        if scale.is_zero() {
            return Err(AlgebraError::InvalidParameters(
                "contraction scale must be nonzero".into(),
            ));
        }
        let m = n / n.gcd(&k);
        let mut degrees = vec![0];
        degrees.extend((1..m).map(|i| (i * k) % n));
        let mut dims = vec![n * n - 1];
        dims.extend(degrees[1..].iter().map(|&d| binomial(n, d)));
        let mut offsets = Vec::with_capacity(m);
        let mut acc = 0;
        for d in &dims {
            offsets.push(acc);
            acc += d;
        }
        let monomials = std::iter::once(Ok(Vec::new()))
            .chain(degrees[1..].iter().map(|&d| monomial_basis(d, n)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ExtensionAlgebra {
            k,
            n,
            degrees,
            offsets,
            dims,
            dim: acc,
            sl_basis: SlBasis::new(n)?,
            monomials,
            contraction_scale: scale,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of grades.
    pub fn grade_count(&self) -> usize {
        self.degrees.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Exterior degree of a nonzero grade (0 for the sl part).
    pub fn grade_degree(&self, grade: usize) -> usize {
        self.degrees[grade]
    }

    pub fn grade_degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn grade_dim(&self, grade: usize) -> usize {
        self.dims[grade]
    }

    pub fn offset(&self, grade: usize) -> usize {
        self.offsets[grade]
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn contraction_scale(&self) -> &Rational {
        &self.contraction_scale
    }

    pub fn sl_basis(&self) -> &SlBasis {
        &self.sl_basis
    }

    pub fn monomials(&self, grade: usize) -> &[IndexSet] {
        &self.monomials[grade]
    }

    /// Grade holding exterior degree `d`, if any.
    pub fn grade_of_degree(&self, d: usize) -> Option<usize> {
        (1..self.grade_count()).find(|&g| self.degrees[g] == d)
    }

    /// Human-readable label of a grade, e.g. `sl(4)` or `Λ^2`.
    pub fn grade_label(&self, grade: usize) -> String {
        if grade == 0 {
            format!("sl({})", self.n)
        } else {
            format!("Λ^{}", self.degrees[grade])
        }
    }

    pub fn zero(&self, grade: usize) -> Result<AlgebraElement> {
        self.check_grade(grade)?;
        let payload = if grade == 0 {
            Payload::Sl(TracelessMatrix::zero(self.n))
        } else {
            Payload::Form(ExteriorElement::zero(self.n, self.degrees[grade]))
        };
        Ok(AlgebraElement { grade, payload })
    }

    fn check_grade(&self, grade: usize) -> Result<()> {
        if grade >= self.grade_count() {
            return Err(AlgebraError::IndexOutOfRange {
                index: grade,
                bound: self.grade_count(),
            });
        }
        Ok(())
    }

    pub fn sl_element(&self, m: TracelessMatrix) -> Result<AlgebraElement> {
        if m.n() != self.n {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{}x{} matrix in sl({})",
                m.n(),
                m.n(),
                self.n
            )));
        }
        Ok(AlgebraElement {
            grade: 0,
            payload: Payload::Sl(m),
        })
    }

    /// Wraps a form, placing it in the grade with matching degree.
    pub fn form_element(&self, f: ExteriorElement) -> Result<AlgebraElement> {
        if f.n() != self.n {
            return Err(AlgebraError::DimensionMismatch(format!(
                "form over F^{} in an algebra over F^{}",
                f.n(),
                self.n
            )));
        }
        let grade = self.grade_of_degree(f.degree()).ok_or_else(|| {
            AlgebraError::DimensionMismatch(format!(
                "no grade of degree {} (degrees {:?})",
                f.degree(),
                &self.degrees[1..]
            ))
        })?;
        Ok(AlgebraElement {
            grade,
            payload: Payload::Form(f),
        })
    }

    fn check_element(&self, x: &AlgebraElement) -> Result<()> {
        self.check_grade(x.grade)
            .map_err(|_| AlgebraError::MixedAlgebras)?;
        let ok = match &x.payload {
            Payload::Sl(m) => x.grade == 0 && m.n() == self.n,
            Payload::Form(f) => {
                x.grade > 0 && f.n() == self.n && f.degree() == self.degrees[x.grade]
            }
        };
        if ok {
            Ok(())
        } else {
            Err(AlgebraError::MixedAlgebras)
        }
    }

    /// Which grade a global basis index belongs to, and its local index.
    pub fn locate(&self, index: usize) -> Result<(usize, usize)> {
        if index >= self.dim {
            return Err(AlgebraError::IndexOutOfRange {
                index,
                bound: self.dim,
            });
        }
        let g = self.offsets.partition_point(|&o| o <= index) - 1;
        Ok((g, index - self.offsets[g]))
    }

    /// The `index`-th global basis vector.
    pub fn basis_element(&self, index: usize) -> Result<AlgebraElement> {
        let (g, local) = self.locate(index)?;
        let payload = if g == 0 {
            Payload::Sl(self.sl_basis.elements()[local].clone())
        } else {
            let set = self.monomials[g][local];
            Payload::Form(ExteriorElement::monomial(self.n, set, Rational::one())?)
        };
        Ok(AlgebraElement { grade: g, payload })
    }

    pub fn basis(&self) -> Vec<AlgebraElement> {
        (0..self.dim)
            .map(|i| self.basis_element(i).expect("index in range"))
            .collect()
    }

    /// Coordinates within the element's own grade.
    pub fn grade_coordinates(&self, x: &AlgebraElement) -> Result<Vec<Rational>> {
        self.check_element(x)?;
        match &x.payload {
            Payload::Sl(m) => sl_coordinates(m),
            Payload::Form(f) => Ok(f.coordinates()),
        }
    }

    /// Sparse global coordinates `(index, value)` with zeros dropped.
    pub fn sparse_coordinates(&self, x: &AlgebraElement) -> Result<Vec<(usize, Rational)>> {
        let off = self.offsets[x.grade];
        Ok(self
            .grade_coordinates(x)?
            .into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (off + i, v))
            .collect())
    }

    /// Global coordinate column of length `dim`.
    pub fn coordinates(&self, x: &AlgebraElement) -> Result<Vec<Rational>> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, v) in self.sparse_coordinates(x)? {
            out[i] = v;
        }
        Ok(out)
    }

    pub fn element_from_coordinates(
        &self,
        grade: usize,
        coords: &[Rational],
    ) -> Result<AlgebraElement> {
        self.check_grade(grade)?;
        if coords.len() != self.dims[grade] {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{} coordinates for grade {grade} of dimension {}",
                coords.len(),
                self.dims[grade]
            )));
        }
        let payload = if grade == 0 {
            Payload::Sl(from_coordinates(self.n, coords)?)
        } else {
            Payload::Form(ExteriorElement::from_coordinates(
                self.n,
                self.degrees[grade],
                coords,
            )?)
        };
        Ok(AlgebraElement { grade, payload })
    }

    /// The graded bracket `[x, y]`.
    pub fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_element(x)?;
        self.check_element(y)?;
        let grade = (x.grade + y.grade) % self.grade_count();
        let payload = match (&x.payload, &y.payload) {
            (Payload::Sl(a), Payload::Sl(b)) => Payload::Sl(TracelessMatrix::new(
                matrix_commutator(a.matrix(), b.matrix())?,
            )?),
            (Payload::Sl(a), Payload::Form(t)) => Payload::Form(act(a, t)?),
            (Payload::Form(s), Payload::Sl(b)) => Payload::Form(act(b, s)?.neg()),
            (Payload::Form(s), Payload::Form(t)) => self.bracket_forms(s, t)?,
        };
        let out = AlgebraElement { grade, payload };
        debug_assert!(self.check_element(&out).is_ok());
        Ok(out)
    }

    fn bracket_forms(&self, s: &ExteriorElement, t: &ExteriorElement) -> Result<Payload> {
        let n = self.n;
        let total = s.degree() + t.degree();
        if total < n {
            Ok(Payload::Form(wedge(s, t)?))
        } else if total == n {
            Ok(Payload::Sl(self.contraction(s, t)?))
        } else {
            // Both stars have degree sum 2n - total < n, so this is a wedge.
            let inner = wedge(&hodge_star(s), &hodge_star(t))?;
            Ok(Payload::Form(hodge_star(&inner)))
        }
    }

    /// `⋀^i × ⋀^{n-i} → sl(n)`: the traceless part of the matrix
    /// `(⟨∂L/∂e_p, ∂(*H)/∂e_q⟩)_{p,q}`, where `L` is the argument of lower
    /// degree and `H` the other one (on a tie, `L` is the first argument).
    /// Swapping the roles flips the sign.
    fn contraction(&self, s: &ExteriorElement, t: &ExteriorElement) -> Result<TracelessMatrix> {
        let n = self.n;
        let (low, high, flip) = if s.degree() <= t.degree() {
            (s, t, false)
        } else {
            (t, s, true)
        };
        let star = hodge_star(high);
        let dl: Vec<ExteriorElement> = (0..n).map(|p| partial(low, p)).collect::<Result<_>>()?;
        let dh: Vec<ExteriorElement> = (0..n).map(|q| partial(&star, q)).collect::<Result<_>>()?;
        let mut entries = Vec::with_capacity(n * n);
        for a in &dl {
            for b in &dh {
                entries.push(if a.is_zero() || b.is_zero() {
                    Rational::zero()
                } else {
                    pairing(a, b)?
                });
            }
        }
        let raw = RatMatrix::from_vec(n, n, entries)?;
        let scale = if flip {
            -&self.contraction_scale
        } else {
            self.contraction_scale.clone()
        };
        Ok(make_traceless(&raw)?.scale(&scale))
    }

    /// Bracket of an arbitrary square matrix (not necessarily traceless) with
    /// an element, extending the grade-zero formulas to `gl(n)`.
    pub fn bracket_with_matrix(&self, m: &RatMatrix, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_element(y)?;
        if m.rows() != self.n || m.cols() != self.n {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{}x{} matrix in gl({})",
                m.rows(),
                m.cols(),
                self.n
            )));
        }
        let payload = match &y.payload {
            Payload::Sl(b) => Payload::Sl(TracelessMatrix::new(matrix_commutator(m, b.matrix())?)?),
            Payload::Form(t) => Payload::Form(act_matrix(m, t)?),
        };
        Ok(AlgebraElement {
            grade: y.grade,
            payload,
        })
    }
}

impl fmt::Display for ExtensionAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (0..self.grade_count())
            .map(|g| self.grade_label(g))
            .collect();
        write!(f, "dim {}, grades: {}", self.dim, labels.join(", "))
    }
}
