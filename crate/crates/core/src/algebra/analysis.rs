//! Axiom checks and structural queries on adjoint operators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{AlgebraElement, ExtensionAlgebra, Payload};
use crate::error::{AlgebraError, Result};
use crate::exterior::ExteriorElement;
use crate::linalg::{is_squarefree, matrix_commutator, min_poly, null_space, RatMatrix};
use crate::rational::Rational;
use crate::sl::make_traceless;

fn random_coeff(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.random_range(-9..=9), rng.random_range(1..=9))
}

/// Random element of a grade: coefficients `p/q` with `p ∈ [-9, 9]`,
/// `q ∈ [1, 9]`; grade-zero samples are projected to trace zero.
pub fn random_element(
    alg: &ExtensionAlgebra,
    grade: usize,
    rng: &mut ChaCha8Rng,
) -> Result<AlgebraElement> {
    let n = alg.n();
    if grade == 0 {
        let m = RatMatrix::from_fn(n, n, |_, _| random_coeff(rng));
        return alg.sl_element(make_traceless(&m)?);
    }
    if grade >= alg.grade_count() {
        return Err(AlgebraError::IndexOutOfRange {
            index: grade,
            bound: alg.grade_count(),
        });
    }
    let terms: Vec<_> = alg
        .monomials(grade)
        .iter()
        .map(|s| (*s, random_coeff(rng)))
        .collect();
    let f = ExteriorElement::from_terms(n, alg.grade_degree(grade), terms)?;
    Ok(AlgebraElement {
        grade,
        payload: Payload::Form(f),
    })
}

/// `ad([x, y]) == [ad x, ad y]`.
pub fn jacobi_holds(
    alg: &ExtensionAlgebra,
    x: &AlgebraElement,
    y: &AlgebraElement,
) -> Result<bool> {
    let xy = alg.bracket(x, y)?;
    let (lhs, (ax, ay)) = rayon::join(|| alg.ad(&xy), || rayon::join(|| alg.ad(x), || alg.ad(y)));
    let rhs = matrix_commutator(ax?.matrix(), ay?.matrix())?;
    Ok(lhs?.matrix() == &rhs)
}

/// Jacobi check with the first argument an arbitrary square matrix acting
/// through the `gl(n)` extension of the grade-zero bracket.
pub fn jacobi_holds_for_matrix(
    alg: &ExtensionAlgebra,
    m: &RatMatrix,
    y: &AlgebraElement,
) -> Result<bool> {
    let my = alg.bracket_with_matrix(m, y)?;
    let lhs = alg.ad(&my)?;
    let rhs = matrix_commutator(alg.ad_of_matrix(m)?.matrix(), alg.ad(y)?.matrix())?;
    Ok(lhs.matrix() == &rhs)
}

/// Outcome for one ordered pair of grades.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub grades: (usize, usize),
    pub samples: usize,
    /// `[x,y] + [y,x] = 0` on every sample.
    pub skew: bool,
    /// `[x,y] - [y,x] = 0` on every sample.
    pub symmetric: bool,
    /// `ad [x,y] = [ad x, ad y]` on every sample.
    pub jacobi: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub k: usize,
    pub n: usize,
    pub seed: u64,
    pub pairs: Vec<PairReport>,
}

impl AxiomReport {
    pub fn skew(&self) -> bool {
        self.pairs.iter().all(|p| p.skew)
    }

    pub fn jacobi(&self) -> bool {
        self.pairs.iter().all(|p| p.jacobi)
    }

    pub fn passed(&self) -> bool {
        self.skew() && self.jacobi()
    }

    pub fn pair(&self, i: usize, j: usize) -> Option<&PairReport> {
        self.pairs.iter().find(|p| p.grades == (i, j))
    }
}

struct Trial {
    skew: bool,
    symmetric: bool,
    jacobi: bool,
}

fn run_trial(
    alg: &ExtensionAlgebra,
    gi: usize,
    gj: usize,
    seed: u64,
    stream: u64,
) -> Result<Trial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let x = random_element(alg, gi, &mut rng)?;
    let y = random_element(alg, gj, &mut rng)?;
    let xy = alg.bracket(&x, &y)?;
    let yx = alg.bracket(&y, &x)?;
    Ok(Trial {
        skew: xy.add(&yx)?.is_zero(),
        symmetric: xy.sub(&yx)?.is_zero(),
        jacobi: jacobi_holds(alg, &x, &y)?,
    })
}

/// Seeded random checks of skew-symmetry and the Jacobi identity for every
/// ordered pair of grades, or only `grades` when given.
pub fn verify_axioms(
    alg: &ExtensionAlgebra,
    samples: usize,
    seed: u64,
    grades: Option<(usize, usize)>,
) -> Result<AxiomReport> {
    if samples == 0 {
        return Err(AlgebraError::InvalidParameters(
            "samples must be at least 1".into(),
        ));
    }
    let m = alg.grade_count();
    let pairs: Vec<(usize, usize)> = match grades {
        Some((i, j)) => {
            if i >= m || j >= m {
                return Err(AlgebraError::IndexOutOfRange {
                    index: i.max(j),
                    bound: m,
                });
            }
            vec![(i, j)]
        }
        None => (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).collect(),
    };
    let reports = pairs
        .par_iter()
        .map(|&(i, j)| {
            let trials = (0..samples)
                .into_par_iter()
                .map(|s| run_trial(alg, i, j, seed, ((i * m + j) * samples + s) as u64))
                .collect::<Result<Vec<_>>>()?;
            Ok(PairReport {
                grades: (i, j),
                samples,
                skew: trials.iter().all(|t| t.skew),
                symmetric: trials.iter().all(|t| t.symmetric),
                jacobi: trials.iter().all(|t| t.jacobi),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AxiomReport {
        k: alg.k(),
        n: alg.n(),
        seed,
        pairs: reports,
    })
}

/// Diagonalizable adjoint over the algebraic closure: the minimal polynomial
/// of `ad x` is squarefree.
pub fn is_ad_semisimple(alg: &ExtensionAlgebra, x: &AlgebraElement) -> Result<bool> {
    let a = alg.ad(x)?;
    is_squarefree(&min_poly(a.matrix())?)
}

/// Basis of `{v in grade g : [v, x] = 0}`.
pub fn centralizer_in_grade(
    alg: &ExtensionAlgebra,
    x: &AlgebraElement,
    grade: usize,
) -> Result<Vec<AlgebraElement>> {
    let m = alg.grade_count();
    if grade >= m {
        return Err(AlgebraError::IndexOutOfRange {
            index: grade,
            bound: m,
        });
    }
    let target = (grade + x.grade()) % m;
    let off = alg.offset(grade);
    let columns: Vec<Vec<Rational>> = (0..alg.grade_dim(grade))
        .into_par_iter()
        .map(|i| {
            let v = alg.basis_element(off + i)?;
            alg.grade_coordinates(&alg.bracket(&v, x)?)
        })
        .collect::<Result<_>>()?;
    let system = RatMatrix::from_columns(alg.grade_dim(target), &columns)?;
    null_space(&system)
        .into_iter()
        .map(|c| alg.element_from_coordinates(grade, &c))
        .collect()
}
