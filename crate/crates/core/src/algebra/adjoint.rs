//! Adjoint matrices, the Killing matrix and block-rank tables.

use std::collections::HashMap;

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use super::{AlgebraElement, ExtensionAlgebra};
use crate::error::Result;
use crate::linalg::{mat_rank, RatMatrix};
use crate::rational::Rational;

/// Matrix of `y ↦ [x, y]` in the global basis, with the grade layout needed
/// to cut it into blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdMatrix {
    matrix: RatMatrix,
    offsets: Vec<usize>,
}

impl AdMatrix {
    /// Wraps an arbitrary `dim × dim` matrix with the algebra's grade layout.
    pub fn from_matrix(algebra: &ExtensionAlgebra, matrix: RatMatrix) -> Result<Self> {
        if matrix.rows() != algebra.dim() || matrix.cols() != algebra.dim() {
            return Err(crate::error::AlgebraError::DimensionMismatch(format!(
                "{}x{} matrix for an algebra of dimension {}",
                matrix.rows(),
                matrix.cols(),
                algebra.dim()
            )));
        }
        Ok(AdMatrix {
            matrix,
            offsets: algebra.offsets().to_vec(),
        })
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> RatMatrix {
        self.matrix
    }

    pub fn grade_count(&self) -> usize {
        self.offsets.len()
    }

    fn range(&self, g: usize) -> std::ops::Range<usize> {
        let end = self
            .offsets
            .get(g + 1)
            .copied()
            .unwrap_or(self.matrix.rows());
        self.offsets[g]..end
    }

    /// Block mapping grade `col_grade` into grade `row_grade`.
    pub fn block(&self, row_grade: usize, col_grade: usize) -> Result<RatMatrix> {
        self.matrix
            .block(self.range(row_grade), self.range(col_grade))
    }

    pub fn with_matrix(&self, matrix: RatMatrix) -> Self {
        AdMatrix {
            matrix,
            offsets: self.offsets.clone(),
        }
    }
}

impl ExtensionAlgebra {
    /// Columns of `ad x` in sparse form: `(row, col, value)`.
    pub fn ad_sparse(&self, x: &AlgebraElement) -> Result<Vec<(usize, usize, Rational)>> {
        let cols: Vec<Vec<(usize, usize, Rational)>> = (0..self.dim())
            .into_par_iter()
            .map(|c| {
                let y = self.basis_element(c)?;
                let z = self.bracket(x, &y)?;
                Ok(self
                    .sparse_coordinates(&z)?
                    .into_iter()
                    .map(|(r, v)| (r, c, v))
                    .collect())
            })
            .collect::<Result<_>>()?;
        Ok(cols.into_iter().flatten().collect())
    }

    /// The adjoint matrix: column `c` holds the coordinates of `[x, b_c]`.
    pub fn ad(&self, x: &AlgebraElement) -> Result<AdMatrix> {
        let d = self.dim();
        let mut data = vec![Rational::zero(); d * d];
        for (r, c, v) in self.ad_sparse(x)? {
            data[r * d + c] = v;
        }
        AdMatrix::from_matrix(self, RatMatrix::from_vec(d, d, data)?)
    }

    /// Adjoint matrix of an arbitrary square matrix acting through the
    /// `gl(n)` extension of the grade-zero bracket.
    pub fn ad_of_matrix(&self, m: &RatMatrix) -> Result<AdMatrix> {
        let d = self.dim();
        let cols: Vec<Vec<(usize, Rational)>> = (0..d)
            .into_par_iter()
            .map(|c| {
                let y = self.basis_element(c)?;
                self.sparse_coordinates(&self.bracket_with_matrix(m, &y)?)
            })
            .collect::<Result<_>>()?;
        let mut data = vec![Rational::zero(); d * d];
        for (c, col) in cols.into_iter().enumerate() {
            for (r, v) in col {
                data[r * d + c] = v;
            }
        }
        AdMatrix::from_matrix(self, RatMatrix::from_vec(d, d, data)?)
    }

    /// `K_ab = trace(ad b_a · ad b_b)` over the global basis.
    pub fn killing_matrix(&self) -> Result<RatMatrix> {
        let d = self.dim();
        let ads: Vec<Vec<(usize, usize, Rational)>> = (0..d)
            .into_par_iter()
            .map(|i| self.ad_sparse(&self.basis_element(i)?))
            .collect::<Result<_>>()?;
        let lookup: Vec<HashMap<(usize, usize), &Rational>> = ads
            .iter()
            .map(|entries| entries.iter().map(|(r, c, v)| ((*r, *c), v)).collect())
            .collect();
        // trace(A B) = Σ_{r,c} A_rc B_cr
        let upper: Vec<Vec<Rational>> = (0..d)
            .into_par_iter()
            .map(|a| {
                (a..d)
                    .map(|b| {
                        ads[a]
                            .iter()
                            .filter_map(|(r, c, v)| lookup[b].get(&(*c, *r)).map(|w| v * *w))
                            .sum()
                    })
                    .collect()
            })
            .collect();
        Ok(RatMatrix::from_fn(d, d, |i, j| {
            if i <= j {
                upper[i][j - i].clone()
            } else {
                upper[j][i - j].clone()
            }
        }))
    }

    /// Killing form `B(x, y) = trace(ad x · ad y)` evaluated directly.
    pub fn killing_form(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<Rational> {
        let ax = self.ad(x)?;
        let ay = self.ad(y)?;
        Ok(ax.matrix().mul(ay.matrix())?.trace())
    }
}

/// How many powers a block-rank table covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerDepth {
    Fixed(usize),
    /// Until the full rank stops dropping, capped at the matrix size.
    Auto,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockRankRow {
    /// Row-major ranks of the `(i, j)` grade blocks.
    pub blocks: Vec<usize>,
    pub total: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockRankTable {
    pub grade_count: usize,
    pub powers: Vec<BlockRankRow>,
}

impl BlockRankTable {
    pub fn labels(&self) -> Vec<String> {
        let m = self.grade_count;
        (0..m * m).map(|b| format!("g{}{}", b / m, b % m)).collect()
    }

    pub fn totals(&self) -> Vec<usize> {
        self.powers.iter().map(|r| r.total).collect()
    }

    pub fn to_json(&self) -> Value {
        let labels = self.labels();
        let powers: Vec<Value> = self
            .powers
            .iter()
            .map(|row| {
                let blocks: Map<String, Value> = labels
                    .iter()
                    .zip(&row.blocks)
                    .map(|(l, r)| (l.clone(), json!(r)))
                    .collect();
                json!({ "blocks": blocks, "total": row.total })
            })
            .collect();
        json!({ "powers": powers })
    }
}

fn rank_row(a: &AdMatrix) -> Result<BlockRankRow> {
    let m = a.grade_count();
    let (blocks, total) = rayon::join(
        || {
            (0..m * m)
                .into_par_iter()
                .map(|b| a.block(b / m, b % m).map(|blk| mat_rank(&blk)))
                .collect::<Result<Vec<usize>>>()
        },
        || mat_rank(a.matrix()),
    );
    Ok(BlockRankRow {
        blocks: blocks?,
        total,
    })
}

/// Ranks of every grade block of `A, A^2, …`, plus the full rank.
pub fn block_ranks(a: &AdMatrix, depth: PowerDepth) -> Result<BlockRankTable> {
    let size = a.matrix().rows().max(1);
    let (limit, auto) = match depth {
        PowerDepth::Fixed(p) => (p.max(1), false),
        PowerDepth::Auto => (size, true),
    };
    let mut powers: Vec<BlockRankRow> = Vec::new();
    let mut current = a.clone();
    for p in 1..=limit {
        let row = rank_row(&current)?;
        let stop =
            auto && (row.total == 0 || powers.last().is_some_and(|prev| prev.total == row.total));
        powers.push(row);
        if stop || p == limit {
            break;
        }
        current = current.with_matrix(current.matrix().mul(a.matrix())?);
    }
    Ok(BlockRankTable {
        grade_count: a.grade_count(),
        powers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::ExteriorElement;

    #[test]
    fn zero_element_has_zero_ad() {
        let alg = ExtensionAlgebra::new(2, 4).unwrap();
        let z = alg.zero(1).unwrap();
        let a = alg.ad(&z).unwrap();
        assert!(a.matrix().is_zero());
        let t = block_ranks(&a, PowerDepth::Auto).unwrap();
        assert_eq!(t.powers.len(), 1);
        assert_eq!(
            t.powers[0],
            BlockRankRow {
                blocks: vec![0; 4],
                total: 0
            }
        );
    }

    #[test]
    fn odd_grade_ad_is_off_diagonal() {
        let alg = ExtensionAlgebra::new(2, 4).unwrap();
        let x = alg
            .form_element(ExteriorElement::from_word(4, &[0, 2]).unwrap())
            .unwrap();
        let t = block_ranks(&alg.ad(&x).unwrap(), PowerDepth::Fixed(1)).unwrap();
        let row = &t.powers[0];
        assert_eq!(row.blocks[0], 0);
        assert_eq!(row.blocks[3], 0);
        assert!(row.blocks[1] > 0 && row.blocks[2] > 0);
    }

    #[test]
    fn json_layout() {
        let t = BlockRankTable {
            grade_count: 2,
            powers: vec![BlockRankRow {
                blocks: vec![0, 5, 5, 0],
                total: 10,
            }],
        };
        assert_eq!(
            t.to_json().to_string(),
            r#"{"powers":[{"blocks":{"g00":0,"g01":5,"g10":5,"g11":0},"total":10}]}"#
        );
    }
}
