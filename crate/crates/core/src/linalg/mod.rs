//! Exact dense linear algebra over the rationals.

mod elimination;
mod matrix;
mod poly;

pub use elimination::{determinant, mat_rank, mat_solve, null_space};
pub use matrix::{matrix_commutator, RatMatrix};
pub use poly::{
    char_poly, count_real_roots, is_squarefree, min_poly, root_bound, sturm_sequence, RatPolynomial,
};
