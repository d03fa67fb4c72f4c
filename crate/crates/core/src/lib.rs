//! Exact rational computations in the graded algebras
//! `sl(n) ⊕ ⋀^k F^n ⊕ ⋀^{2k mod n} F^n ⊕ …`: brackets, adjoint matrices,
//! Killing forms, block-rank tables and randomized axiom checks.
//!
//! ```
//! use extalg::{ExtensionAlgebra, io::parse_element};
//!
//! let alg = ExtensionAlgebra::new(2, 4).unwrap();
//! assert_eq!(alg.dim(), 21);
//! let x = parse_element("e0*e1 + e2*e3", &alg, None).unwrap();
//! let y = parse_element("e0*e2", &alg, None).unwrap();
//! assert!(extalg::jacobi_holds(&alg, &x, &y).unwrap());
//! ```

pub mod algebra;
pub mod cli;
pub mod error;
pub mod exterior;
pub mod io;
pub mod linalg;
pub mod rational;
pub mod sl;

pub use algebra::{
    block_ranks, centralizer_in_grade, is_ad_semisimple, jacobi_holds, random_element,
    verify_axioms, AdMatrix, AlgebraElement, AxiomReport, BlockRankTable, ExtensionAlgebra,
    Payload, PowerDepth,
};
pub use error::{AlgebraError, Result};
pub use exterior::{ExteriorElement, IndexSet};
pub use linalg::{RatMatrix, RatPolynomial};
pub use rational::Rational;
pub use sl::TracelessMatrix;
