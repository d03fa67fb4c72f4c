#![allow(dead_code)]

use extalg::exterior::monomial_basis;
use extalg::sl::make_traceless;
use extalg::{ExteriorElement, RatMatrix, Rational, TracelessMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

pub fn coeff(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.random_range(-9..=9), rng.random_range(1..=9))
}

/// Random form with roughly half of the monomials present.
pub fn form(rng: &mut ChaCha8Rng, n: usize, d: usize) -> ExteriorElement {
    let mut terms = Vec::new();
    for s in monomial_basis(d, n).unwrap() {
        if rng.random_bool(0.5) {
            terms.push((s, coeff(rng)));
        }
    }
    ExteriorElement::from_terms(n, d, terms).unwrap()
}

pub fn matrix(rng: &mut ChaCha8Rng, n: usize) -> RatMatrix {
    RatMatrix::from_fn(n, n, |_, _| coeff(rng))
}

pub fn traceless(rng: &mut ChaCha8Rng, n: usize) -> TracelessMatrix {
    make_traceless(&matrix(rng, n)).unwrap()
}

pub fn sign_pow(e: usize) -> Rational {
    if e.is_multiple_of(2) {
        Rational::one()
    } else {
        Rational::from(-1)
    }
}
