//! The exterior algebra on `F^n`: monomials `e_I` indexed by strictly
//! increasing index sets, wedge products, coordinate derivatives and the
//! Hodge star for the volume form `e_0 ∧ … ∧ e_{n-1}`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::rational::Rational;

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 63;

/// A strictly increasing set of indices in `[0, n)`, stored as a bitmask.
///
/// Ordered lexicographically by the increasing index lists, so iteration over
/// a `BTreeMap<IndexSet, _>` matches the monomial basis order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct IndexSet(u64);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    pub fn from_mask(mask: u64) -> Self {
        IndexSet(mask)
    }

    /// From a strictly increasing slice.
    pub fn from_sorted(indices: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for w in indices.windows(2) {
            if w[0] >= w[1] {
                return Err(AlgebraError::InvalidParameters(format!(
                    "index list {indices:?} is not strictly increasing"
                )));
            }
        }
        for &i in indices {
            if i >= MAX_DIM {
                return Err(AlgebraError::IndexOutOfRange {
                    index: i,
                    bound: MAX_DIM,
                });
            }
            mask |= 1 << i;
        }
        Ok(IndexSet(mask))
    }

    /// Sorts an arbitrary index word. Returns `None` when an index repeats
    /// (the monomial vanishes), otherwise the set and the permutation sign.
    pub fn from_word(word: &[usize]) -> Option<(Self, i32)> {
        let mut mask = 0u64;
        let mut inversions = 0u32;
        for &i in word {
            if i >= MAX_DIM {
                return None;
            }
            let bit = 1u64 << i;
            if mask & bit != 0 {
                return None;
            }
            // earlier indices larger than i each contribute one inversion
            inversions += (mask & !((bit << 1) - 1)).count_ones();
            mask |= bit;
        }
        Some((
            IndexSet(mask),
            if inversions.is_multiple_of(2) { 1 } else { -1 },
        ))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 & (1 << i) != 0
    }

    /// Largest index plus one, or zero for the empty set.
    pub fn span(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(i)
            }
        })
    }

    pub fn indices(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn complement(self, n: usize) -> IndexSet {
        IndexSet(!self.0 & low_mask(n))
    }

    pub fn with(self, i: usize) -> IndexSet {
        IndexSet(self.0 | (1 << i))
    }

    pub fn without(self, i: usize) -> IndexSet {
        IndexSet(self.0 & !(1 << i))
    }

    /// Number of elements strictly below `i`.
    pub fn rank_of(self, i: usize) -> usize {
        (self.0 & ((1u64 << i) - 1)).count_ones() as usize
    }
}

fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Ord for IndexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.0 == other.0 {
            return Ordering::Equal;
        }
        let diff = self.0 ^ other.0;
        let t = diff.trailing_zeros();
        // Below t both lists agree. The set holding t has t next; the other has
        // either a larger next index or has ended (and is then a prefix).
        let (holder_is_self, other_mask) = if self.0 & (1 << t) != 0 {
            (true, other.0)
        } else {
            (false, self.0)
        };
        let other_continues = (other_mask >> t) != 0;
        let holder_smaller = other_continues;
        match (holder_is_self, holder_smaller) {
            (true, true) | (false, false) => Ordering::Less,
            _ => Ordering::Greater,
        }
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Sign of the permutation sorting the concatenation `a | b` (disjoint sets).
pub fn concat_sign(a: IndexSet, b: IndexSet) -> i32 {
    let mut inversions = 0u32;
    for j in b.iter() {
        inversions += (a.0 >> j >> 1).count_ones();
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All `C(n, d)` strictly increasing `d`-subsets of `{0, …, n-1}` in
/// lexicographic order.
pub fn monomial_basis(d: usize, n: usize) -> Result<Vec<IndexSet>> {
    if d > n || n > MAX_DIM {
        return Err(AlgebraError::DegreeOutOfRange { degree: d, n });
    }
    let mut out = Vec::with_capacity(binomial(n, d));
    let mut current = Vec::with_capacity(d);
    fn rec(start: usize, d: usize, n: usize, current: &mut Vec<usize>, out: &mut Vec<IndexSet>) {
        if current.len() == d {
            let mask = current.iter().fold(0u64, |m, &i| m | (1 << i));
            out.push(IndexSet(mask));
            return;
        }
        let remaining = d - current.len();
        for i in start..=(n - remaining) {
            current.push(i);
            rec(i + 1, d, n, current, out);
            current.pop();
        }
    }
    rec(0, d, n, &mut current, &mut out);
    Ok(out)
}

/// Position of `set` within `monomial_basis(set.len(), n)`.
pub fn lex_rank(set: IndexSet, n: usize) -> usize {
    let d = set.len();
    let mut rank = 0;
    let mut prev = 0;
    for (pos, c) in set.iter().enumerate() {
        for v in prev..c {
            rank += binomial(n - 1 - v, d - 1 - pos);
        }
        prev = c + 1;
    }
    rank
}

/// A homogeneous element of `⋀^d F^n` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExteriorElement {
    n: usize,
    degree: usize,
    terms: BTreeMap<IndexSet, Rational>,
}

impl ExteriorElement {
    pub fn zero(n: usize, degree: usize) -> Self {
        ExteriorElement {
            n,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(n: usize, set: IndexSet, coeff: Rational) -> Result<Self> {
        let mut e = Self::zero(n, set.len());
        e.check_set(set)?;
        e.add_term(set, &coeff);
        Ok(e)
    }

    /// Shorthand for `e_{i_1} ∧ … ∧ e_{i_d}` with coefficient one; the indices
    /// may come in any order.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        if let Some(&bad) = word.iter().find(|&&i| i >= n) {
            return Err(AlgebraError::IndexOutOfRange {
                index: bad,
                bound: n,
            });
        }
        match IndexSet::from_word(word) {
            None => Ok(Self::zero(n, word.len())),
            Some((set, sign)) => Self::monomial(n, set, Rational::from(sign)),
        }
    }

    pub fn from_terms(
        n: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (IndexSet, Rational)>,
    ) -> Result<Self> {
        if degree > n || n > MAX_DIM {
            return Err(AlgebraError::DegreeOutOfRange { degree, n });
        }
        let mut e = Self::zero(n, degree);
        for (set, c) in terms {
            e.check_set(set)?;
            e.add_term(set, &c);
        }
        Ok(e)
    }

    /// Inverse of [`coordinates`](Self::coordinates).
    pub fn from_coordinates(n: usize, degree: usize, coords: &[Rational]) -> Result<Self> {
        let basis = monomial_basis(degree, n)?;
        if coords.len() != basis.len() {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{} coordinates for a space of dimension {}",
                coords.len(),
                basis.len()
            )));
        }
        Self::from_terms(n, degree, basis.into_iter().zip(coords.iter().cloned()))
    }

    fn check_set(&self, set: IndexSet) -> Result<()> {
        if set.len() != self.degree {
            return Err(AlgebraError::DimensionMismatch(format!(
                "monomial of degree {} in an element of degree {}",
                set.len(),
                self.degree
            )));
        }
        if set.span() > self.n {
            return Err(AlgebraError::IndexOutOfRange {
                index: set.span() - 1,
                bound: self.n,
            });
        }
        Ok(())
    }

    pub(crate) fn add_term(&mut self, set: IndexSet, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&set) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&set);
                }
            }
            None => {
                self.terms.insert(set, c.clone());
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<IndexSet, Rational> {
        &self.terms
    }

    pub fn coeff(&self, set: IndexSet) -> Rational {
        self.terms.get(&set).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.degree != other.degree {
            return Err(AlgebraError::DimensionMismatch(format!(
                "degree {} in dimension {} vs degree {} in dimension {}",
                self.degree, self.n, other.degree, other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(*s, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(*s, &-c);
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero(self.n, self.degree);
        if !s.is_zero() {
            for (set, c) in &self.terms {
                out.terms.insert(*set, c * s);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rational::from(-1))
    }

    /// Coefficient vector against `monomial_basis(degree, n)`.
    pub fn coordinates(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); binomial(self.n, self.degree)];
        for (set, c) in &self.terms {
            out[lex_rank(*set, self.n)] = c.clone();
        }
        out
    }
}

/// `S ∧ T`, extended bilinearly from `e_I ∧ e_J = ±e_{I∪J}`.
pub fn wedge(s: &ExteriorElement, t: &ExteriorElement) -> Result<ExteriorElement> {
    if s.n != t.n {
        return Err(AlgebraError::DimensionMismatch(format!(
            "wedge in dimensions {} and {}",
            s.n, t.n
        )));
    }
    let degree = s.degree + t.degree;
    let mut out = ExteriorElement::zero(s.n, degree);
    if degree > s.n {
        return Ok(out);
    }
    for (a, ca) in &s.terms {
        for (b, cb) in &t.terms {
            if a.0 & b.0 != 0 {
                continue;
            }
            let c = ca * cb;
            let c = if concat_sign(*a, *b) < 0 { -c } else { c };
            out.add_term(IndexSet(a.0 | b.0), &c);
        }
    }
    Ok(out)
}

/// Left derivative `∂S/∂e_p`: removes `p` with sign `(-1)^position`.
/// Scalars differentiate to the zero scalar.
pub fn partial(s: &ExteriorElement, p: usize) -> Result<ExteriorElement> {
    if p >= s.n {
        return Err(AlgebraError::IndexOutOfRange {
            index: p,
            bound: s.n,
        });
    }
    let mut out = ExteriorElement::zero(s.n, s.degree.saturating_sub(1));
    for (set, c) in &s.terms {
        if !set.contains(p) {
            continue;
        }
        let c = if set.rank_of(p) % 2 == 0 {
            c.clone()
        } else {
            -c
        };
        out.add_term(set.without(p), &c);
    }
    Ok(out)
}

/// Hodge star: `*(e_I) = sign(I|Iᶜ) e_{Iᶜ}`, so that `e_I ∧ *e_I = Ω`.
pub fn hodge_star(s: &ExteriorElement) -> ExteriorElement {
    let mut out = ExteriorElement::zero(s.n, s.n - s.degree);
    for (set, c) in &s.terms {
        let comp = set.complement(s.n);
        let c = if concat_sign(*set, comp) < 0 {
            -c
        } else {
            c.clone()
        };
        out.terms.insert(comp, c);
    }
    out
}

/// The bilinear form with the monomials orthonormal.
pub fn pairing(s: &ExteriorElement, t: &ExteriorElement) -> Result<Rational> {
    s.check_compatible(t)?;
    let (small, large) = if s.terms.len() <= t.terms.len() {
        (s, t)
    } else {
        (t, s)
    };
    Ok(small
        .terms
        .iter()
        .filter_map(|(set, c)| large.terms.get(set).map(|d| c * d))
        .sum())
}

/// Canonical text: `e0*e1 + 2/3*e2*e3`, terms in lexicographic order.
impl fmt::Display for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (set, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if set.is_empty() {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            let mono: Vec<String> = set.iter().map(|i| format!("e{i}")).collect();
            write!(f, "{}", mono.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}; Λ^{} F^{}]", self, self.degree, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, word: &[usize]) -> ExteriorElement {
        ExteriorElement::from_word(n, word).unwrap()
    }

    fn set(ix: &[usize]) -> IndexSet {
        IndexSet::from_sorted(ix).unwrap()
    }

    #[test]
    fn basis_enumeration() {
        assert_eq!(monomial_basis(0, 4).unwrap(), vec![IndexSet::EMPTY]);
        let b = monomial_basis(2, 4).unwrap();
        let expect: Vec<IndexSet> = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]
            .iter()
            .map(|p| set(p))
            .collect();
        assert_eq!(b, expect);
        assert_eq!(monomial_basis(4, 8).unwrap().len(), 70);
        assert!(monomial_basis(5, 4).is_err());
    }

    #[test]
    fn lex_order_and_rank_agree_with_enumeration() {
        for n in 0..=9 {
            for d in 0..=n {
                let b = monomial_basis(d, n).unwrap();
                for (i, s) in b.iter().enumerate() {
                    assert_eq!(lex_rank(*s, n), i);
                }
                assert!(b.windows(2).all(|p| p[0] < p[1]));
            }
        }
        // prefix is smaller
        assert!(set(&[0, 1]) < set(&[0, 1, 2]));
        assert!(set(&[0, 2]) > set(&[0, 1, 5]));
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge(&w(4, &[0]), &w(4, &[1])).unwrap(), w(4, &[0, 1]));
        assert_eq!(
            wedge(&w(4, &[1]), &w(4, &[0])).unwrap(),
            w(4, &[0, 1]).neg()
        );
        assert!(wedge(&w(4, &[0, 1]), &w(4, &[0, 2])).unwrap().is_zero());
        assert!(wedge(&w(4, &[0]), &w(5, &[1])).is_err());
    }

    #[test]
    fn partial_signs() {
        assert_eq!(partial(&w(4, &[0, 1]), 0).unwrap(), w(4, &[1]));
        assert_eq!(partial(&w(4, &[0, 1]), 1).unwrap(), w(4, &[0]).neg());
        assert!(partial(&w(4, &[2, 3]), 0).unwrap().is_zero());
        assert!(partial(&w(4, &[2, 3]), 4).is_err());
    }

    #[test]
    fn hodge_examples() {
        assert_eq!(hodge_star(&w(4, &[0, 1])), w(4, &[2, 3]));
        assert_eq!(hodge_star(&w(4, &[2, 3])), w(4, &[0, 1]));
        assert_eq!(hodge_star(&w(9, &[0, 1, 2])), w(9, &[3, 4, 5, 6, 7, 8]));
        // (1,3,0,2) has three inversions
        assert_eq!(hodge_star(&w(4, &[1, 3])), w(4, &[0, 2]).neg());
    }

    #[test]
    fn pairing_examples() {
        let a = w(4, &[1, 2]);
        assert_eq!(pairing(&a, &a).unwrap(), Rational::one());
        assert_eq!(pairing(&a, &w(4, &[1, 3])).unwrap(), Rational::zero());
        let s = a.scale(&Rational::new(2, 3)).add(&w(4, &[0, 3])).unwrap();
        assert_eq!(pairing(&s, &a).unwrap(), Rational::new(2, 3));
        assert!(pairing(&a, &w(4, &[1])).is_err());
    }

    #[test]
    fn coordinate_examples() {
        let one = Rational::one;
        let z = Rational::zero;
        assert_eq!(
            w(4, &[0, 1]).coordinates(),
            vec![one(), z(), z(), z(), z(), z()]
        );
        assert_eq!(ExteriorElement::zero(4, 2).coordinates(), vec![z(); 6]);
        let s = w(4, &[0, 1]).add(&w(4, &[2, 3])).unwrap();
        assert_eq!(s.coordinates(), vec![one(), z(), z(), z(), z(), one()]);
        assert_eq!(
            ExteriorElement::from_coordinates(4, 2, &s.coordinates()).unwrap(),
            s
        );
    }

    #[test]
    fn display_canonical() {
        let s = w(4, &[2, 3])
            .scale(&Rational::new(2, 3))
            .add(&w(4, &[0, 1]))
            .unwrap();
        assert_eq!(s.to_string(), "e0*e1 + 2/3*e2*e3");
        assert_eq!(w(4, &[1, 0]).to_string(), "-e0*e1");
        assert_eq!(ExteriorElement::zero(4, 2).to_string(), "0");
    }
}
