//! Text formats: element expressions, rational matrix JSON and block-rank
//! tables.
//!
//! Element grammar (whitespace is allowed between tokens):
//!
//! ```text
//! element  := ['+' | '-'] term (('+' | '-') term)*
//! term     := rational ['*'] mono | mono | rational
//! mono     := 'e' idx ('*' 'e' idx)*
//! idx      := ['_'] digits
//! rational := digits ['/' digits]
//! ```
//!
//! A bare rational is only meaningful when it is zero.

use serde_json::Value;

use crate::algebra::{AlgebraElement, BlockRankTable, ExtensionAlgebra};
use crate::error::{AlgebraError, Result};
use crate::exterior::{ExteriorElement, IndexSet};
use crate::linalg::RatMatrix;
use crate::rational::Rational;
use crate::sl::{make_traceless, TracelessMatrix};

fn parse_err(position: usize, message: impl Into<String>) -> AlgebraError {
    AlgebraError::Parse {
        position,
        message: message.into(),
    }
}

/// One parsed term: coefficient and the indices in written order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Rational,
    pub indices: Vec<usize>,
    /// Byte offset of the term in the source.
    pub position: usize,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn unexpected(&self, what: &str) -> AlgebraError {
        match self.src.get(self.pos) {
            Some(&c) if c.is_ascii_graphic() => {
                parse_err(self.pos, format!("expected {what}, found '{}'", c as char))
            }
            Some(&c) => parse_err(self.pos, format!("expected {what}, found byte 0x{c:02x}")),
            None => parse_err(self.pos, format!("expected {what}, found end of input")),
        }
    }

    fn rational(&mut self) -> Result<Rational> {
        let start = self.pos;
        let num = self.digits().ok_or_else(|| self.unexpected("a number"))?;
        let mut value = num
            .parse::<Rational>()
            .map_err(|_| parse_err(start, "invalid number"))?;
        if self.eat(b'/') {
            self.skip_ws();
            let at = self.pos;
            let den = self
                .digits()
                .ok_or_else(|| self.unexpected("a denominator"))?;
            let den: Rational = den
                .parse()
                .map_err(|_| parse_err(at, "invalid denominator"))?;
            if den.is_zero() {
                return Err(parse_err(at, "zero denominator"));
            }
            value = value / den;
        }
        Ok(value)
    }

    fn index(&mut self) -> Result<usize> {
        // after 'e'
        if self.src.get(self.pos) == Some(&b'_') {
            self.pos += 1;
        }
        let at = self.pos;
        let d = self.digits().ok_or_else(|| self.unexpected("an index"))?;
        d.parse::<usize>()
            .map_err(|_| parse_err(at, "index too large"))
    }

    fn mono(&mut self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        loop {
            if !self.eat(b'e') {
                return Err(self.unexpected("'e'"));
            }
            out.push(self.index()?);
            if self.eat(b'*') {
                if self.peek() == Some(b'e') {
                    continue;
                }
                return Err(self.unexpected("'e' after '*'"));
            }
            return Ok(out);
        }
    }

    fn term(&mut self, sign: Rational) -> Result<Term> {
        let position = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some(b'e') => Ok(Term {
                coeff: sign,
                indices: self.mono()?,
                position,
            }),
            Some(c) if c.is_ascii_digit() => {
                let coeff = &sign * &self.rational()?;
                let has_star = self.eat(b'*');
                if has_star || self.peek() == Some(b'e') {
                    return Ok(Term {
                        coeff,
                        indices: self.mono()?,
                        position,
                    });
                }
                if coeff.is_zero() {
                    Ok(Term {
                        coeff,
                        indices: Vec::new(),
                        position,
                    })
                } else {
                    Err(parse_err(position, "a nonzero constant needs a monomial"))
                }
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    fn element(&mut self) -> Result<Vec<Term>> {
        let mut terms = Vec::new();
        let mut sign = if self.eat(b'-') {
            Rational::from(-1)
        } else {
            self.eat(b'+');
            Rational::one()
        };
        loop {
            terms.push(self.term(sign)?);
            match self.peek() {
                None => return Ok(terms),
                Some(b'+') => sign = Rational::one(),
                Some(b'-') => sign = Rational::from(-1),
                Some(_) => return Err(self.unexpected("'+', '-' or end of input")),
            }
            self.pos += 1;
        }
    }
}

/// Tokenizes and parses an expression into its raw terms.
pub fn parse_terms(text: &str) -> Result<Vec<Term>> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    p.element()
}

/// Parses a form over `F^n`. The degree is taken from the monomials, or from
/// `degree` when the expression is a bare zero.
pub fn parse_form(text: &str, n: usize, degree: Option<usize>) -> Result<ExteriorElement> {
    let terms = parse_terms(text)?;
    let mut deg = degree;
    for t in terms.iter().filter(|t| !t.indices.is_empty()) {
        match deg {
            None => deg = Some(t.indices.len()),
            Some(d) if d != t.indices.len() => {
                return Err(parse_err(
                    t.position,
                    format!(
                        "monomial of degree {} where degree {d} is expected",
                        t.indices.len()
                    ),
                ))
            }
            Some(_) => {}
        }
        if let Some(&bad) = t.indices.iter().find(|&&i| i >= n) {
            return Err(parse_err(
                t.position,
                format!("index {bad} out of range for n = {n}"),
            ));
        }
    }
    let degree = deg.ok_or_else(|| parse_err(0, "cannot infer the degree of 0"))?;
    if degree > n {
        return Err(parse_err(0, format!("degree {degree} exceeds n = {n}")));
    }
    let mut out = ExteriorElement::zero(n, degree);
    for t in terms.iter().filter(|t| !t.indices.is_empty()) {
        if let Some((set, sign)) = IndexSet::from_word(&t.indices) {
            out.add_term(set, &(&t.coeff * &Rational::from(sign)));
        }
    }
    Ok(out)
}

/// Parses an exterior-grade element of `algebra`. With `grade` set, the
/// degree must match that grade; otherwise the grade follows the degree.
pub fn parse_element(
    text: &str,
    algebra: &ExtensionAlgebra,
    grade: Option<usize>,
) -> Result<AlgebraElement> {
    let degree = match grade {
        Some(0) => {
            return Err(parse_err(
                0,
                "grade 0 elements are matrices, not expressions",
            ));
        }
        Some(g) if g >= algebra.grade_count() => {
            return Err(AlgebraError::IndexOutOfRange {
                index: g,
                bound: algebra.grade_count(),
            })
        }
        Some(g) => Some(algebra.grade_degree(g)),
        None => None,
    };
    let f = parse_form(text, algebra.n(), degree)?;
    if grade.is_none() && algebra.grade_of_degree(f.degree()).is_none() {
        return Err(parse_err(
            0,
            format!("the algebra has no grade of degree {}", f.degree()),
        ));
    }
    algebra.form_element(f)
}

fn rational_from_json(v: &Value, at: (usize, usize)) -> Result<Rational> {
    let bad = || AlgebraError::Parse {
        position: 0,
        message: format!("entry ({}, {}) is not a rational string", at.0, at.1),
    };
    match v {
        Value::String(s) => s.parse().map_err(|_| bad()),
        Value::Number(x) => x.as_i64().map(Rational::from).ok_or_else(bad),
        _ => Err(bad()),
    }
}

/// Parses a JSON array of rows of rational strings.
pub fn parse_rat_matrix(json_text: &str) -> Result<RatMatrix> {
    let v: Value = serde_json::from_str(json_text).map_err(|e| AlgebraError::Parse {
        position: e.column(),
        message: format!("malformed JSON: {e}"),
    })?;
    let rows = v
        .as_array()
        .ok_or_else(|| parse_err(0, "expected an array of rows"))?;
    let parsed: Vec<Vec<Rational>> = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.as_array()
                .ok_or_else(|| parse_err(0, format!("row {i} is not an array")))?
                .iter()
                .enumerate()
                .map(|(j, x)| rational_from_json(x, (i, j)))
                .collect()
        })
        .collect::<Result<_>>()?;
    RatMatrix::from_rows(parsed)
}

/// Parses an `n × n` matrix; with `project` the trace is removed, otherwise a
/// nonzero trace is rejected.
pub fn parse_matrix(json_text: &str, n: usize, project: bool) -> Result<TracelessMatrix> {
    let m = parse_rat_matrix(json_text)?;
    if m.rows() != n || m.cols() != n {
        return Err(AlgebraError::DimensionMismatch(format!(
            "expected a {n}x{n} matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if project {
        make_traceless(&m)
    } else {
        TracelessMatrix::new(m)
    }
}

pub fn matrix_to_json(m: &RatMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    m.row(i)
                        .iter()
                        .map(|x| Value::String(x.to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

/// Bordered grid with a `g00 … total` header, one row per power.
pub fn render_block_table(t: &BlockRankTable) -> String {
    let mut header = t.labels();
    header.push("total".to_string());
    let body: Vec<Vec<String>> = t
        .powers
        .iter()
        .map(|row| {
            row.blocks
                .iter()
                .chain(std::iter::once(&row.total))
                .map(|r| r.to_string())
                .collect()
        })
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|c| {
            body.iter()
                .map(|r| r[c].len())
                .chain(std::iter::once(header[c].len()))
                .max()
                .unwrap_or(0)
        })
        .collect();
    let rule: String = widths
        .iter()
        .map(|w| format!("+{}", "-".repeat(*w)))
        .collect::<String>()
        + "+\n";
    let line = |cells: &[String]| -> String {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("|{c:<w$}"))
            .collect::<String>()
            + "|\n"
    };
    let mut out = rule.clone();
    out += &line(&header);
    out += &rule;
    for row in &body {
        out += &line(row);
        out += &rule;
    }
    out
}
