//! Python bindings. Exterior elements travel as expression strings such as
//! `"e0*e1 + 2/3*e2*e3"`, matrices as nested lists of rational strings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyList, PyString};
use serde_json::Value;

use extalg::algebra::{
    block_ranks, centralizer_in_grade, is_ad_semisimple, verify_axioms, AlgebraElement,
    ExtensionAlgebra, Payload, PowerDepth,
};
use extalg::exterior::{hodge_star, wedge};
use extalg::io::{matrix_to_json, parse_element, parse_form, render_block_table};
use extalg::linalg::{char_poly, mat_rank, min_poly, RatMatrix};
use extalg::sl::make_traceless;
use extalg::{AlgebraError, Rational, TracelessMatrix};

fn py_err(e: AlgebraError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => PyBool::new(py, *b).to_owned().into_any(),
        Value::Number(x) => match (x.as_i64(), x.as_u64()) {
            (Some(i), _) => i.into_pyobject(py)?.into_any(),
            (None, Some(u)) => u.into_pyobject(py)?.into_any(),
            _ => x.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => PyString::new(py, s).into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, json_to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

fn matrix_rows(m: &RatMatrix) -> Vec<Vec<String>> {
    m.to_rows()
        .into_iter()
        .map(|row| row.iter().map(Rational::to_string).collect())
        .collect()
}

/// Reads a nested sequence whose entries print as rationals (ints, strings,
/// `fractions.Fraction`).
fn extract_matrix(obj: &Bound<'_, PyAny>) -> PyResult<RatMatrix> {
    let mut rows = Vec::new();
    for row in obj.try_iter()? {
        let mut out = Vec::new();
        for item in row?.try_iter()? {
            let text = item?.str()?.to_string();
            out.push(text.parse::<Rational>().map_err(py_err)?);
        }
        rows.push(out);
    }
    RatMatrix::from_rows(rows).map_err(py_err)
}

/// The graded algebra `sl(n) ⊕ ⋀^k ⊕ ⋀^{2k mod n} ⊕ …`.
#[pyclass(name = "Algebra", module = "pyextalg", frozen)]
struct PyAlgebra {
    inner: ExtensionAlgebra,
}

impl PyAlgebra {
    fn element(&self, x: &Bound<'_, PyAny>, project: bool) -> PyResult<AlgebraElement> {
        if let Ok(text) = x.extract::<String>() {
            return parse_element(&text, &self.inner, None).map_err(py_err);
        }
        let m = extract_matrix(x)?;
        let t = if project {
            make_traceless(&m)
        } else {
            TracelessMatrix::new(m)
        };
        self.inner.sl_element(t.map_err(py_err)?).map_err(py_err)
    }

    fn render<'py>(&self, py: Python<'py>, x: &AlgebraElement) -> PyResult<Bound<'py, PyAny>> {
        match x.payload() {
            Payload::Sl(m) => Ok(matrix_rows(m.matrix()).into_pyobject(py)?.into_any()),
            Payload::Form(f) => Ok(PyString::new(py, &f.to_string()).into_any()),
        }
    }
}

#[pymethods]
impl PyAlgebra {
    #[new]
    fn new(k: usize, n: usize) -> PyResult<Self> {
        Ok(PyAlgebra {
            inner: ExtensionAlgebra::new(k, n).map_err(py_err)?,
        })
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    /// Exterior degree of each grade; grade 0 (the matrices) reports 0.
    #[getter]
    fn grade_degrees(&self) -> Vec<usize> {
        self.inner.grade_degrees().to_vec()
    }

    #[getter]
    fn offsets(&self) -> Vec<usize> {
        self.inner.offsets().to_vec()
    }

    #[getter]
    fn contraction_scale(&self) -> String {
        self.inner.contraction_scale().to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "Algebra(k={}, n={}; {})",
            self.inner.k(),
            self.inner.n(),
            self.inner
        )
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    /// `[x, y]`; a form comes back as a string, a matrix as rows of strings.
    #[pyo3(signature = (x, y, project = false))]
    fn bracket<'py>(
        &self,
        py: Python<'py>,
        x: &Bound<'py, PyAny>,
        y: &Bound<'py, PyAny>,
        project: bool,
    ) -> PyResult<Bound<'py, PyAny>> {
        let (x, y) = (self.element(x, project)?, self.element(y, project)?);
        let z = self.inner.bracket(&x, &y).map_err(py_err)?;
        self.render(py, &z)
    }

    /// Hodge star of a form, returned as an expression.
    fn star(&self, x: &str) -> PyResult<String> {
        let f = parse_form(x, self.inner.n(), None).map_err(py_err)?;
        Ok(hodge_star(&f).to_string())
    }

    #[pyo3(signature = (x, project = false))]
    fn ad(
        &self,
        py: Python<'_>,
        x: &Bound<'_, PyAny>,
        project: bool,
    ) -> PyResult<Vec<Vec<String>>> {
        let x = self.element(x, project)?;
        let a = py.detach(|| self.inner.ad(&x)).map_err(py_err)?;
        Ok(matrix_rows(a.matrix()))
    }

    #[pyo3(signature = (x, project = false))]
    fn ad_rank(&self, py: Python<'_>, x: &Bound<'_, PyAny>, project: bool) -> PyResult<usize> {
        let x = self.element(x, project)?;
        py.detach(|| self.inner.ad(&x).map(|a| mat_rank(a.matrix())))
            .map_err(py_err)
    }

    fn killing_matrix(&self, py: Python<'_>) -> PyResult<Vec<Vec<String>>> {
        let k = py.detach(|| self.inner.killing_matrix()).map_err(py_err)?;
        Ok(matrix_rows(&k))
    }

    fn killing_rank(&self, py: Python<'_>) -> PyResult<usize> {
        py.detach(|| self.inner.killing_matrix().map(|k| mat_rank(&k)))
            .map_err(py_err)
    }

    /// Characteristic polynomial of `ad x`: ascending coefficients as strings.
    #[pyo3(signature = (x, project = false))]
    fn char_poly(
        &self,
        py: Python<'_>,
        x: &Bound<'_, PyAny>,
        project: bool,
    ) -> PyResult<Vec<String>> {
        let x = self.element(x, project)?;
        let p = py
            .detach(|| self.inner.ad(&x).and_then(|a| char_poly(a.matrix())))
            .map_err(py_err)?;
        Ok(p.coefficients().iter().map(Rational::to_string).collect())
    }

    #[pyo3(signature = (x, project = false))]
    fn min_poly(
        &self,
        py: Python<'_>,
        x: &Bound<'_, PyAny>,
        project: bool,
    ) -> PyResult<Vec<String>> {
        let x = self.element(x, project)?;
        let p = py
            .detach(|| self.inner.ad(&x).and_then(|a| min_poly(a.matrix())))
            .map_err(py_err)?;
        Ok(p.coefficients().iter().map(Rational::to_string).collect())
    }

    #[pyo3(signature = (x, project = false))]
    fn is_ad_semisimple(
        &self,
        py: Python<'_>,
        x: &Bound<'_, PyAny>,
        project: bool,
    ) -> PyResult<bool> {
        let x = self.element(x, project)?;
        py.detach(|| is_ad_semisimple(&self.inner, &x))
            .map_err(py_err)
    }

    /// Block ranks of `ad x, (ad x)^2, …`; `powers=None` runs until the rank
    /// stabilizes.
    #[pyo3(signature = (x, powers = None, project = false))]
    fn block_ranks<'py>(
        &self,
        py: Python<'py>,
        x: &Bound<'py, PyAny>,
        powers: Option<usize>,
        project: bool,
    ) -> PyResult<Bound<'py, PyAny>> {
        let t = self.table(py, x, powers, project)?;
        json_to_py(py, &t.to_json())
    }

    #[pyo3(signature = (x, powers = None, project = false))]
    fn block_table(
        &self,
        py: Python<'_>,
        x: &Bound<'_, PyAny>,
        powers: Option<usize>,
        project: bool,
    ) -> PyResult<String> {
        Ok(render_block_table(&self.table(py, x, powers, project)?))
    }

    /// Basis of the elements of `grade` commuting with `x`.
    #[pyo3(signature = (x, grade, project = false))]
    fn centralizer<'py>(
        &self,
        py: Python<'py>,
        x: &Bound<'py, PyAny>,
        grade: usize,
        project: bool,
    ) -> PyResult<Vec<Bound<'py, PyAny>>> {
        let x = self.element(x, project)?;
        let basis = py
            .detach(|| centralizer_in_grade(&self.inner, &x, grade))
            .map_err(py_err)?;
        basis.iter().map(|b| self.render(py, b)).collect()
    }

    /// Seeded skew-symmetry and Jacobi checks; returns the report as a dict.
    #[pyo3(signature = (samples = 3, seed = 0, grades = None))]
    fn verify<'py>(
        &self,
        py: Python<'py>,
        samples: usize,
        seed: u64,
        grades: Option<(usize, usize)>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let report = py
            .detach(|| verify_axioms(&self.inner, samples, seed, grades))
            .map_err(py_err)?;
        let mut v =
            serde_json::to_value(&report).map_err(|e| PyValueError::new_err(e.to_string()))?;
        v["skew"] = Value::Bool(report.skew());
        v["jacobi"] = Value::Bool(report.jacobi());
        json_to_py(py, &v)
    }
}

impl PyAlgebra {
    fn table(
        &self,
        py: Python<'_>,
        x: &Bound<'_, PyAny>,
        powers: Option<usize>,
        project: bool,
    ) -> PyResult<extalg::BlockRankTable> {
        let x = self.element(x, project)?;
        let depth = match powers {
            Some(0) => return Err(PyValueError::new_err("powers must be at least 1")),
            Some(p) => PowerDepth::Fixed(p),
            None => PowerDepth::Auto,
        };
        py.detach(|| self.inner.ad(&x).and_then(|a| block_ranks(&a, depth)))
            .map_err(py_err)
    }
}

/// Wedge product of two forms over `F^n`.
#[pyfunction(name = "wedge")]
fn py_wedge(a: &str, b: &str, n: usize) -> PyResult<String> {
    let a = parse_form(a, n, None).map_err(py_err)?;
    let b = parse_form(b, n, None).map_err(py_err)?;
    Ok(wedge(&a, &b).map_err(py_err)?.to_string())
}

/// Canonical form of an expression over `F^n`.
#[pyfunction]
fn normalize(expr: &str, n: usize) -> PyResult<String> {
    Ok(parse_form(expr, n, None).map_err(py_err)?.to_string())
}

/// Traceless projection of a square matrix.
#[pyfunction(name = "make_traceless")]
fn py_make_traceless(m: &Bound<'_, PyAny>) -> PyResult<Vec<Vec<String>>> {
    let t = make_traceless(&extract_matrix(m)?).map_err(py_err)?;
    Ok(matrix_rows(t.matrix()))
}

/// JSON text of a matrix in the rational-string format.
#[pyfunction]
fn matrix_json(m: &Bound<'_, PyAny>) -> PyResult<String> {
    Ok(matrix_to_json(&extract_matrix(m)?).to_string())
}

#[pymodule]
pub fn pyextalg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_function(wrap_pyfunction!(py_wedge, m)?)?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_function(wrap_pyfunction!(py_make_traceless, m)?)?;
    m.add_function(wrap_pyfunction!(matrix_json, m)?)?;
    Ok(())
}
