//! Python bindings: exact scalars, a per-signature session object and the
//! worked-example reproduction. Structured results come back as plain dicts
//! with the same field names as the command-line machine output.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyString;
use serde::Serialize;

use symconf::cases;
use symconf::extension;
use symconf::field::DEFAULT_D;
use symconf::flatmodel::{self, NullLine, Signature};
use symconf::io::{self, ReportDto, WeylDto};
use symconf::liealg;
use symconf::linalg::Vector;
use symconf::symmetry;
use symconf::weyl;
use symconf::{Error, Scalar};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Element `a + b sqrt(d)` of a real quadratic field.
#[pyclass(name = "Scalar", module = "symconf_py", frozen)]
struct PyScalar {
    inner: Scalar,
    d: u64,
}

impl PyScalar {
    fn wrap(inner: Scalar, d: u64) -> Self {
        Self { inner, d }
    }

    fn same_field(&self, other: &PyScalar) -> PyResult<()> {
        if self.d != other.d {
            return Err(PyValueError::new_err(format!(
                "scalars from Q(sqrt {}) and Q(sqrt {}) cannot be combined",
                self.d, other.d
            )));
        }
        Ok(())
    }
}

#[pymethods]
impl PyScalar {
    #[new]
    #[pyo3(signature = (literal, d = DEFAULT_D))]
    fn new(literal: &str, d: u64) -> PyResult<Self> {
        Ok(Self::wrap(Scalar::parse(literal, d).map_err(err)?, d))
    }

    #[getter]
    fn d(&self) -> u64 {
        self.d
    }

    fn literal(&self) -> String {
        self.inner.to_literal()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn __str__(&self) -> String {
        self.inner.to_literal()
    }

    fn __repr__(&self) -> String {
        format!("Scalar('{}', d={})", self.inner.to_literal(), self.d)
    }

    fn __add__(&self, other: PyRef<'_, PyScalar>) -> PyResult<PyScalar> {
        self.same_field(&other)?;
        Ok(Self::wrap(&self.inner + &other.inner, self.d))
    }

    fn __sub__(&self, other: PyRef<'_, PyScalar>) -> PyResult<PyScalar> {
        self.same_field(&other)?;
        Ok(Self::wrap(&self.inner - &other.inner, self.d))
    }

    fn __mul__(&self, other: PyRef<'_, PyScalar>) -> PyResult<PyScalar> {
        self.same_field(&other)?;
        Ok(Self::wrap(&self.inner * &other.inner, self.d))
    }

    fn __truediv__(&self, other: PyRef<'_, PyScalar>) -> PyResult<PyScalar> {
        self.same_field(&other)?;
        Ok(Self::wrap(self.inner.checked_div(&other.inner).map_err(err)?, self.d))
    }

    fn __neg__(&self) -> PyScalar {
        Self::wrap(-&self.inner, self.d)
    }

    fn __eq__(&self, other: PyRef<'_, PyScalar>) -> bool {
        self.d == other.d && self.inner == other.inner
    }
}

/// A vector from a comma-separated literal string or a sequence of
/// literals, ints or `Scalar`s.
fn vector(obj: &Bound<'_, PyAny>, d: u64) -> PyResult<Vector> {
    if let Ok(s) = obj.cast::<PyString>() {
        return io::parse_vector(s.to_str()?, d).map_err(err);
    }
    obj.try_iter()?
        .map(|item| {
            let item = item?;
            if let Ok(s) = item.cast::<PyScalar>() {
                return Ok(s.get().inner.clone());
            }
            if let Ok(i) = item.extract::<i64>() {
                return Ok(Scalar::from_int(i));
            }
            let text: String = item.extract()?;
            Scalar::parse(&text, d).map_err(err)
        })
        .collect()
}

/// Computations in a fixed signature `(p, q)` over `Q(sqrt d)`.
#[pyclass(name = "Session", module = "symconf_py", frozen)]
struct PySession {
    sig: Signature,
    d: u64,
}

impl PySession {
    fn line(&self, obj: &Bound<'_, PyAny>) -> PyResult<NullLine> {
        NullLine::new(&self.sig, vector(obj, self.d)?).map_err(err)
    }

    fn lines(
        &self,
        u: &Bound<'_, PyAny>,
        v: &Bound<'_, PyAny>,
        w: Option<&Bound<'_, PyAny>>,
    ) -> PyResult<(NullLine, NullLine, NullLine)> {
        let w = match w {
            Some(w) => self.line(w)?,
            None => NullLine::origin(&self.sig),
        };
        Ok((self.line(u)?, self.line(v)?, w))
    }
}

#[pymethods]
impl PySession {
    #[new]
    #[pyo3(signature = (p, q, d = DEFAULT_D))]
    fn new(p: usize, q: usize, d: u64) -> PyResult<Self> {
        symconf::field::validate_field(d).map_err(err)?;
        Ok(Self {
            sig: Signature::new(p, q).map_err(err)?,
            d,
        })
    }

    #[getter]
    fn p(&self) -> usize {
        self.sig.p()
    }

    #[getter]
    fn q(&self) -> usize {
        self.sig.q()
    }

    /// Orbit label of the base point `w` (default `e_0`).
    #[pyo3(signature = (u, v, w = None))]
    fn classify<'py>(
        &self,
        py: Python<'py>,
        u: &Bound<'py, PyAny>,
        v: &Bound<'py, PyAny>,
        w: Option<&Bound<'py, PyAny>>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let (u, v, w) = self.lines(u, v, w)?;
        to_py(py, &flatmodel::classify_orbit(&self.sig, &w, &u, &v).map_err(err)?)
    }

    /// Preserving and swapping symmetry sets, as in the machine report.
    #[pyo3(signature = (u, v, w = None))]
    fn solve<'py>(
        &self,
        py: Python<'py>,
        u: &Bound<'py, PyAny>,
        v: &Bound<'py, PyAny>,
        w: Option<&Bound<'py, PyAny>>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let (u, v, w) = self.lines(u, v, w)?;
        let report = symmetry::find_symmetries(&self.sig, &u, &v, &w).map_err(err)?;
        to_py(py, &ReportDto::from_report(&self.sig, self.d, &report))
    }

    /// The matrix `s_Z` as rows of literals.
    fn symmetry(&self, z: &Bound<'_, PyAny>) -> PyResult<Vec<Vec<String>>> {
        let s = symmetry::make_symmetry(&self.sig, &vector(z, self.d)?).map_err(err)?;
        Ok(s.to_literal_rows())
    }

    /// `s_Z^2 = I`, `s_Z` preserves the form and acts as `-id` on the tangent space.
    fn check_symmetry(&self, z: &Bound<'_, PyAny>) -> PyResult<bool> {
        let z = vector(z, self.d)?;
        let s = symmetry::make_symmetry(&self.sig, &z).map_err(err)?;
        Ok(symmetry::is_involutive(&self.sig, &z).map_err(err)?
            && self.sig.preserves_form(&s)
            && symmetry::tangent_is_minus_id(&self.sig, &z).map_err(err)?)
    }

    fn weyl_basis_dim(&self) -> PyResult<usize> {
        Ok(weyl::weyl_space_basis(self.sig.p(), self.sig.q()).map_err(err)?.dim())
    }

    fn random_weyl<'py>(&self, py: Python<'py>, seed: u64) -> PyResult<Bound<'py, PyAny>> {
        let w = weyl::random_weyl(self.sig.p(), self.sig.q(), seed).map_err(err)?;
        to_py(py, &WeylDto::from_tensor(&w, self.d))
    }

    /// Dimension of the first prolongation of `Ann(W)` for a seeded random `W`.
    fn prolongation_dim(&self, seed: u64) -> PyResult<usize> {
        let w = weyl::random_weyl(self.sig.p(), self.sig.q(), seed).map_err(err)?;
        Ok(weyl::prolongation(&w).map_err(err)?.len())
    }

    fn bracket_constant(&self) -> PyResult<PyScalar> {
        let c = liealg::upsilon_bracket_constant(&self.sig).map_err(err)?;
        Ok(PyScalar::wrap(c, self.d))
    }

    /// Validation report of the flat model extension.
    fn validate_flat_extension<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let e = extension::flat_extension(self.sig).map_err(err)?;
        to_py(py, &extension::validate_extension(&e).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!("Session(p={}, q={}, d={})", self.sig.p(), self.sig.q(), self.d)
    }
}

/// All six removed-points examples with their comparison to the reference sets.
#[pyfunction]
#[pyo3(signature = (d = DEFAULT_D))]
fn reproduce_paper(py: Python<'_>, d: u64) -> PyResult<Bound<'_, PyAny>> {
    let results = cases::reproduce_paper(d).map_err(err)?;
    let dtos: Vec<ReportDto> = results.iter().map(|r| ReportDto::from_case(r, d)).collect();
    to_py(py, &dtos)
}

#[pymodule]
fn symconf_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyScalar>()?;
    m.add_class::<PySession>()?;
    m.add_function(wrap_pyfunction!(reproduce_paper, m)?)?;
    Ok(())
}
