//! Python bindings. Every numeric routine takes a `Matrix` built in either
//! the exact domain (values come back as `fractions.Fraction`) or the float
//! domain (values come back as `float`).

use gendet_core::{self as core, scalar, Combination, Error, Options, Point, Rational, Scalar, SolveOutcome};
use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyFloat, PyInt, PyString, PyTuple};

create_exception!(gendet, GendetError, PyException, "Base class for gendet errors.");
create_exception!(gendet, DimensionError, GendetError, "Shape or input validation failure.");
create_exception!(gendet, CapExceededError, GendetError, "Minor count above the configured cap.");
create_exception!(gendet, DegenerateDirectionError, GendetError, "Direction blade is zero.");
create_exception!(gendet, NumericError, GendetError, "Floating-point breakdown.");

fn py_err(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::CapExceeded { .. } => CapExceededError::new_err(msg),
        Error::DegenerateDirection => DegenerateDirectionError::new_err(msg),
        Error::Numeric(_) | Error::NonFinite { .. } => NumericError::new_err(msg),
        _ => DimensionError::new_err(msg),
    }
}

trait IntoPy: Scalar {
    fn extract(obj: &Bound<'_, PyAny>) -> PyResult<Self>;
    fn to_py(&self, py: Python<'_>) -> PyResult<Py<PyAny>>;
}

impl IntoPy for Rational {
    fn extract(obj: &Bound<'_, PyAny>) -> PyResult<Self> {
        if obj.is_instance_of::<PyBool>() {
            return Err(PyTypeError::new_err("bool is not a matrix entry"));
        }
        if obj.is_instance_of::<PyInt>() {
            return Ok(Rational::from_integer(obj.extract::<BigInt>()?));
        }
        if obj.is_instance_of::<PyFloat>() {
            let v: f64 = obj.extract()?;
            return Rational::from_f64(v).ok_or_else(|| PyValueError::new_err(format!("non-finite entry {v}")));
        }
        if let Ok(s) = obj.cast::<PyString>() {
            let text = s.to_str()?;
            return scalar::parse_rational(text).ok_or_else(|| PyValueError::new_err(format!("bad literal {text:?}")));
        }
        if obj.hasattr("numerator")? && obj.hasattr("denominator")? {
            let n: BigInt = obj.getattr("numerator")?.extract()?;
            let d: BigInt = obj.getattr("denominator")?.extract()?;
            if d == BigInt::from(0) {
                return Err(PyValueError::new_err("zero denominator"));
            }
            return Ok(Rational::new(n, d));
        }
        Err(PyTypeError::new_err(format!("cannot use {} as an exact entry", obj.get_type().name()?)))
    }

    fn to_py(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let fraction = py.import("fractions")?.getattr("Fraction")?;
        Ok(fraction.call1((self.numer().clone(), self.denom().clone()))?.unbind())
    }
}

impl IntoPy for f64 {
    fn extract(obj: &Bound<'_, PyAny>) -> PyResult<Self> {
        if let Ok(s) = obj.cast::<PyString>() {
            let text = s.to_str()?;
            return match text.trim().parse::<f64>() {
                Ok(v) => Ok(v),
                Err(_) => scalar::parse_rational(text)
                    .map(|r| r.to_f64())
                    .ok_or_else(|| PyValueError::new_err(format!("bad literal {text:?}"))),
            };
        }
        obj.extract::<f64>()
    }

    fn to_py(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        Ok(PyFloat::new(py, *self).into_any().unbind())
    }
}

#[derive(Clone)]
enum Inner {
    Exact(core::Matrix<Rational>),
    Float(core::Matrix<f64>),
}

/// Dispatch on the domain; the body sees `$m: &core::Matrix<S>`.
macro_rules! with_matrix {
    ($inner:expr, $m:ident => $body:expr) => {
        match $inner {
            Inner::Exact($m) => $body,
            Inner::Float($m) => $body,
        }
    };
}

fn options(max_minors: Option<u128>, tolerance: Option<f64>) -> Options {
    let mut o = Options::default();
    if let Some(cap) = max_minors {
        o = o.with_max_minors(cap);
    }
    if let Some(t) = tolerance {
        o = o.with_tolerance(t);
    }
    o
}

fn build<S: IntoPy>(rows: &Bound<'_, PyAny>) -> PyResult<core::Matrix<S>> {
    let mut data = Vec::new();
    let mut shape: Option<usize> = None;
    let mut n_rows = 0;
    for row in rows.try_iter()? {
        let row = row?;
        let mut width = 0;
        for v in row.try_iter()? {
            data.push(S::extract(&v?)?);
            width += 1;
        }
        match shape {
            None => shape = Some(width),
            Some(w) if w != width => {
                return Err(DimensionError::new_err(format!("row {} has {width} entries, expected {w}", n_rows + 1)))
            }
            _ => {}
        }
        n_rows += 1;
    }
    core::Matrix::new(n_rows, shape.unwrap_or(0), data).map_err(py_err)
}

fn to_list<S: IntoPy>(py: Python<'_>, v: &[S]) -> PyResult<Vec<Py<PyAny>>> {
    v.iter().map(|x| x.to_py(py)).collect()
}

fn blade_tuple<'py>(py: Python<'py>, c: &Combination) -> PyResult<Bound<'py, PyTuple>> {
    PyTuple::new(py, c.indices())
}

fn terms<S: IntoPy>(py: Python<'_>, mv: &core::Multivector<S>) -> PyResult<Vec<(Py<PyTuple>, Py<PyAny>)>> {
    mv.terms().map(|(c, v)| Ok((blade_tuple(py, &c)?.unbind(), v.to_py(py)?))).collect()
}

/// Dense m×n matrix. `Matrix(rows, exact=False)`; exact entries may be
/// ints, Fractions, or strings like `"3/4"` or `"1.25"`.
#[pyclass(module = "gendet", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Matrix {
    inner: Inner,
}

#[pymethods]
impl Matrix {
    #[new]
    #[pyo3(signature = (rows, exact = false))]
    fn new(rows: &Bound<'_, PyAny>, exact: bool) -> PyResult<Self> {
        let inner = if exact { Inner::Exact(build(rows)?) } else { Inner::Float(build(rows)?) };
        Ok(Matrix { inner })
    }

    #[getter]
    fn shape(&self) -> (usize, usize) {
        with_matrix!(&self.inner, m => m.shape())
    }

    #[getter]
    fn exact(&self) -> bool {
        matches!(self.inner, Inner::Exact(_))
    }

    fn to_list(&self, py: Python<'_>) -> PyResult<Vec<Vec<Py<PyAny>>>> {
        with_matrix!(&self.inner, m => (0..m.rows()).map(|i| to_list(py, m.row(i))).collect())
    }

    fn to_float(&self) -> Matrix {
        match &self.inner {
            Inner::Exact(m) => Matrix { inner: Inner::Float(m.to_f64()) },
            Inner::Float(_) => self.clone(),
        }
    }

    fn to_exact(&self) -> PyResult<Matrix> {
        match &self.inner {
            Inner::Float(m) => Ok(Matrix { inner: Inner::Exact(m.to_rational().map_err(py_err)?) }),
            Inner::Exact(_) => Ok(self.clone()),
        }
    }

    fn transpose(&self) -> Matrix {
        Matrix { inner: with_matrix!(&self.inner, m => m.transpose().into()) }
    }

    fn __matmul__(&self, other: &Matrix) -> PyResult<Matrix> {
        let inner = match (&self.inner, &other.inner) {
            (Inner::Exact(a), Inner::Exact(b)) => Inner::Exact(a.mul(b).map_err(py_err)?),
            (Inner::Float(a), Inner::Float(b)) => Inner::Float(a.mul(b).map_err(py_err)?),
            _ => return Err(PyTypeError::new_err("cannot mix exact and float matrices")),
        };
        Ok(Matrix { inner })
    }

    /// Square determinant.
    fn det(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        with_matrix!(&self.inner, m => core::squaredet::det(m).map_err(py_err)?.to_py(py))
    }

    /// The n-volume spanned by the columns, as a float.
    #[pyo3(signature = (max_minors = None, gram = false))]
    fn detl(&self, max_minors: Option<u128>, gram: bool) -> PyResult<f64> {
        Ok(self.detl_info(max_minors, gram)?.1)
    }

    /// `detl²`, exact in the exact domain.
    #[pyo3(signature = (max_minors = None, gram = false))]
    fn detl_squared(&self, py: Python<'_>, max_minors: Option<u128>, gram: bool) -> PyResult<Py<PyAny>> {
        let o = options(max_minors, None);
        with_matrix!(&self.inner, m => {
            let d = if gram { core::detl_squared_gram(m, o.tolerance) } else { core::detl(m, &o) };
            d.map_err(py_err)?.squared.to_py(py)
        })
    }

    /// `(path, value)` where path is one of minors, gram, gram-fallback, wide.
    #[pyo3(signature = (max_minors = None, gram = false))]
    fn detl_info(&self, max_minors: Option<u128>, gram: bool) -> PyResult<(String, f64)> {
        let o = options(max_minors, None);
        with_matrix!(&self.inner, m => {
            let d = if gram { core::detl_squared_gram(m, o.tolerance) } else { core::detl(m, &o) };
            let d = d.map_err(py_err)?;
            Ok((d.path.as_str().to_string(), d.value()))
        })
    }

    /// Maximal minors as `[(blade, value), ...]` in lexicographic order.
    #[pyo3(signature = (max_minors = None))]
    fn vdet(&self, py: Python<'_>, max_minors: Option<u128>) -> PyResult<Vec<(Py<PyTuple>, Py<PyAny>)>> {
        let o = options(max_minors, None);
        with_matrix!(&self.inner, m => terms(py, &core::vdet(m, &o).map_err(py_err)?))
    }

    /// The wedge of the columns by direct expansion (ambient dimension ≤ 10).
    fn wedge(&self, py: Python<'_>) -> PyResult<Vec<(Py<PyTuple>, Py<PyAny>)>> {
        with_matrix!(&self.inner, m => terms(py, &core::wedge_columns(m).map_err(py_err)?))
    }

    #[pyo3(signature = (recursive = false, max_minors = None))]
    fn gdet(&self, py: Python<'_>, recursive: bool, max_minors: Option<u128>) -> PyResult<Py<PyAny>> {
        let o = options(max_minors, None);
        with_matrix!(&self.inner, m => {
            let v = if recursive { core::gdet_recursive(m) } else { core::gdet_closed(m, &o) };
            v.map_err(py_err)?.to_py(py)
        })
    }

    #[pyo3(signature = (max_minors = None))]
    fn tdet(&self, py: Python<'_>, max_minors: Option<u128>) -> PyResult<Py<PyAny>> {
        let o = options(max_minors, None);
        with_matrix!(&self.inner, m => core::tdet(m, &o).map_err(py_err)?.to_py(py))
    }

    fn __repr__(&self) -> String {
        let (r, c) = self.shape();
        let domain = if self.exact() { "exact" } else { "float" };
        format!("Matrix({r}x{c}, {domain})")
    }
}

impl From<core::Matrix<Rational>> for Inner {
    fn from(m: core::Matrix<Rational>) -> Self {
        Inner::Exact(m)
    }
}

impl From<core::Matrix<f64>> for Inner {
    fn from(m: core::Matrix<f64>) -> Self {
        Inner::Float(m)
    }
}

/// Outcome of an overdetermined solve. `status` is `"solution"`,
/// `"inconsistent"` or `"rank_deficient"`.
#[pyclass(module = "gendet", frozen, get_all)]
struct Solution {
    status: &'static str,
    x: Option<Vec<Py<PyAny>>>,
    column: Option<usize>,
    blade: Option<Py<PyTuple>>,
}

#[pymethods]
impl Solution {
    fn __bool__(&self) -> bool {
        self.status == "solution"
    }

    fn __repr__(&self) -> String {
        match (self.column, &self.blade) {
            (Some(j), Some(b)) => format!("Solution(inconsistent, column={j}, blade={b})"),
            _ => format!("Solution({})", self.status),
        }
    }
}

fn solve_typed<S: IntoPy>(
    py: Python<'_>,
    a: &core::Matrix<S>,
    b: &Bound<'_, PyAny>,
    o: &Options,
) -> PyResult<Solution> {
    let b: Vec<S> = b.try_iter()?.map(|v| S::extract(&v?)).collect::<PyResult<_>>()?;
    Ok(match core::solve_overdetermined(a, &b, o).map_err(py_err)? {
        SolveOutcome::Solution(x) => {
            Solution { status: "solution", x: Some(to_list(py, &x)?), column: None, blade: None }
        }
        SolveOutcome::Inconsistent { column, blade } => Solution {
            status: "inconsistent",
            x: None,
            column: Some(column),
            blade: Some(blade_tuple(py, &blade)?.unbind()),
        },
        SolveOutcome::RankDeficient => Solution { status: "rank_deficient", x: None, column: None, blade: None },
    })
}

/// Generalized Cramer's rule for `Ax = b`, `A` tall with full column rank.
#[pyfunction]
#[pyo3(signature = (a, b, tolerance = None, max_minors = None))]
fn solve(
    py: Python<'_>,
    a: &Matrix,
    b: &Bound<'_, PyAny>,
    tolerance: Option<f64>,
    max_minors: Option<u128>,
) -> PyResult<Solution> {
    let o = options(max_minors, tolerance);
    with_matrix!(&a.inner, m => solve_typed(py, m, b, &o))
}

/// `|xⱼ|` from the norms of the column-replaced vector determinants.
#[pyfunction]
#[pyo3(signature = (a, b, max_minors = None))]
fn cramer_magnitudes(a: &Matrix, b: &Bound<'_, PyAny>, max_minors: Option<u128>) -> PyResult<Vec<f64>> {
    fn go<S: IntoPy>(a: &core::Matrix<S>, b: &Bound<'_, PyAny>, o: &Options) -> PyResult<Vec<f64>> {
        let b: Vec<S> = b.try_iter()?.map(|v| S::extract(&v?)).collect::<PyResult<_>>()?;
        Ok(core::cramer_magnitudes(a, &b, o).map_err(py_err)?.values())
    }
    let o = options(max_minors, None);
    with_matrix!(&a.inner, m => go(m, b, &o))
}

/// Projection of `vdet A` onto the unit blade of `vdet B`.
#[pyfunction]
#[pyo3(signature = (a, b, max_minors = None))]
fn directional_det(a: &Matrix, b: &Matrix, max_minors: Option<u128>) -> PyResult<f64> {
    let o = options(max_minors, None);
    match (&a.inner, &b.inner) {
        (Inner::Exact(a), Inner::Exact(b)) => Ok(core::directional_det(a, b, &o).map_err(py_err)?.value()),
        (Inner::Float(a), Inner::Float(b)) => Ok(core::directional_det(a, b, &o).map_err(py_err)?.value()),
        _ => Err(PyTypeError::new_err("cannot mix exact and float matrices")),
    }
}

/// Signed area of a closed polygon from its vertices `[(x, y), ...]`;
/// counter-clockwise is positive.
#[pyfunction]
#[pyo3(signature = (vertices, exact = false, method = "gdet"))]
fn polygon_area(py: Python<'_>, vertices: &Bound<'_, PyAny>, exact: bool, method: &str) -> PyResult<Py<PyAny>> {
    fn go<S: IntoPy>(py: Python<'_>, vertices: &Bound<'_, PyAny>, method: &str) -> PyResult<Py<PyAny>> {
        let m: core::Matrix<S> = build(vertices)?;
        if m.cols() != 2 {
            return Err(DimensionError::new_err(format!("vertices must be (x, y) pairs, got {} columns", m.cols())));
        }
        let pts: Vec<Point<S>> = (0..m.rows()).map(|i| Point::new(m.get(i, 0).clone(), m.get(i, 1).clone())).collect();
        let area = match method {
            "gdet" => core::polygon_area_gdet(&pts),
            "shoelace" => core::polygon_area_shoelace(&pts),
            other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
        };
        area.map_err(py_err)?.to_py(py)
    }
    if exact {
        go::<Rational>(py, vertices, method)
    } else {
        go::<f64>(py, vertices, method)
    }
}

/// Area of the inscribed regular m-gon and its error against `πr²`.
#[pyfunction]
#[pyo3(signature = (m, r = 1.0))]
fn circle_area_convergence<'py>(py: Python<'py>, m: usize, r: f64) -> PyResult<Bound<'py, PyDict>> {
    let c = core::circle_area_convergence(m, r).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("vertices", c.vertices)?;
    d.set_item("radius", c.radius)?;
    d.set_item("area", c.area)?;
    d.set_item("abs_error", c.abs_error)?;
    Ok(d)
}

/// All n-subsets of `1..=m` (1-based) in lexicographic order.
#[pyfunction]
fn enumerate_combinations(m: usize, n: usize) -> PyResult<Vec<Vec<usize>>> {
    Ok(core::enumerate_combinations(m, n).map_err(py_err)?.into_iter().map(|c| c.indices().to_vec()).collect())
}

/// Zero-based lexicographic rank of a 1-based ascending combination.
#[pyfunction]
fn tau_rank(indices: Vec<usize>, m: usize) -> PyResult<u128> {
    Ok(core::tau_rank(&Combination::new(indices, m).map_err(py_err)?))
}

#[pyfunction]
fn tau_unrank(rank: u128, m: usize, n: usize) -> PyResult<Vec<usize>> {
    Ok(core::tau_unrank(rank, m, n).map_err(py_err)?.indices().to_vec())
}

/// `(-1)^Σⱼ (iⱼ + j)` for a 1-based combination.
#[pyfunction]
fn laplace_sign(indices: Vec<usize>, m: usize) -> PyResult<i8> {
    Ok(Combination::new(indices, m).map_err(py_err)?.laplace_sign())
}

#[pyfunction]
fn binomial(m: usize, n: usize) -> u128 {
    core::binomial(m, n)
}

#[pymodule]
#[pyo3(name = "gendet")]
pub fn gendet_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<Matrix>()?;
    m.add_class::<Solution>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(cramer_magnitudes, m)?)?;
    m.add_function(wrap_pyfunction!(directional_det, m)?)?;
    m.add_function(wrap_pyfunction!(polygon_area, m)?)?;
    m.add_function(wrap_pyfunction!(circle_area_convergence, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_combinations, m)?)?;
    m.add_function(wrap_pyfunction!(tau_rank, m)?)?;
    m.add_function(wrap_pyfunction!(tau_unrank, m)?)?;
    m.add_function(wrap_pyfunction!(laplace_sign, m)?)?;
    m.add_function(wrap_pyfunction!(binomial, m)?)?;
    m.add("GendetError", py.get_type::<GendetError>())?;
    m.add("DimensionError", py.get_type::<DimensionError>())?;
    m.add("CapExceededError", py.get_type::<CapExceededError>())?;
    m.add("DegenerateDirectionError", py.get_type::<DegenerateDirectionError>())?;
    m.add("NumericError", py.get_type::<NumericError>())?;
    m.add("DEFAULT_MAX_MINORS", core::gendet::DEFAULT_MAX_MINORS)?;
    Ok(())
}
