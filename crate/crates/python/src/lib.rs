//! Python bindings: rings and polynomials, point and curve analyses, branches,
//! generic position, subvarieties and the command-line entry point.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use conelab::arith::parse_field;
use conelab::branches::{branch_analysis as core_branches, DEFAULT_DEPTH_LIMIT};
use conelab::cli::{self, AnalysisRequest, CliError, Command};
use conelab::cone::{
    analyze_curve_ideal as core_curve, analyze_hypersurface_point, SingularPointReport,
};
use conelab::graded::GradedQuotient;
use conelab::groebner::IdealBasis;
use conelab::mpoly::{parse_point, parse_poly, MPoly, MonomialOrder, Ring};
use conelab::points::{hilbert_function_points, is_generic_position as core_generic, parse_points};
use conelab::subvariety::{DEFAULT_SAMPLES, DEFAULT_SEED};

create_exception!(pyconelab, PreconditionError, PyValueError);

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn precondition_err(e: impl std::fmt::Display) -> PyErr {
    PreconditionError::new_err(e.to_string())
}

fn cli_err(e: CliError) -> PyErr {
    match e {
        CliError::Usage(m) => PyValueError::new_err(m),
        CliError::Precondition(m) => PreconditionError::new_err(m),
    }
}

fn json_to_py<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

/// Polynomial ring over a field descriptor such as `Q`, `F5` or `F2(a)`.
#[pyclass(name = "Ring", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyRing(Ring);

#[pymethods]
impl PyRing {
    #[new]
    fn new(field: &str, vars: Vec<String>) -> PyResult<Self> {
        let field = parse_field(field).map_err(value_err)?;
        Ok(PyRing(Ring::new(&field, &vars).map_err(value_err)?))
    }

    fn parse(&self, text: &str) -> PyResult<PyPoly> {
        Ok(PyPoly(parse_poly(text, &self.0).map_err(value_err)?))
    }

    #[getter]
    fn vars(&self) -> Vec<String> {
        self.0.vars().to_vec()
    }

    #[getter]
    fn field(&self) -> String {
        self.0.field().to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "Ring({:?}, {:?})",
            self.0.field().to_string(),
            self.0.vars()
        )
    }
}

#[pyclass(name = "Poly", frozen, from_py_object)]
#[derive(Clone)]
struct PyPoly(MPoly);

#[pymethods]
impl PyPoly {
    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly({:?})", self.0.to_string())
    }

    fn __eq__(&self, other: &PyPoly) -> bool {
        self.0 == other.0
    }

    fn __add__(&self, other: &PyPoly) -> PyResult<PyPoly> {
        Ok(PyPoly(self.0.try_add(&other.0).map_err(value_err)?))
    }

    fn __sub__(&self, other: &PyPoly) -> PyResult<PyPoly> {
        Ok(PyPoly(self.0.try_sub(&other.0).map_err(value_err)?))
    }

    fn __mul__(&self, other: &PyPoly) -> PyResult<PyPoly> {
        Ok(PyPoly(self.0.try_mul(&other.0).map_err(value_err)?))
    }

    fn __pow__(&self, exp: u32, _modulo: Option<Py<PyAny>>) -> PyPoly {
        PyPoly(self.0.pow(exp))
    }

    #[getter]
    fn ring(&self) -> PyRing {
        PyRing(self.0.ring().clone())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn total_degree(&self) -> Option<u32> {
        self.0.total_degree()
    }

    /// Order at the origin; `None` for the zero polynomial.
    fn order(&self) -> Option<u32> {
        self.0.order_at_origin()
    }

    fn lowest_form(&self) -> PyResult<PyPoly> {
        Ok(PyPoly(self.0.lowest_form().map_err(value_err)?))
    }

    /// `f(x + p)` for a point given as comma-separated coordinates.
    fn translate(&self, point: &str) -> PyResult<PyPoly> {
        let p = parse_point(point, self.0.ring().field()).map_err(value_err)?;
        Ok(PyPoly(self.0.translate(&p).map_err(value_err)?))
    }
}

/// Result of a point or curve analysis.
#[pyclass(name = "PointReport", frozen)]
struct PyPointReport(SingularPointReport);

#[pymethods]
impl PyPointReport {
    #[getter]
    fn multiplicity(&self) -> u64 {
        self.0.multiplicity
    }
    #[getter]
    fn embedding_dimension(&self) -> u64 {
        self.0.emdim
    }
    #[getter]
    fn essential_rank(&self) -> Option<usize> {
        self.0.essential_rank
    }
    #[getter]
    fn tangent_count(&self) -> Option<usize> {
        self.0.tangent_count_geometric
    }
    /// `"yes"`, `"no"` or `"undetermined"`.
    #[getter]
    fn ordinary(&self) -> String {
        self.0.ordinary.to_string()
    }
    #[getter]
    fn graded_reduced_base(&self) -> Option<bool> {
        self.0.graded_reduced_base
    }
    #[getter]
    fn graded_reduced_geometric(&self) -> Option<bool> {
        self.0.graded_reduced_geometric
    }
    #[getter]
    fn seminormal(&self) -> Option<bool> {
        self.0.seminormal_flag
    }
    #[getter]
    fn generic_position(&self) -> Option<bool> {
        self.0.tangents_generic_position
    }
    #[getter]
    fn tangents(&self) -> Vec<String> {
        self.0.tangent_strings()
    }
    #[getter]
    fn tangent_cone(&self) -> Vec<String> {
        self.0.tangent_cone.clone()
    }
    #[getter]
    fn notes(&self) -> Vec<String> {
        self.0.notes.clone()
    }

    fn __repr__(&self) -> String {
        format!(
            "PointReport(multiplicity={}, tangent_count={:?}, ordinary={})",
            self.0.multiplicity, self.0.tangent_count_geometric, self.0.ordinary
        )
    }
}

/// Analyzes the hypersurface `f = 0` at a point (default: the origin).
#[pyfunction]
#[pyo3(signature = (f, point=None))]
fn analyze_point(f: &PyPoly, point: Option<&str>) -> PyResult<PyPointReport> {
    let field = f.0.ring().field();
    let p = match point {
        Some(text) => parse_point(text, field).map_err(value_err)?,
        None => vec![field.zero(); f.0.nvars()],
    };
    Ok(PyPointReport(
        analyze_hypersurface_point(&f.0, &p).map_err(precondition_err)?,
    ))
}

/// Analyzes the germ at the origin of the curve cut out by `gens`.
#[pyfunction]
fn analyze_curve_ideal(gens: Vec<PyPoly>) -> PyResult<PyPointReport> {
    let gens: Vec<MPoly> = gens.into_iter().map(|g| g.0).collect();
    Ok(PyPointReport(core_curve(&gens).map_err(precondition_err)?))
}

/// Branches of a plane curve germ at the origin, as a dict.
#[pyfunction]
#[pyo3(signature = (f, depth=DEFAULT_DEPTH_LIMIT))]
fn branch_analysis<'py>(py: Python<'py>, f: &PyPoly, depth: u32) -> PyResult<Bound<'py, PyAny>> {
    let b = core_branches(&f.0, depth).map_err(precondition_err)?;
    let data: Vec<serde_json::Value> = b
        .data
        .iter()
        .map(|d| {
            serde_json::json!({
                "order": d.order,
                "tangent": d.tangent_text(&b.vars),
                "count": d.geometric_count,
            })
        })
        .collect();
    let v = serde_json::json!({
        "complete": b.complete,
        "multiplicity": b.multiplicity,
        "total_order": b.total_order,
        "count": b.branch_count(),
        "ordinary": b.ordinary(),
        "branches": data,
        "notes": b.notes,
    });
    json_to_py(py, &v.to_string())
}

/// Hilbert function of the graded quotient by homogeneous `gens`, degrees `0..=up_to`.
#[pyfunction]
fn hilbert_function(gens: Vec<PyPoly>, up_to: u32) -> PyResult<Vec<u64>> {
    let ring = gens
        .first()
        .map(|g| g.0.ring().clone())
        .ok_or_else(|| PyValueError::new_err("at least one generator is required"))?;
    let gens: Vec<MPoly> = gens.into_iter().map(|g| g.0).collect();
    let q = GradedQuotient::new(&IdealBasis::new(&ring, gens, MonomialOrder::DegRevLex))
        .map_err(precondition_err)?;
    Ok((0..=up_to).map(|n| q.hilbert(n)).collect())
}

/// Hilbert function of projective points such as `"1:0:0;0:1:0"`, degrees `0..=up_to`.
#[pyfunction]
#[pyo3(signature = (points, up_to, field="Q"))]
fn points_hilbert_function(points: &str, up_to: u32, field: &str) -> PyResult<Vec<u64>> {
    let field = parse_field(field).map_err(value_err)?;
    let ps = parse_points(points, &field).map_err(value_err)?;
    (0..=up_to)
        .map(|n| hilbert_function_points(&ps, n).map_err(precondition_err))
        .collect()
}

#[pyfunction]
#[pyo3(signature = (points, field="Q"))]
fn is_generic_position(points: &str, field: &str) -> PyResult<bool> {
    let field = parse_field(field).map_err(value_err)?;
    let ps = parse_points(points, &field).map_err(value_err)?;
    core_generic(&ps).map_err(precondition_err)
}

/// Subvariety report for `V(sub_vars)` on `f = 0`, as the CLI's JSON dict.
#[pyfunction]
#[pyo3(signature = (f, sub_vars, point=None, samples=DEFAULT_SAMPLES, seed=DEFAULT_SEED))]
fn analyze_subvariety<'py>(
    py: Python<'py>,
    f: &PyPoly,
    sub_vars: Vec<String>,
    point: Option<String>,
    samples: usize,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let mut req = AnalysisRequest::new(Command::Subvariety);
    req.field = f.0.ring().field().to_string();
    req.vars = f.0.ring().vars().to_vec();
    req.polys = vec![f.0.to_text()];
    req.sub_vars = sub_vars;
    req.point = point;
    req.samples = samples;
    req.seed = seed;
    let report = cli::run(&req).map_err(cli_err)?;
    json_to_py(py, &serde_json::to_string(&report).expect("serializes"))
}

/// Runs a corpus given as text; returns the aggregated report as a dict.
#[pyfunction]
fn run_corpus<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    let out = cli::run_corpus(text);
    json_to_py(py, &serde_json::to_string(&out).expect("serializes"))
}

/// Runs the command line with `args` (without the program name); returns
/// `(exit_code, stdout, stderr)`.
#[pyfunction]
fn main(args: Vec<String>) -> (i32, String, String) {
    let out = cli::run_args(std::iter::once("conelab".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
pub fn pyconelab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("PreconditionError", m.py().get_type::<PreconditionError>())?;
    m.add_class::<PyRing>()?;
    m.add_class::<PyPoly>()?;
    m.add_class::<PyPointReport>()?;
    m.add_function(wrap_pyfunction!(analyze_point, m)?)?;
    m.add_function(wrap_pyfunction!(analyze_curve_ideal, m)?)?;
    m.add_function(wrap_pyfunction!(branch_analysis, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_function, m)?)?;
    m.add_function(wrap_pyfunction!(points_hilbert_function, m)?)?;
    m.add_function(wrap_pyfunction!(is_generic_position, m)?)?;
    m.add_function(wrap_pyfunction!(analyze_subvariety, m)?)?;
    m.add_function(wrap_pyfunction!(run_corpus, m)?)?;
    m.add_function(wrap_pyfunction!(main, m)?)?;
    Ok(())
}
