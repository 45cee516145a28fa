//! Python bindings: subspaces, their angles and asymmetric distances.

use num_complex::Complex64;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

use subspace_angles::cli::MatrixMetric;
use subspace_angles::{self as core, AngleRoute, Error, FieldTag, SymmetrizeMode, Tolerance};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Numerical(_) | Error::DegenerateBasis(_) => {
            PyArithmeticError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parse_field(field: &str) -> PyResult<FieldTag> {
    match field {
        "real" => Ok(FieldTag::Real),
        "complex" => Ok(FieldTag::Complex),
        other => Err(PyValueError::new_err(format!(
            "field must be \"real\" or \"complex\", got {other:?}"
        ))),
    }
}

fn parse_route(route: &str) -> PyResult<AngleRoute> {
    route.parse().map_err(to_py)
}

fn tolerance(rank_tol: f64, angle_tol: f64) -> PyResult<Tolerance> {
    let tol = Tolerance {
        rank_tol,
        angle_tol,
        ..Tolerance::default()
    };
    tol.validate().map_err(to_py)?;
    Ok(tol)
}

/// A linear subspace of R^n or C^n spanned by the given row vectors.
#[pyclass(name = "Subspace", module = "subspace_angles", frozen, from_py_object)]
#[derive(Clone)]
struct PySubspace {
    inner: core::Subspace,
    tol: Tolerance,
}

#[pymethods]
impl PySubspace {
    #[new]
    #[pyo3(signature = (vectors, ambient_dim, field = "real", rank_tol = 1e-10, angle_tol = 1e-9))]
    fn new(
        vectors: Vec<Vec<Complex64>>,
        ambient_dim: usize,
        field: &str,
        rank_tol: f64,
        angle_tol: f64,
    ) -> PyResult<Self> {
        let field = parse_field(field)?;
        if field == FieldTag::Real && vectors.iter().flatten().any(|z| z.im != 0.0) {
            return Err(PyValueError::new_err("complex entry in a real subspace"));
        }
        let tol = tolerance(rank_tol, angle_tol)?;
        let inner = core::Subspace::from_rows(field, ambient_dim, &vectors, &tol).map_err(to_py)?;
        Ok(PySubspace { inner, tol })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn ambient_dim(&self) -> usize {
        self.inner.ambient_dim()
    }

    #[getter]
    fn field(&self) -> &'static str {
        self.inner.field().name()
    }

    /// Orthonormal basis vectors, one per row.
    fn basis(&self) -> Vec<Vec<Complex64>> {
        self.inner.basis().columns()
    }

    fn contains(&self, other: &PySubspace) -> PyResult<bool> {
        self.inner.contains(&other.inner, &self.tol).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!(
            "Subspace(dim={}, ambient_dim={}, field={:?})",
            self.inner.dim(),
            self.inner.ambient_dim(),
            self.inner.field().name()
        )
    }
}

/// Θ, Υ, Ψ and the principal angles of an ordered pair, in radians.
#[pyclass(name = "AngleReport", module = "subspace_angles", frozen, get_all)]
struct PyAngleReport {
    theta_vw: f64,
    theta_wv: f64,
    upsilon: f64,
    psi: f64,
    psi_ill_conditioned: bool,
    principal_angles: Vec<f64>,
    projection_factor: f64,
    route: String,
}

#[pymethods]
impl PyAngleReport {
    fn __repr__(&self) -> String {
        format!(
            "AngleReport(theta_vw={}, theta_wv={}, upsilon={}, psi={}, route={:?})",
            self.theta_vw, self.theta_wv, self.upsilon, self.psi, self.route
        )
    }
}

#[pyfunction]
fn principal_angles(v: &PySubspace, w: &PySubspace) -> PyResult<Vec<f64>> {
    if v.inner.is_zero() || w.inner.is_zero() {
        return Ok(Vec::new());
    }
    Ok(core::principal_decomposition(&v.inner, &w.inner, &v.tol)
        .map_err(to_py)?
        .angles)
}

/// Θ from `v` to `w`: zero iff `v ⊂ w`.
#[pyfunction]
#[pyo3(signature = (v, w, route = "principal"))]
fn asymmetric_angle(v: &PySubspace, w: &PySubspace, route: &str) -> PyResult<f64> {
    core::asymmetric_angle(&v.inner, &w.inner, parse_route(route)?, &v.tol).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (v, w, route = "principal"))]
fn disjointness_angle(v: &PySubspace, w: &PySubspace, route: &str) -> PyResult<f64> {
    core::disjointness_angle(&v.inner, &w.inner, parse_route(route)?, &v.tol).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (v, w, route = "principal"))]
fn supplementation_angle(v: &PySubspace, w: &PySubspace, route: &str) -> PyResult<f64> {
    core::supplementation_angle(&v.inner, &w.inner, parse_route(route)?, &v.tol).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (v, w, route = "principal"))]
fn angle_report(v: &PySubspace, w: &PySubspace, route: &str) -> PyResult<PyAngleReport> {
    let r = core::angle_report(&v.inner, &w.inner, parse_route(route)?, &v.tol).map_err(to_py)?;
    Ok(PyAngleReport {
        theta_vw: r.theta_vw,
        theta_wv: r.theta_wv,
        upsilon: r.upsilon,
        psi: r.psi,
        psi_ill_conditioned: r.psi_ill_conditioned,
        principal_angles: r.principal_angles,
        projection_factor: r.projection_factor,
        route: r.route.flag().to_string(),
    })
}

fn parse_metric(metric: &str) -> PyResult<MatrixMetric> {
    metric
        .parse()
        .map_err(|e: subspace_angles::cli::CliError| PyValueError::new_err(e.to_string()))
}

/// Distance from `v` to `w` under a named metric, e.g. "fubini_study" or "gap".
#[pyfunction]
fn distance(v: &PySubspace, w: &PySubspace, metric: &str) -> PyResult<f64> {
    let m = parse_metric(metric)?;
    let ids = ["v", "w"];
    let table = subspace_angles::cli::distance_matrix(
        &ids,
        &[v.inner.clone(), w.inner.clone()],
        m,
        None,
        &v.tol,
    )
    .map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(table.values[0][1])
}

/// Pairwise table, entry `[i][j]` from `subspaces[i]` to `subspaces[j]`.
#[pyfunction]
#[pyo3(signature = (subspaces, metric, symmetrize = None))]
fn distance_matrix(
    subspaces: Vec<PySubspace>,
    metric: &str,
    symmetrize: Option<&str>,
) -> PyResult<Vec<Vec<f64>>> {
    let m = parse_metric(metric)?;
    let mode = symmetrize
        .filter(|s| *s != "none")
        .map(|s| s.parse::<SymmetrizeMode>().map_err(to_py))
        .transpose()?;
    let tol = subspaces.first().map(|s| s.tol).unwrap_or_default();
    let names: Vec<String> = (0..subspaces.len()).map(|k| k.to_string()).collect();
    let ids: Vec<&str> = names.iter().map(String::as_str).collect();
    let inner: Vec<core::Subspace> = subspaces.into_iter().map(|s| s.inner).collect();
    let table = subspace_angles::cli::distance_matrix(&ids, &inner, m, mode, &tol)
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(table.values)
}

#[pyfunction]
fn metric_names() -> Vec<&'static str> {
    MatrixMetric::all().map(|m| m.name()).collect()
}

#[pymodule(name = "subspace_angles")]
fn python_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySubspace>()?;
    m.add_class::<PyAngleReport>()?;
    m.add_function(wrap_pyfunction!(principal_angles, m)?)?;
    m.add_function(wrap_pyfunction!(asymmetric_angle, m)?)?;
    m.add_function(wrap_pyfunction!(disjointness_angle, m)?)?;
    m.add_function(wrap_pyfunction!(supplementation_angle, m)?)?;
    m.add_function(wrap_pyfunction!(angle_report, m)?)?;
    m.add_function(wrap_pyfunction!(distance, m)?)?;
    m.add_function(wrap_pyfunction!(distance_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(metric_names, m)?)?;
    Ok(())
}
