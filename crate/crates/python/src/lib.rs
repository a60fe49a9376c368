//! Python module `gradalg`. Reports cross the boundary as JSON strings in
//! the same format the command line writes.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use gradalg::algebra::{is_division_graded, GradedAlgebra};
use gradalg::cohomology::{
    class_order, classes_equivalent, extend_class, h2_of_subgroup, is_cocycle, restrict, ExpCocycle,
};
use gradalg::embeddings::{matrix_embed, matrix_iso};
use gradalg::graded_matrix::GradedMatrixAlgebra;
use gradalg::group::{build_group, enumerate_subgroups, FiniteGroup, GroupSpec, Subgroup, DEFAULT_ORDER_CAP};
use gradalg::io::{self, AlgebraJson, CocycleJson, Workspace};
use gradalg::pi::multilinear_containment;

fn err(e: gradalg::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse<T: for<'de> serde::Deserialize<'de>>(text: &str) -> PyResult<T> {
    serde_json::from_str(text).map_err(|e| PyValueError::new_err(format!("invalid JSON: {e}")))
}

#[pyclass(name = "Group", frozen)]
struct PyGroup(Arc<FiniteGroup>);

#[pymethods]
impl PyGroup {
    /// `Group("C2xC2")`, `Group("D4")`, `Group("table:@file.json")`.
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(Self(build_group(&GroupSpec::parse(spec).map_err(err)?).map_err(err)?))
    }

    #[getter]
    fn name(&self) -> String {
        self.0.name().to_string()
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    fn mul(&self, a: usize, b: usize) -> PyResult<usize> {
        let n = self.0.order();
        if a >= n || b >= n {
            return Err(PyValueError::new_err("element out of range"));
        }
        Ok(self.0.mul(a, b))
    }

    fn labels(&self) -> Vec<String> {
        self.0.labels().to_vec()
    }

    fn is_abelian(&self) -> bool {
        self.0.is_abelian()
    }

    fn subgroups(&self) -> Vec<Vec<usize>> {
        enumerate_subgroups(&self.0).iter().map(|h| h.members().to_vec()).collect()
    }

    /// H^2 with values in the multiplicative group, as JSON.
    #[pyo3(signature = (subgroup=None))]
    fn h2(&self, subgroup: Option<Vec<usize>>) -> PyResult<String> {
        let h = match subgroup {
            Some(m) => Subgroup::new(&self.0, m).map_err(err)?,
            None => Subgroup::full(&self.0),
        };
        Ok(io::to_pretty(&io::h2_to_json(&h2_of_subgroup(&self.0, &h, DEFAULT_ORDER_CAP).map_err(err)?)))
    }

    fn __repr__(&self) -> String {
        format!("Group('{}', order={})", self.0.name(), self.0.order())
    }
}

#[pyclass(name = "Cocycle", frozen)]
struct PyCocycle(ExpCocycle);

#[pymethods]
impl PyCocycle {
    /// From cocycle JSON (`group`, `subgroup`, `modulus`, `exponents`).
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let raw: CocycleJson = parse(text)?;
        Ok(Self(Workspace::default().cocycle(&raw).map_err(err)?))
    }

    fn to_json(&self) -> String {
        io::to_pretty(&io::cocycle_to_json(&self.0))
    }

    fn is_cocycle(&self) -> bool {
        is_cocycle(&self.0)
    }

    /// Order of the class in H^2.
    fn order(&self) -> PyResult<u64> {
        class_order(&self.0).map_err(err)
    }

    fn restrict(&self, members: Vec<usize>) -> PyResult<Self> {
        let h = Subgroup::new(self.0.group(), members).map_err(err)?;
        Ok(Self(restrict(&self.0, &h).map_err(err)?))
    }

    fn equivalent(&self, other: &PyCocycle) -> PyResult<bool> {
        Ok(classes_equivalent(&self.0, &other.0).map_err(err)?.is_some())
    }

    /// A cocycle on `target` (default: the whole group) restricting to this
    /// class, or `None`.
    #[pyo3(signature = (target=None))]
    fn extend(&self, target: Option<Vec<usize>>) -> PyResult<Option<Self>> {
        let g = self.0.group();
        let t = match target {
            Some(m) => Subgroup::new(g, m).map_err(err)?,
            None => Subgroup::full(g),
        };
        Ok(extend_class(&self.0, &t).map_err(err)?.map(Self))
    }
}

#[pyclass(name = "Algebra", frozen)]
struct PyAlgebra(GradedMatrixAlgebra);

#[pymethods]
impl PyAlgebra {
    /// From algebra JSON (`group`, optional `subgroup`, `cocycle`, `k`, `theta`).
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let raw: AlgebraJson = parse(text)?;
        Ok(Self(Workspace::default().algebra(&raw).map_err(err)?))
    }

    fn to_json(&self) -> String {
        io::to_pretty(&io::algebra_to_json(&self.0))
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn k(&self) -> usize {
        self.0.k()
    }

    #[getter]
    fn theta(&self) -> Vec<usize> {
        self.0.theta().to_vec()
    }

    fn support(&self) -> Vec<usize> {
        self.0.support()
    }

    fn is_division_graded(&self) -> bool {
        is_division_graded(&self.0)
    }

    /// `(verdict, report_json)` for a graded embedding into `other`.
    fn embeds_into(&self, other: &PyAlgebra) -> PyResult<(bool, String)> {
        let r = matrix_embed(&self.0, &other.0).map_err(err)?;
        Ok((r.is_yes(), io::to_pretty(&io::report_to_json(&r))))
    }

    fn isomorphic_to(&self, other: &PyAlgebra) -> PyResult<(bool, String)> {
        let r = matrix_iso(&self.0, &other.0).map_err(err)?;
        Ok((r.is_yes(), io::to_pretty(&io::report_to_json(&r))))
    }

    /// Whether every multilinear identity of this algebra up to degree
    /// `n_max` holds in `other`.
    #[pyo3(signature = (other, n_max=3))]
    fn identities_contained_in(&self, py: Python<'_>, other: &PyAlgebra, n_max: usize) -> PyResult<(bool, String)> {
        let r = py.detach(|| multilinear_containment(&self.0, &other.0, n_max)).map_err(err)?;
        Ok((r.contained, io::to_pretty(&io::containment_to_json(&r))))
    }
}

/// Runs a command-line invocation in process: `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run(py: Python<'_>, args: Vec<String>) -> (i32, String, String) {
    let out = py.detach(|| gradalg_cli::run_command(std::iter::once("gradalg".to_string()).chain(args)));
    (out.code, out.stdout, out.stderr)
}

#[pymodule(name = "gradalg")]
fn gradalg_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_class::<PyCocycle>()?;
    m.add_class::<PyAlgebra>()?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
