//! Python bindings: spaces with their fixed-point data, classes, characteristic
//! numbers, the L-operator routes and the stable-structure search.

use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyTuple};
use std::collections::BTreeMap;
use torigen::chern::s_to_chern;
use torigen::divdiff::{flag_class as flag_class_rs, grassmann_class as grassmann_class_rs, FlagMethod};
use torigen::exactalg::render_rational;
use torigen::genus::{chern_character_of_genus, cobordism_class, s_number_numeric, s_numbers, verify_low_vanishing, weyl_invariant};
use torigen::rootdata::{build_space, euler_characteristic, fixed_point_weights, FixedPointData, HomogeneousSpaceSpec};
use torigen::stablex::{check_necessary, enumerate_feasible, SignAssignment};
use torigen::symmfunc::OmegaIndex;
use torigen::Error;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Parse(_) | Error::Invalid(_) | Error::UnsupportedGroup(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

/// A homogeneous space with a chosen invariant structure.
#[pyclass(module = "torigen_py", frozen)]
struct Space {
    spec: HomogeneousSpaceSpec,
    fp: FixedPointData,
}

#[pymethods]
impl Space {
    #[new]
    #[pyo3(signature = (descriptor, structure=None, signs=None))]
    fn new(descriptor: &str, structure: Option<&str>, signs: Option<Vec<i8>>) -> PyResult<Self> {
        let mut spec = build_space(descriptor).map_err(to_py)?;
        if let Some(s) = structure {
            spec = spec.with_structure(s).map_err(to_py)?;
        }
        if let Some(s) = signs {
            spec = spec.with_signs(&s).map_err(to_py)?;
        }
        let fp = fixed_point_weights(&spec).map_err(to_py)?;
        Ok(Space { spec, fp })
    }

    #[getter]
    fn descriptor(&self) -> String {
        self.spec.descriptor.clone()
    }

    #[getter]
    fn structure(&self) -> String {
        self.spec.structure.clone()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.fp.dim()
    }

    fn euler_characteristic(&self) -> usize {
        euler_characteristic(&self.spec)
    }

    /// `[(label, weights, sign)]`
    fn fixed_points(&self) -> Vec<(String, Vec<Vec<i64>>, i8)> {
        self.fp.points.iter().map(|p| (p.label.clone(), p.weights.clone(), p.sign)).collect()
    }

    fn cobordism_class(&self) -> PyResult<String> {
        Ok(cobordism_class(&self.fp).map_err(to_py)?.render())
    }

    /// `{omega tuple: value}`
    fn s_numbers<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for (k, v) in s_numbers(&self.fp).map_err(to_py)? {
            d.set_item(PyTuple::new(py, k.0)?, v)?;
        }
        Ok(d)
    }

    /// Exact value at an integer point, as `"p/q"` text.
    fn s_number_numeric(&self, omega: Vec<u32>, point: Vec<i64>) -> PyResult<String> {
        let om = OmegaIndex(omega).padded(self.fp.dim());
        Ok(render_rational(&s_number_numeric(&self.fp, &om, &point).map_err(to_py)?))
    }

    /// `{"c1^2*c2": value}`
    fn chern_numbers(&self) -> PyResult<BTreeMap<String, BigInt>> {
        let s = s_numbers(&self.fp).map_err(to_py)?;
        Ok(s_to_chern(&s, self.fp.dim()).map_err(to_py)?.entries().into_iter().collect())
    }

    fn genus_series(&self, order: u32) -> PyResult<String> {
        Ok(chern_character_of_genus(&self.fp, order).map_err(to_py)?.render())
    }

    /// `(vanishing, weyl_invariance)`
    fn verify(&self) -> PyResult<(bool, bool)> {
        let van = verify_low_vanishing(&self.fp).map_err(to_py)?.ok;
        let ch = chern_character_of_genus(&self.fp, 2).map_err(to_py)?;
        Ok((van, weyl_invariant(&self.spec, &ch).map_err(to_py)?))
    }

    /// Admissible sign tables as lists of rows (eps reported as +1).
    #[pyo3(signature = (budget=1 << 24))]
    fn stable_structures(&self, py: Python<'_>, budget: u128) -> PyResult<Vec<Vec<Vec<i8>>>> {
        let spec = self.spec.clone();
        let all = py.detach(move || enumerate_feasible(&spec, budget)).map_err(to_py)?;
        Ok(all.into_iter().map(|a| a.a).collect())
    }

    #[pyo3(signature = (table, epsilon=1))]
    fn is_admissible(&self, table: Vec<Vec<i8>>, epsilon: i8) -> PyResult<bool> {
        Ok(check_necessary(&self.spec, &SignAssignment { a: table, epsilon }).map_err(to_py)?.ok)
    }

    fn __repr__(&self) -> String {
        format!("Space({:?}, structure={:?})", self.spec.descriptor, self.spec.structure)
    }
}

/// Class of `U(n)/T^n` by one of `corL`, `tchi`, `thm8`.
#[pyfunction]
#[pyo3(signature = (n, method="corL"))]
fn flag_class(py: Python<'_>, n: usize, method: &str) -> PyResult<String> {
    let m: FlagMethod = method.parse().map_err(to_py)?;
    Ok(py.detach(move || flag_class_rs(n, m)).map_err(to_py)?.render())
}

#[pyfunction]
fn grassmann_class(q: usize, l: usize) -> PyResult<String> {
    Ok(grassmann_class_rs(q, l).map_err(to_py)?.render())
}

/// `[(row, got, expected, ok)]` for the reference table.
#[pyfunction]
fn reproduce(py: Python<'_>) -> Vec<(String, String, String, bool)> {
    py.detach(torigen::cli::reproduce_table).into_iter().map(|r| (r.name, r.got, r.expected, r.ok)).collect()
}

#[pymodule]
fn torigen_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Space>()?;
    m.add_function(wrap_pyfunction!(flag_class, m)?)?;
    m.add_function(wrap_pyfunction!(grassmann_class, m)?)?;
    m.add_function(wrap_pyfunction!(reproduce, m)?)?;
    Ok(())
}
