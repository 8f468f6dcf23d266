//! Python bindings.
//!
//! Labels are passed as strings (`"T"`, `"X2"`, `"F0"`, ...) and products come
//! back as `{label: multiplicity}` dictionaries.

use std::collections::BTreeMap;

use bpring::bimodule::{catalogue as core_catalogue, entry, BimoduleLabel};
use bpring::fusion::{decompose_detailed, Decomposition};
use bpring::ring::{self, Format};
use bpring::scalar::ensure_prime;
use bpring::wall;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn value_err(e: bpring::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn runtime_err(e: bpring::Error) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

fn label(text: &str, p: u32) -> PyResult<BimoduleLabel> {
    BimoduleLabel::parse_for(text, p).map_err(value_err)
}

fn summands(d: &Decomposition) -> BTreeMap<String, usize> {
    d.iter().map(|(l, m)| (l.to_string(), m)).collect()
}

/// Catalogue entries as dictionaries, in basis order.
#[pyfunction]
fn catalogue(py: Python<'_>, p: u32) -> PyResult<Vec<Bound<'_, PyDict>>> {
    let cat = core_catalogue(p).map_err(value_err)?;
    cat.iter()
        .map(|b| {
            let d = PyDict::new(py);
            d.set_item("label", b.label.map(|l| l.to_string()))?;
            d.set_item("subgroup", b.subgroup.to_string())?;
            d.set_item("objects", b.object_names.clone())?;
            d.set_item("associator_exponent", b.cocycle.q)?;
            d.set_item("left_action", b.left_act.clone())?;
            d.set_item("right_action", b.right_act.clone())?;
            Ok(d)
        })
        .collect()
}

/// The decomposition of `left ⊗ right` as `{label: multiplicity}`.
#[pyfunction]
fn decompose(p: u32, left: &str, right: &str) -> PyResult<BTreeMap<String, usize>> {
    Ok(summands(&decompose_detail_inner(p, left, right)?.decomposition))
}

fn decompose_detail_inner(p: u32, left: &str, right: &str) -> PyResult<bpring::fusion::FusionReport> {
    let p = ensure_prime(p).map_err(value_err)?;
    let (m, n) = (entry(p, label(left, p)?), entry(p, label(right, p)?));
    decompose_detailed(&m, &n).map_err(runtime_err)
}

/// The decomposition together with the intermediate ladder and orbit data.
#[pyfunction]
fn decompose_detail<'py>(py: Python<'py>, p: u32, left: &str, right: &str) -> PyResult<Bound<'py, PyDict>> {
    let r = decompose_detail_inner(p, left, right)?;
    let d = PyDict::new(py);
    d.set_item("p", r.p)?;
    d.set_item("left", &r.left)?;
    d.set_item("right", &r.right)?;
    d.set_item("ladder_objects", r.ladder_objects)?;
    d.set_item("components", r.components)?;
    d.set_item("end_dimensions", r.end_dimensions.clone())?;
    d.set_item("primitive_idempotents", r.primitive_idempotents)?;
    d.set_item("simples", r.simples)?;
    let orbits = r
        .orbits
        .iter()
        .map(|o| {
            let od = PyDict::new(py);
            od.set_item("base", &o.base_name)?;
            od.set_item("size", o.size)?;
            od.set_item("stabilizer", o.stabilizer.to_string())?;
            od.set_item("associator_exponent", o.exponent)?;
            od.set_item("label", o.label.to_string())?;
            Ok(od)
        })
        .collect::<PyResult<Vec<_>>>()?;
    d.set_item("orbits", orbits)?;
    d.set_item("decomposition", summands(&r.decomposition))?;
    Ok(d)
}

/// The multiplication table of the ring at a fixed prime.
#[pyclass(name = "RingTable", module = "bpring_py", frozen, eq)]
#[derive(PartialEq)]
struct PyRingTable {
    inner: ring::RingTable,
}

#[pymethods]
impl PyRingTable {
    /// Compute every product with the fusion engine.
    #[staticmethod]
    fn build(py: Python<'_>, p: u32) -> PyResult<Self> {
        let inner = py.detach(|| ring::build_table(p)).map_err(value_err)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn closed_form(p: u32) -> PyResult<Self> {
        Ok(Self { inner: ring::closed_form_table(p).map_err(value_err)? })
    }

    /// The table predicted by stacking domain walls.
    #[staticmethod]
    fn oracle(p: u32) -> PyResult<Self> {
        Ok(Self { inner: wall::oracle_table(p).map_err(value_err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self { inner: ring::RingTable::from_json(text).map_err(value_err)? })
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p
    }

    #[getter]
    fn basis(&self) -> Vec<String> {
        self.inner.basis.iter().map(ToString::to_string).collect()
    }

    fn product(&self, a: &str, b: &str) -> PyResult<BTreeMap<String, usize>> {
        let p = self.inner.p;
        Ok(summands(&self.inner.product(label(a, p)?, label(b, p)?)))
    }

    fn constant(&self, a: &str, b: &str, c: &str) -> PyResult<u32> {
        let p = self.inner.p;
        Ok(self.inner.constant(label(a, p)?, label(b, p)?, label(c, p)?))
    }

    /// Human-readable differences against another table; empty when equal.
    fn diff(&self, other: &Self) -> Vec<String> {
        self.inner.diff(&other.inner)
    }

    /// Serialize as `"json"`, `"md"` or `"csv"`.
    #[pyo3(signature = (format = "json"))]
    fn serialize(&self, format: &str) -> PyResult<String> {
        let f: Format = format.parse().map_err(value_err)?;
        Ok(self.inner.serialize(f))
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    /// Unit and associativity failures, as lists of messages.
    fn check_axioms<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let r = ring::check_axioms(&self.inner);
        let d = PyDict::new(py);
        d.set_item("unit", r.unit)?;
        d.set_item("associativity", r.associativity)?;
        d.set_item("multiplicities", r.multiplicities)?;
        Ok(d)
    }

    fn units<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let u = ring::units_group(&self.inner);
        let d = PyDict::new(py);
        d.set_item("elements", u.units.iter().map(ToString::to_string).collect::<Vec<_>>())?;
        d.set_item("order", u.order())?;
        d.set_item("dihedral", u.is_dihedral())?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!("RingTable(p={}, dim={})", self.inner.p, self.inner.dim())
    }
}

#[pymodule]
fn bpring_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(catalogue, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(decompose_detail, m)?)?;
    m.add_class::<PyRingTable>()?;
    Ok(())
}
