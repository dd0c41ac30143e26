use logsyn_core::logtc::{default_table_precision, logtc_table};
use logsyn_core::padic::smith_normal_form;
use logsyn_core::syntomic::{closed_form, descent_square_check, nil_invariance_check, run_syntomic};
use logsyn_core::toric::{axes_table, perfection_check, verify_axes_proof_with};
use logsyn_core::witt::{expected_torsion_exponent, ptypical_decomposition};
use logsyn_core::{FinPModule, PMatrix, PTypicalWitt, ResidueRing, Status};
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: logsyn_core::Error) -> PyErr {
    match e {
        logsyn_core::Error::InvalidArgument(_) | logsyn_core::Error::PrecisionMismatch { .. } => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyArithmeticError::new_err(e.to_string()),
    }
}

/// A finitely generated `Z/p^N`-module, `sum Z/p^{a_k}`.
#[pyclass(name = "Module", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyModuleValue(FinPModule);

#[pymethods]
impl PyModuleValue {
    #[new]
    fn new(p: u64, precision: u32, exponents: Vec<u32>) -> PyResult<Self> {
        let ring = ResidueRing::new(p, precision).map_err(err)?;
        Ok(PyModuleValue(FinPModule::from_exponents(ring, exponents)))
    }

    #[getter]
    fn exponents(&self) -> Vec<u32> {
        self.0.exponents().to_vec()
    }

    #[getter]
    fn torsion(&self) -> Vec<u32> {
        self.0.torsion()
    }

    #[getter]
    fn at_cap(&self) -> usize {
        self.0.at_cap_count()
    }

    #[getter]
    fn precision(&self) -> u32 {
        self.0.precision()
    }

    fn describe(&self) -> Vec<String> {
        self.0.describe()
    }

    fn __repr__(&self) -> String {
        format!("Module({})", self.0)
    }
}

/// An element of `W_n(F_p)`.
#[pyclass(name = "Witt", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Hash)]
struct PyWitt(PTypicalWitt);

#[pymethods]
impl PyWitt {
    #[new]
    fn new(p: u64, coords: Vec<u64>) -> PyResult<Self> {
        PTypicalWitt::new(p, coords).map(PyWitt).map_err(err)
    }

    #[staticmethod]
    fn teichmuller(p: u64, a: u64, length: usize) -> Self {
        PyWitt(PTypicalWitt::teichmuller(p, a, length))
    }

    #[staticmethod]
    fn from_integer(p: u64, m: i64, length: usize) -> Self {
        PyWitt(PTypicalWitt::from_integer(p, m, length))
    }

    #[getter]
    fn coords(&self) -> Vec<u64> {
        self.0.coords().to_vec()
    }

    #[getter]
    fn prime(&self) -> u64 {
        self.0.prime()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __add__(&self, other: &PyWitt) -> PyResult<PyWitt> {
        self.0.add(&other.0).map(PyWitt).map_err(err)
    }

    fn __sub__(&self, other: &PyWitt) -> PyResult<PyWitt> {
        self.0.sub(&other.0).map(PyWitt).map_err(err)
    }

    fn __mul__(&self, other: &PyWitt) -> PyResult<PyWitt> {
        self.0.mul(&other.0).map(PyWitt).map_err(err)
    }

    fn __neg__(&self) -> PyResult<PyWitt> {
        self.0.neg().map(PyWitt).map_err(err)
    }

    fn frobenius(&self) -> PyResult<PyWitt> {
        self.0.frobenius().map(PyWitt).map_err(err)
    }

    fn verschiebung(&self) -> PyWitt {
        PyWitt(self.0.verschiebung())
    }

    fn ghost(&self) -> Vec<String> {
        self.0.ghost().iter().map(|g| g.to_string()).collect()
    }

    fn to_integer(&self) -> u64 {
        self.0.to_integer()
    }

    fn __repr__(&self) -> String {
        format!("Witt(p={}, {})", self.0.prime(), self.0)
    }
}

fn modules(degrees: &[FinPModule]) -> Vec<PyModuleValue> {
    degrees.iter().cloned().map(PyModuleValue).collect()
}

/// Smith exponents of an integer matrix reduced mod `p^N`.
#[pyfunction]
fn smith_exponents(p: u64, precision: u32, rows: Vec<Vec<i64>>) -> PyResult<Vec<u32>> {
    let ring = ResidueRing::new(p, precision).map_err(err)?;
    let cols = rows.first().map_or(0, |r| r.len());
    let rows: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let m = PMatrix::from_rows(ring, cols, &rows).map_err(err)?;
    Ok(smith_normal_form(&m).exponents)
}

/// `Z_p^syn(i)` of `(k[x]/x^e, N)` compared with the closed form.
#[pyfunction]
#[pyo3(signature = (p, e, i, precision=None, orbit_bound=None))]
fn syntomic<'py>(
    py: Python<'py>,
    p: u64,
    e: u64,
    i: u64,
    precision: Option<u32>,
    orbit_bound: Option<u64>,
) -> PyResult<Bound<'py, PyDict>> {
    let run = run_syntomic(p, e, i, precision, orbit_bound).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("precision", run.precision)?;
    d.set_item("orbit_bound", run.orbit_bound)?;
    d.set_item("degrees", modules(&run.result.degrees))?;
    d.set_item("expected", modules(&run.comparison.expected))?;
    d.set_item("pass", run.comparison.status == Status::Pass)?;
    let status = match run.comparison.status {
        Status::Pass => "pass",
        Status::Mismatch => "mismatch",
        Status::PrecisionFailure => "precision-failure",
    };
    d.set_item("status", status)?;
    d.set_item("discrepancies", run.comparison.discrepancies.clone())?;
    let orbits: Vec<(u64, u32, Vec<PyModuleValue>)> = run
        .result
        .orbits
        .iter()
        .map(|o| (o.orbit, o.cutoff, modules(&o.degrees)))
        .collect();
    d.set_item("orbits", orbits)?;
    Ok(d)
}

/// `(degree, rendered summand)` terms of the closed form.
#[pyfunction]
fn closed_form_terms(p: u64, e: u64, i: u64) -> Vec<(u32, String)> {
    closed_form(e, i).terms.iter().map(|(d, s)| (*d, s.render(p))).collect()
}

/// `{degree: (summands, module)}` for degrees `lo..=hi`.
#[pyfunction]
#[pyo3(signature = (p, e, lo, hi, precision=None))]
fn logtc<'py>(py: Python<'py>, p: u64, e: u64, lo: i64, hi: i64, precision: Option<u32>) -> PyResult<Bound<'py, PyDict>> {
    let range = lo..=hi;
    let n = precision.unwrap_or_else(|| default_table_precision(p, e, &range));
    let table = logtc_table(e, p, range, n).map_err(err)?;
    let d = PyDict::new(py);
    for entry in table.entries {
        let summands: Vec<String> = entry.summands.iter().map(|s| s.render(p)).collect();
        d.set_item(entry.degree, (summands, PyModuleValue(entry.module)))?;
    }
    Ok(d)
}

/// `[(j, s_j)]` for `bW_m(F_p)`.
#[pyfunction]
fn witt_decompose(p: u64, m: u64) -> Vec<(u64, u32)> {
    ptypical_decomposition(p, m).components
}

#[pyfunction]
fn torsion_exponent(p: u64, e: u64, i: u64, j: u64) -> u32 {
    expected_torsion_exponent(p, e, i, j)
}

fn checks(items: &[logsyn_core::Check]) -> Vec<(String, bool, String)> {
    items.iter().map(|c| (c.name.clone(), c.pass, c.detail.clone())).collect()
}

/// `(pass, [(name, pass, detail)])`.
#[pyfunction]
#[pyo3(signature = (p, i, precision, orbit_bound=None))]
fn descent(p: u64, i: u64, precision: u32, orbit_bound: Option<u64>) -> PyResult<(bool, Vec<(String, bool, String)>)> {
    let r = descent_square_check(p, i, precision, orbit_bound).map_err(err)?;
    Ok((r.pass, checks(&r.checks)))
}

#[pyfunction]
fn nil_invariance(p: u64, e: u64, i: u64, precision: u32) -> PyResult<(bool, Vec<(String, bool, String)>)> {
    let r = nil_invariance_check(e, p, i, precision).map_err(err)?;
    Ok((r.pass, checks(&r.checks)))
}

#[pyfunction]
#[pyo3(signature = (v=(-1, 1)))]
fn verify_axes(v: (i64, i64)) -> PyResult<(bool, Vec<(String, bool, String)>)> {
    let r = verify_axes_proof_with([v.0, v.1]).map_err(err)?;
    Ok((r.pass, checks(&r.items)))
}

/// `(pass, computed per degree)`.
#[pyfunction]
fn axes(p: u64, i: u64, precision: u32) -> PyResult<(bool, Vec<PyModuleValue>)> {
    let t = axes_table(p, i, precision).map_err(err)?;
    Ok((t.pass, modules(&t.computed)))
}

/// `(injective, surjective, additive)`.
#[pyfunction]
fn perfection(p: u64, k: u32, b: i64) -> PyResult<(bool, bool, bool)> {
    let r = perfection_check(p, k, b).map_err(err)?;
    Ok((r.injective, r.surjective, r.additive))
}

#[pymodule]
fn logsyn(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyModuleValue>()?;
    m.add_class::<PyWitt>()?;
    m.add_function(wrap_pyfunction!(smith_exponents, m)?)?;
    m.add_function(wrap_pyfunction!(syntomic, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_terms, m)?)?;
    m.add_function(wrap_pyfunction!(logtc, m)?)?;
    m.add_function(wrap_pyfunction!(witt_decompose, m)?)?;
    m.add_function(wrap_pyfunction!(torsion_exponent, m)?)?;
    m.add_function(wrap_pyfunction!(descent, m)?)?;
    m.add_function(wrap_pyfunction!(nil_invariance, m)?)?;
    m.add_function(wrap_pyfunction!(verify_axes, m)?)?;
    m.add_function(wrap_pyfunction!(axes, m)?)?;
    m.add_function(wrap_pyfunction!(perfection, m)?)?;
    Ok(())
}
