use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;

use zm_reidemeister::harness::{self, SweepConfig};
use zm_reidemeister::modarith;
use zm_reidemeister::morphisms::{self, Mode, MorphismTriple};
use zm_reidemeister::reidemeister;
use zm_reidemeister::{Element, Error, ZmParams};

type Nat = u64;

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::Validation(_) | Error::Domain(_) | Error::SizeBound { .. } => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn parse_mode(mode: &str) -> PyResult<Mode> {
    mode.parse().map_err(to_py_err)
}

/// Round-trips a serializable value through JSON into plain Python objects.
fn to_python<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// ZM(m, n, r) = <a, b | a^m = b^n = 1, b^-1 a b = a^r>.
///
/// Elements are `(u, v)` pairs standing for `b^u a^v`.
#[pyclass(frozen, name = "ZmGroup", module = "pyzm")]
struct PyZmGroup {
    inner: ZmParams,
}

impl PyZmGroup {
    fn element(&self, g: (Nat, Nat)) -> PyResult<Element> {
        self.inner.element(g.0, g.1).map_err(to_py_err)
    }

    fn triple(&self, x1: Nat, x2: Nat, y: Nat) -> PyResult<MorphismTriple> {
        MorphismTriple::new(&self.inner, x1, x2, y).map_err(to_py_err)
    }
}

fn pair(g: Element) -> (Nat, Nat) {
    (g.u, g.v)
}

#[pymethods]
impl PyZmGroup {
    #[new]
    fn new(m: Nat, n: Nat, r: Nat) -> PyResult<Self> {
        Ok(PyZmGroup {
            inner: ZmParams::new(m, n, r).map_err(to_py_err)?,
        })
    }

    #[getter]
    fn m(&self) -> Nat {
        self.inner.m()
    }

    #[getter]
    fn n(&self) -> Nat {
        self.inner.n()
    }

    #[getter]
    fn r(&self) -> Nat {
        self.inner.r()
    }

    #[getter]
    fn d(&self) -> Nat {
        self.inner.d()
    }

    #[getter]
    fn order(&self) -> Nat {
        self.inner.order()
    }

    fn __repr__(&self) -> String {
        format!(
            "ZmGroup({}, {}, {})",
            self.inner.m(),
            self.inner.n(),
            self.inner.r()
        )
    }

    fn __len__(&self) -> usize {
        self.inner.order() as usize
    }

    fn elements(&self) -> Vec<(Nat, Nat)> {
        self.inner.iter().map(pair).collect()
    }

    fn multiply(&self, g: (Nat, Nat), h: (Nat, Nat)) -> PyResult<(Nat, Nat)> {
        Ok(pair(
            self.inner.multiply(self.element(g)?, self.element(h)?),
        ))
    }

    fn inverse(&self, g: (Nat, Nat)) -> PyResult<(Nat, Nat)> {
        Ok(pair(self.inner.inverse(self.element(g)?)))
    }

    fn center(&self) -> PyResult<Vec<(Nat, Nat)>> {
        Ok(self
            .inner
            .center()
            .map_err(to_py_err)?
            .into_iter()
            .map(pair)
            .collect())
    }

    fn conjugacy_classes(&self) -> PyResult<Vec<Vec<(Nat, Nat)>>> {
        let classes = self.inner.conjugacy_classes().map_err(to_py_err)?;
        Ok(classes
            .into_iter()
            .map(|c| c.into_iter().map(pair).collect())
            .collect())
    }

    /// Morphism triples `(x1, x2, y)` in `(y, x1, x2)` order.
    #[pyo3(signature = (mode = "strict"))]
    fn automorphisms(&self, mode: &str) -> PyResult<Vec<(Nat, Nat, Nat)>> {
        let mode = parse_mode(mode)?;
        Ok(morphisms::enumerate(&self.inner, mode)
            .into_iter()
            .map(|f| (f.x1, f.x2, f.y))
            .collect())
    }

    fn apply(&self, x1: Nat, x2: Nat, y: Nat, g: (Nat, Nat)) -> PyResult<(Nat, Nat)> {
        let f = self.triple(x1, x2, y)?;
        Ok(pair(morphisms::apply(&self.inner, &f, self.element(g)?)))
    }

    fn check_morphism<'py>(
        &self,
        py: Python<'py>,
        x1: Nat,
        x2: Nat,
        y: Nat,
    ) -> PyResult<Bound<'py, PyAny>> {
        let f = self.triple(x1, x2, y)?;
        to_python(
            py,
            &morphisms::check_morphism(&self.inner, &f).map_err(to_py_err)?,
        )
    }

    fn reidemeister_orbits(&self, x1: Nat, x2: Nat, y: Nat) -> PyResult<Nat> {
        let f = self.triple(x1, x2, y)?;
        reidemeister::reidemeister_orbits(&self.inner, &f).map_err(to_py_err)
    }

    fn reidemeister_burnside(&self, x1: Nat, x2: Nat, y: Nat) -> PyResult<Nat> {
        let f = self.triple(x1, x2, y)?;
        reidemeister::reidemeister_burnside(&self.inner, &f).map_err(to_py_err)
    }

    fn reidemeister_formula(&self, y: Nat) -> PyResult<Nat> {
        reidemeister::reidemeister_formula(&self.inner, y).map_err(to_py_err)
    }

    /// All three values plus the agreement verdict, as a dict.
    #[pyo3(signature = (x1, x2, y, brute_cap = harness::DEFAULT_BRUTE_CAP))]
    fn reidemeister<'py>(
        &self,
        py: Python<'py>,
        x1: Nat,
        x2: Nat,
        y: Nat,
        brute_cap: Nat,
    ) -> PyResult<Bound<'py, PyAny>> {
        let f = self.triple(x1, x2, y)?;
        to_python(
            py,
            &reidemeister::report(&self.inner, &f, brute_cap).map_err(to_py_err)?,
        )
    }

    /// Closed-form spectrum as a dict with `per_y` and `spectrum` keys.
    #[pyo3(signature = (mode = "strict"))]
    fn spectrum<'py>(&self, py: Python<'py>, mode: &str) -> PyResult<Bound<'py, PyAny>> {
        let mode = parse_mode(mode)?;
        to_python(
            py,
            &reidemeister::spectrum(&self.inner, mode).map_err(to_py_err)?,
        )
    }

    #[pyo3(signature = (mode = "strict"))]
    fn brute_spectrum(&self, mode: &str) -> PyResult<Vec<Nat>> {
        let mode = parse_mode(mode)?;
        reidemeister::brute_spectrum(&self.inner, mode).map_err(to_py_err)
    }

    fn corollary_prime_n(&self) -> PyResult<Nat> {
        reidemeister::corollary_prime_n(&self.inner).map_err(to_py_err)
    }
}

#[pyfunction]
fn gcd(a: Nat, b: Nat) -> Nat {
    modarith::gcd(a, b)
}

#[pyfunction]
fn mod_pow(base: Nat, exp: Nat, modulus: Nat) -> PyResult<Nat> {
    modarith::mod_pow(base, exp, modulus).map_err(to_py_err)
}

#[pyfunction]
fn mult_order(r: Nat, k: Nat) -> PyResult<Nat> {
    modarith::mult_order(r, k).map_err(to_py_err)
}

#[pyfunction]
fn repunit(u: Nat, r: Nat, m: Nat) -> PyResult<Nat> {
    modarith::repunit(u, r, m).map_err(to_py_err)
}

#[pyfunction]
fn euler_phi(m: Nat) -> PyResult<Nat> {
    modarith::euler_phi(m).map_err(to_py_err)
}

#[pyfunction]
fn dihedral_spectrum(m: Nat) -> PyResult<Nat> {
    reidemeister::dihedral_spectrum(m).map_err(to_py_err)
}

#[pyfunction]
fn enumerate_triples(max_order: Nat) -> Vec<(Nat, Nat, Nat)> {
    harness::enumerate_triples(max_order)
}

/// Sweep records as a list of dicts, in triple order.
#[pyfunction]
#[pyo3(signature = (max_order, brute_cap = harness::DEFAULT_BRUTE_CAP, exhaustive_cap = harness::DEFAULT_EXHAUSTIVE_CAP))]
fn sweep<'py>(
    py: Python<'py>,
    max_order: Nat,
    brute_cap: Nat,
    exhaustive_cap: Nat,
) -> PyResult<Bound<'py, PyAny>> {
    let cfg = SweepConfig {
        brute_cap,
        exhaustive_cap,
        ..SweepConfig::new(max_order)
    };
    let records = py.detach(|| harness::sweep(&cfg)).map_err(to_py_err)?;
    to_python(py, &records)
}

#[pymodule]
fn pyzm(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyZmGroup>()?;
    m.add_function(wrap_pyfunction!(gcd, m)?)?;
    m.add_function(wrap_pyfunction!(mod_pow, m)?)?;
    m.add_function(wrap_pyfunction!(mult_order, m)?)?;
    m.add_function(wrap_pyfunction!(repunit, m)?)?;
    m.add_function(wrap_pyfunction!(euler_phi, m)?)?;
    m.add_function(wrap_pyfunction!(dihedral_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_triples, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    Ok(())
}
