//! Python bindings: `import endok`.

use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use endok_core::{endo, job, ktheory, lattice, Error};

fn err(e: Error) -> PyErr {
    if e.is_validation() {
        PyValueError::new_err(e.to_string())
    } else {
        PyRuntimeError::new_err(e.to_string())
    }
}

fn matrix(rows: Vec<Vec<BigInt>>) -> PyResult<lattice::IntMatrix> {
    lattice::IntMatrix::from_rows(&rows).map_err(err)
}

/// A finitely generated abelian group `Z/d_1 ⊕ … ⊕ Z/d_k ⊕ Z^r`.
#[pyclass(name = "FgAbGroup", module = "endok", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyFgAbGroup(lattice::FgAbGroup);

#[pymethods]
impl PyFgAbGroup {
    #[new]
    #[pyo3(signature = (torsion, free_rank=0))]
    fn new(torsion: Vec<BigInt>, free_rank: usize) -> Self {
        PyFgAbGroup(lattice::FgAbGroup::from_orders(torsion, free_rank))
    }

    #[getter]
    fn torsion(&self) -> Vec<BigInt> {
        self.0.torsion().to_vec()
    }

    #[getter]
    fn free_rank(&self) -> usize {
        self.0.free_rank()
    }

    fn labels(&self) -> Vec<String> {
        self.0.labels()
    }

    fn order(&self) -> Option<BigInt> {
        self.0.order()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("FgAbGroup({})", self.0)
    }
}

/// An injective integer matrix, read as an endomorphism of `Z^n`.
#[pyclass(name = "LatticeEndo", module = "endok", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyLatticeEndo(endo::LatticeEndo);

#[pymethods]
impl PyLatticeEndo {
    #[new]
    fn new(rows: Vec<Vec<BigInt>>) -> PyResult<Self> {
        endo::LatticeEndo::new(matrix(rows)?).map(PyLatticeEndo).map_err(err)
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    #[getter]
    fn det(&self) -> BigInt {
        self.0.det().clone()
    }

    #[getter]
    fn index(&self) -> BigInt {
        self.0.index()
    }

    fn rows(&self) -> Vec<Vec<BigInt>> {
        self.0.matrix().to_rows()
    }

    /// Coefficients of the characteristic polynomial, constant term first.
    fn charpoly(&self) -> Vec<BigInt> {
        self.0.charpoly().coeffs().to_vec()
    }

    fn cokernel(&self) -> PyFgAbGroup {
        PyFgAbGroup(endo::validate_standard(&self.0).cokernel)
    }

    fn is_exact(&self) -> bool {
        endo::validate_standard(&self.0).exact
    }

    fn apply(&self, v: Vec<BigInt>) -> PyResult<Vec<BigInt>> {
        if v.len() != self.0.rank() {
            return Err(err(Error::RankMismatch(v.len(), self.0.rank())));
        }
        Ok(self.0.apply(&v))
    }

    fn compose(&self, other: &PyLatticeEndo) -> PyResult<Self> {
        self.0.compose(&other.0).map(PyLatticeEndo).map_err(err)
    }

    fn power(&self, k: u32) -> Self {
        PyLatticeEndo(self.0.power(k))
    }

    fn commutes_with(&self, other: &PyLatticeEndo) -> bool {
        self.0.commutes_with(&other.0)
    }

    fn __repr__(&self) -> String {
        format!("LatticeEndo({})", self.0)
    }
}

/// K-groups of `A_φ` or `A_(φ,ψ)`.
#[pyclass(name = "KReport", module = "endok", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyKReport(ktheory::KReport);

#[pymethods]
impl PyKReport {
    #[getter]
    fn algebra(&self) -> String {
        self.0.algebra.clone()
    }

    #[getter]
    fn k0(&self) -> Vec<String> {
        self.0.k0.label_strings()
    }

    #[getter]
    fn k1(&self) -> Vec<String> {
        self.0.k1.label_strings()
    }

    #[getter]
    fn split(&self) -> bool {
        self.0.split
    }

    /// `(K0(B), K1(B))` labels when available.
    #[getter]
    fn k_b(&self) -> Option<(Vec<String>, Vec<String>)> {
        let s = |v: &[ktheory::Label]| v.iter().map(ToString::to_string).collect();
        self.0.k_b.as_ref().map(|b| (s(&b.k0), s(&b.k1)))
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("report serializes")
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("KReport(K0={}, K1={})", self.0.k0, self.0.k1)
    }
}

#[pyfunction]
fn k_endo(e: &PyLatticeEndo) -> PyResult<PyKReport> {
    ktheory::k_endo(&e.0).map(PyKReport).map_err(err)
}

#[pyfunction]
fn k_poly(f: &PyLatticeEndo, g: &PyLatticeEndo) -> PyResult<PyKReport> {
    ktheory::k_poly(&f.0, &g.0).map(PyKReport).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (n, level=None))]
fn k_shift(n: u64, level: Option<usize>) -> PyResult<PyKReport> {
    ktheory::k_shift(n, level).map(PyKReport).map_err(err)
}

#[pyfunction]
fn k_solenoid(p: u64, q: u64) -> PyResult<PyKReport> {
    ktheory::k_solenoid(p, q).map(PyKReport).map_err(err)
}

/// True when the pair commutes and `φG + ψG = G`.
#[pyfunction]
fn independent(f: &PyLatticeEndo, g: &PyLatticeEndo) -> PyResult<bool> {
    endo::independent(&f.0, &g.0).map(|r| r.verdict).map_err(err)
}

/// `(D, U, V)` with `U A V = D` in Smith normal form.
#[pyfunction]
#[allow(clippy::type_complexity)]
fn snf(rows: Vec<Vec<BigInt>>) -> PyResult<(Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, Vec<Vec<BigInt>>)> {
    let s = lattice::snf(&matrix(rows)?);
    Ok((s.d.to_rows(), s.u.to_rows(), s.v.to_rows()))
}

/// Runs a TOML job and returns `(report_json, exit_code)`.
#[pyfunction]
fn run_job(toml: &str) -> (String, i32) {
    let env = match job::JobConfig::from_toml(toml) {
        Ok(cfg) => job::run(&cfg),
        Err(e) => job::ReportEnvelope::parse_failure(job::Command::Endo, &e),
    };
    (job::render(&env, job::Format::Json), env.exit_code())
}

#[pymodule]
fn endok(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLatticeEndo>()?;
    m.add_class::<PyFgAbGroup>()?;
    m.add_class::<PyKReport>()?;
    m.add_function(wrap_pyfunction!(k_endo, m)?)?;
    m.add_function(wrap_pyfunction!(k_poly, m)?)?;
    m.add_function(wrap_pyfunction!(k_shift, m)?)?;
    m.add_function(wrap_pyfunction!(k_solenoid, m)?)?;
    m.add_function(wrap_pyfunction!(independent, m)?)?;
    m.add_function(wrap_pyfunction!(snf, m)?)?;
    m.add_function(wrap_pyfunction!(run_job, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
