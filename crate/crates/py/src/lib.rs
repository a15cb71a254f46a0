//! Python bindings. Rationals cross the boundary as `fractions.Fraction`.

use pyo3::exceptions::{PyIndexError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use morsekit_core::arith::{self, ExactRational};
use morsekit_core::experiments::{self as exp, CylinderFunction};
use morsekit_core::sequences::{self as seq, BitSequence, ThueToeplitz};
use morsekit_core::spectral::{self as spec};
use morsekit_core::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Range(_) => PyIndexError::new_err(e.to_string()),
        Error::Construction(_) | Error::SearchExhausted(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn fraction<'py>(py: Python<'py>, r: &ExactRational) -> PyResult<Bound<'py, PyAny>> {
    PyModule::import(py, "fractions")?.getattr("Fraction")?.call1((r.numer().clone(), r.denom().clone()))
}

/// Accepts `int`, `Fraction` or a `"p/q"` string.
fn rational(obj: &Bound<'_, PyAny>) -> PyResult<ExactRational> {
    obj.str()?.to_string().parse().map_err(py_err)
}

#[pyclass(name = "SigmaCache")]
#[derive(Default)]
struct PySigmaCache {
    inner: spec::SigmaCache,
}

#[pymethods]
impl PySigmaCache {
    #[new]
    fn new() -> Self {
        Self::default()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn get<'py>(&mut self, py: Python<'py>, k: u64) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &spec::sigma_hat(k, &mut self.inner))
    }
}

/// `σ̂(k)` as a `Fraction`.
#[pyfunction]
fn sigma_hat(py: Python<'_>, k: u64) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, &spec::sigma_hat(k, &mut spec::SigmaCache::new()))
}

#[pyfunction]
fn sigma_hat_closed(py: Python<'_>, n: u64, a: u32) -> PyResult<Bound<'_, PyAny>> {
    let v = spec::sigma_hat_closed(n, a, &mut spec::SigmaCache::new()).map_err(py_err)?;
    fraction(py, &v)
}

#[pyfunction]
fn v2(w: &Bound<'_, PyAny>) -> PyResult<i64> {
    arith::v2(&rational(w)?).map_err(py_err)
}

#[pyfunction]
fn odd_chain(py: Python<'_>, k: u64) -> PyResult<Bound<'_, PyDict>> {
    let c = arith::odd_chain(k).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("K", c.k)?;
    d.set_item("ks", c.ks)?;
    d.set_item("exps", c.exps)?;
    d.set_item("l", c.l)?;
    d.set_item("r", c.r)?;
    Ok(d)
}

#[pyfunction]
fn valuation_report(py: Python<'_>, k: u64) -> PyResult<Bound<'_, PyDict>> {
    let r = spec::valuation_report(k, &mut spec::SigmaCache::new()).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("K", r.k)?;
    d.set_item("sigma", fraction(py, &r.sigma)?)?;
    d.set_item("is_zero", r.is_zero)?;
    d.set_item("v2", r.v2)?;
    d.set_item("l", r.l)?;
    d.set_item("lemma_holds", r.lemma_holds)?;
    Ok(d)
}

#[pyfunction]
fn tm_equivalent(k: u64, l: u64) -> PyResult<bool> {
    spec::tm_equivalent(k, l, &mut spec::SigmaCache::new()).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (r, s, bound = spec::DEFAULT_WITNESS_BOUND))]
fn disjointness_witness(py: Python<'_>, r: u64, s: u64, bound: u64) -> PyResult<Bound<'_, PyDict>> {
    let w = spec::disjointness_witness(r, s, bound, &mut spec::SigmaCache::new()).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("r", w.r)?;
    d.set_item("s", w.s)?;
    d.set_item("t", w.t)?;
    d.set_item("c1", fraction(py, &w.c1)?)?;
    d.set_item("c2", fraction(py, &w.c2)?)?;
    Ok(d)
}

/// A generalized Morse sequence given by its text spec (`"tm"`,
/// `"001,01*"`, `"base=001;tm_runs=auto"`, ...).
#[pyclass(name = "MorseSpec")]
struct PyMorseSpec {
    inner: seq::MorseSpec,
}

#[pymethods]
impl PyMorseSpec {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Self { inner: text.parse().map_err(py_err)? })
    }

    #[staticmethod]
    fn kakutani(positions: Vec<u32>, depth: u32) -> PyResult<Self> {
        let e = seq::DigitSet::finite(positions).map_err(py_err)?;
        Ok(Self { inner: seq::kakutani_spec_from_e(&e, depth).map_err(py_err)? })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("MorseSpec('{}')", self.inner)
    }

    fn is_tm_type(&self) -> bool {
        self.inner.is_tm_type()
    }

    fn block(&self, i: u64) -> Option<String> {
        self.inner.block(i).map(ToString::to_string)
    }

    /// `b^0 × ... × b^{k-1}` as a bit string.
    fn prefix(&self, k: u64) -> PyResult<String> {
        Ok(seq::morse_prefix(&self.inner, k).map_err(py_err)?.to_string())
    }

    fn bit(&self, n: u64) -> PyResult<u8> {
        self.inner.sequence().bit(n).ok_or_else(|| PyIndexError::new_err(format!("position {n} undefined")))
    }

    fn window(&self, a: i64, length: usize) -> PyResult<String> {
        Ok(seq::window(&self.inner.sequence(), a, length).map_err(py_err)?.to_string())
    }
}

#[pyfunction]
fn thue_morse_bit(n: u64) -> u8 {
    seq::thue_morse_bit(n)
}

#[pyfunction]
fn thue_toeplitz_bit(n: u64) -> u8 {
    seq::thue_toeplitz_bit(n)
}

#[pyfunction]
fn s_e_bit(n: u64, positions: Vec<u32>) -> PyResult<u8> {
    Ok(seq::s_e_bit(n, &seq::DigitSet::finite(positions).map_err(py_err)?))
}

#[pyfunction]
fn block_product(b: &str, c: &str) -> PyResult<String> {
    let b: seq::Block = b.parse().map_err(py_err)?;
    let c: seq::Block = c.parse().map_err(py_err)?;
    Ok(b.product(&c).map_err(py_err)?.to_string())
}

/// Stage skeleton of the Thue-Toeplitz sequence.
#[pyfunction]
fn toeplitz_skeleton(py: Python<'_>, stage: u32) -> PyResult<Bound<'_, PyDict>> {
    let s = ThueToeplitz.toeplitz_skeleton(stage).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("period", s.period)?;
    d.set_item("pattern", s.pattern())?;
    d.set_item("leading_block", s.leading_block().to_string())?;
    d.set_item("hole_residues", s.hole_residues)?;
    Ok(d)
}

#[pyfunction]
fn tm_correlation(py: Python<'_>, k: u64, n: u64) -> PyResult<Bound<'_, PyDict>> {
    let r = spec::tm_correlation(k, n, &mut spec::SigmaCache::new()).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("k", r.k)?;
    d.set_item("N", r.n)?;
    d.set_item("empirical", fraction(py, &r.empirical)?)?;
    d.set_item("exact", r.exact.as_ref().map(|e| fraction(py, e)).transpose()?)?;
    d.set_item("deviation", r.deviation)?;
    Ok(d)
}

#[pyfunction]
fn empirical_correlation<'py>(py: Python<'py>, spec_text: &str, k: u64, n: u64) -> PyResult<Bound<'py, PyAny>> {
    let s: seq::MorseSpec = spec_text.parse().map_err(py_err)?;
    let r = spec::empirical_correlation(&s.sequence(), k, n).map_err(py_err)?;
    fraction(py, &r.empirical)
}

#[pyclass(name = "MoebiusTable")]
struct PyMoebiusTable {
    inner: arith::MoebiusTable,
}

#[pymethods]
impl PyMoebiusTable {
    #[new]
    fn new(n: u64) -> PyResult<Self> {
        Ok(Self { inner: arith::moebius_sieve(n).map_err(py_err)? })
    }

    fn bound(&self) -> u64 {
        self.inner.bound()
    }

    fn mu(&self, n: u64) -> PyResult<i8> {
        self.inner.get(n).map_err(py_err)
    }

    fn mertens(&self, n: u64) -> PyResult<i64> {
        self.inner.mertens(n).map_err(py_err)
    }

    fn squarefree_count(&self, n: u64) -> PyResult<u64> {
        self.inner.squarefree_count(n).map_err(py_err)
    }

    fn tm_orthogonality<'py>(&self, py: Python<'py>, n: u64) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &exp::tm_orthogonality(n, &self.inner).map_err(py_err)?)
    }

    /// `(1/N) Σ f(T^k w) μ(k)` for a rational table over words of length
    /// `log2(len(table))` on the Thue-Toeplitz sequence.
    #[pyo3(signature = (table, n, offset = 0))]
    fn toeplitz_weighted_sum<'py>(
        &self,
        py: Python<'py>,
        table: Vec<Bound<'py, PyAny>>,
        n: u64,
        offset: i64,
    ) -> PyResult<Bound<'py, PyAny>> {
        let f = cylinder(table, offset)?;
        fraction(py, &exp::weighted_sum(&f, &ThueToeplitz, &self.inner, n).map_err(py_err)?)
    }

    /// Row decomposition on the Thue-Toeplitz sequence at `stage`.
    #[pyo3(signature = (table, n, stage, offset = 0))]
    fn row_decomposition<'py>(
        &self,
        py: Python<'py>,
        table: Vec<Bound<'py, PyAny>>,
        n: u64,
        stage: u32,
        offset: i64,
    ) -> PyResult<Bound<'py, PyDict>> {
        let f = cylinder(table, offset)?;
        let r = exp::row_decomposition(&f, &ThueToeplitz, stage, &self.inner, n).map_err(py_err)?;
        let d = PyDict::new(py);
        d.set_item("period", r.period)?;
        d.set_item("c_head", r.c_head)?;
        d.set_item("c_tail", r.c_tail)?;
        d.set_item("e_head", fraction(py, &r.e_head)?)?;
        d.set_item("e_tail", fraction(py, &r.e_tail)?)?;
        d.set_item("rows", r.rows.iter().map(|row| fraction(py, &row.sum)).collect::<PyResult<Vec<_>>>()?)?;
        d.set_item("total", fraction(py, &r.total)?)?;
        d.set_item("regrouping_exact", r.regrouping_exact)?;
        d.set_item("boundary_bound_holds", r.boundary_bound_holds)?;
        d.set_item("row_bound_holds", r.row_bound_holds)?;
        d.set_item("hole_free_rows", r.hole_free_rows)?;
        Ok(d)
    }

    /// The counterexample with `a_n = base^n`, checked at every `N' ≤ N`.
    #[pyo3(signature = (n, base = 5))]
    fn counterexample<'py>(&self, py: Python<'py>, n: u64, base: u64) -> PyResult<Bound<'py, PyDict>> {
        let chain = seq::DivisibilityChain::powers(base).map_err(py_err)?;
        let cs = seq::build_counterexample(&chain, n, &self.inner).map_err(py_err)?;
        let report = exp::counterexample_chain(&cs, &self.inner, &[n]).map_err(py_err)?;
        let last = &report.checkpoints[0];
        let d = PyDict::new(py);
        d.set_item("rho", fraction(py, &report.rho)?)?;
        d.set_item("sum", last.sum)?;
        d.set_item("average", fraction(py, &last.average)?)?;
        d.set_item("non_initials", last.non_initials)?;
        d.set_item("all_ok", report.all_ok())?;
        Ok(d)
    }
}

fn cylinder(table: Vec<Bound<'_, PyAny>>, offset: i64) -> PyResult<CylinderFunction<ExactRational>> {
    let len = table.len();
    if !len.is_power_of_two() || len < 2 {
        return Err(PyValueError::new_err("table length must be a power of two, at least 2"));
    }
    let values = table.iter().map(rational).collect::<PyResult<Vec<_>>>()?;
    CylinderFunction::new(offset, len.trailing_zeros(), values).map_err(py_err)
}

#[pymodule]
fn morsekit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySigmaCache>()?;
    m.add_class::<PyMorseSpec>()?;
    m.add_class::<PyMoebiusTable>()?;
    m.add_function(wrap_pyfunction!(sigma_hat, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_hat_closed, m)?)?;
    m.add_function(wrap_pyfunction!(v2, m)?)?;
    m.add_function(wrap_pyfunction!(odd_chain, m)?)?;
    m.add_function(wrap_pyfunction!(valuation_report, m)?)?;
    m.add_function(wrap_pyfunction!(tm_equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(disjointness_witness, m)?)?;
    m.add_function(wrap_pyfunction!(thue_morse_bit, m)?)?;
    m.add_function(wrap_pyfunction!(thue_toeplitz_bit, m)?)?;
    m.add_function(wrap_pyfunction!(s_e_bit, m)?)?;
    m.add_function(wrap_pyfunction!(block_product, m)?)?;
    m.add_function(wrap_pyfunction!(toeplitz_skeleton, m)?)?;
    m.add_function(wrap_pyfunction!(tm_correlation, m)?)?;
    m.add_function(wrap_pyfunction!(empirical_correlation, m)?)?;
    Ok(())
}
