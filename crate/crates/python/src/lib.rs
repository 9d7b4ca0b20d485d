//! Python module `necklaces`: counting, the explicit bijection, and the
//! exhaustive verifier.

use necklace_core::bijection::{BijectionContext, MultisetFunction};
use necklace_core::cli::verify::{self, DEFAULT_CAP};
use necklace_core::counting;
use necklace_core::cyclic::{cyclotomic_cosets, factor_unity, RingElement};
use necklace_core::Error;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// `(block, necklace, rotation, function)` with a 1-based block.
type Row = (Vec<usize>, Vec<u64>, usize, Vec<u64>);

/// 1-based block, as printed by the command line.
fn block(support: &[usize]) -> Vec<usize> {
    support.iter().map(|i| i + 1).collect()
}

/// Number of necklaces (equivalently multisets) by the closed formula.
#[pyfunction]
fn count(q: u64, n: u64) -> PyResult<u128> {
    Ok(counting::count_formula(q, n).map_err(to_py)?.total)
}

/// Formula term for one block of 1-based coset indices.
#[pyfunction]
fn count_block(q: u64, n: u64, indices: Vec<usize>) -> PyResult<u128> {
    if indices.contains(&0) {
        return Err(PyValueError::new_err("coset indices are 1-based"));
    }
    let support: Vec<usize> = indices.iter().map(|i| i - 1).collect();
    counting::count_block_formula(q, n, &support).map_err(to_py)
}

#[pyfunction]
fn oracle_necklace_count(q: u64, n: u64) -> PyResult<u128> {
    counting::oracle_necklace_count(q, n).map_err(to_py)
}

#[pyfunction]
fn oracle_multiset_count(q: u64, n: u64) -> PyResult<u128> {
    counting::oracle_multiset_count(q, n).map_err(to_py)
}

/// Cyclotomic cosets of `Z_n` under `q`, each in iteration order.
#[pyfunction]
fn cosets(q: u64, n: u64) -> PyResult<Vec<Vec<u64>>> {
    let system = cyclotomic_cosets(n, q).map_err(to_py)?;
    Ok(system.cosets().iter().map(|c| c.elements.clone()).collect())
}

/// Irreducible factors of `X^n - 1` over `F_q` as coefficient codes,
/// constant term first, one per coset.
#[pyfunction]
fn factors(q: u64, n: u64) -> PyResult<Vec<Vec<u64>>> {
    let uf = factor_unity(n, q).map_err(to_py)?;
    let base = uf.base();
    Ok(uf
        .factors()
        .iter()
        .map(|f| f.iter().map(|c| base.element_code(c)).collect())
        .collect())
}

/// Run every check of the exhaustive verifier; returns `{check: passed}`.
#[pyfunction]
#[pyo3(signature = (q, n, cap = DEFAULT_CAP))]
fn verify_all(py: Python<'_>, q: u64, n: u64, cap: u64) -> PyResult<Vec<(String, bool)>> {
    let report = py.detach(|| verify::verify(q, n, cap)).map_err(to_py)?;
    Ok(report.checks.iter().map(|c| (c.name.to_string(), c.passed())).collect())
}

/// The bijection for one `(q, n)`, `q` a prime power coprime to `n`.
/// Necklaces are lists of `n` coefficient codes, functions lists of `n`
/// values below `q`.
#[pyclass(frozen, module = "necklaces")]
struct Bijection {
    inner: BijectionContext,
}

impl Bijection {
    fn element(&self, codes: &[u64]) -> PyResult<RingElement> {
        if codes.len() != self.inner.n() as usize {
            return Err(PyValueError::new_err(format!(
                "expected {} coefficients",
                self.inner.n()
            )));
        }
        RingElement::from_codes(self.inner.unity().base(), codes).map_err(to_py)
    }

    fn function(&self, values: Vec<u64>) -> PyResult<MultisetFunction> {
        if values.len() != self.inner.n() as usize {
            return Err(PyValueError::new_err(format!("expected {} values", self.inner.n())));
        }
        MultisetFunction::new(values, self.inner.q()).map_err(to_py)
    }

    fn codes(&self, alpha: &RingElement) -> Vec<u64> {
        alpha.codes(self.inner.unity().base())
    }
}

#[pymethods]
impl Bijection {
    #[new]
    fn new(py: Python<'_>, q: u64, n: u64) -> PyResult<Self> {
        let inner = py.detach(|| BijectionContext::new(q, n)).map_err(to_py)?;
        Ok(Self { inner })
    }

    #[getter]
    fn q(&self) -> u64 {
        self.inner.q()
    }

    #[getter]
    fn n(&self) -> u64 {
        self.inner.n()
    }

    /// Least rotation of a string.
    fn canonical(&self, necklace: Vec<u64>) -> PyResult<Vec<u64>> {
        let alpha = self.element(&necklace)?;
        Ok(self.codes(self.inner.unity().canonical_necklace(&alpha).representative()))
    }

    /// Image of the class of `necklace`.
    fn map(&self, necklace: Vec<u64>) -> PyResult<Vec<u64>> {
        let alpha = self.element(&necklace)?;
        Ok(self.inner.map_element(&alpha).map_err(to_py)?.image.values().to_vec())
    }

    /// `(block, canonical necklace, rotation, function)`, as in [`table`](Self::table).
    fn map_detail(&self, necklace: Vec<u64>) -> PyResult<Row> {
        let alpha = self.element(&necklace)?;
        let m = self.inner.map_element(&alpha).map_err(to_py)?;
        Ok((
            block(&m.support),
            self.codes(m.necklace.representative()),
            m.rotation,
            m.image.values().to_vec(),
        ))
    }

    /// Canonical necklace mapped to `function`; its weighted sum must be 0 mod n.
    fn invert(&self, function: Vec<u64>) -> PyResult<Vec<u64>> {
        let f = self.function(function)?;
        let necklace = self.inner.multiset_to_necklace(&f).map_err(to_py)?;
        Ok(self.codes(necklace.representative()))
    }

    /// The block map on a single ring element (no rotation chosen).
    fn block_map(&self, element: Vec<u64>) -> PyResult<Vec<u64>> {
        let alpha = self.element(&element)?;
        Ok(self.inner.block_map(&alpha).map_err(to_py)?.values().to_vec())
    }

    fn block_map_inverse(&self, function: Vec<u64>) -> PyResult<Vec<u64>> {
        let f = self.function(function)?;
        Ok(self.codes(&self.inner.block_map_inverse(&f).map_err(to_py)?))
    }

    /// 1-based indices of the factors not dividing `element`.
    fn support(&self, element: Vec<u64>) -> PyResult<Vec<usize>> {
        Ok(block(&self.inner.support_set(&self.element(&element)?)))
    }

    /// `sum z*f(z) mod n`.
    fn weighted_sum(&self, function: Vec<u64>) -> PyResult<u64> {
        Ok(self.function(function)?.weighted_sum())
    }

    /// `[(block, necklace, rotation, function)]` over all necklaces.
    #[pyo3(signature = (cap = DEFAULT_CAP))]
    fn table(&self, py: Python<'_>, cap: u64) -> PyResult<Vec<Row>> {
        let rows = py
            .detach(|| necklace_core::cli::table_rows(&self.inner, cap))
            .map_err(to_py)?;
        Ok(rows
            .iter()
            .map(|r| {
                (
                    block(&r.support),
                    self.codes(r.necklace.representative()),
                    r.rotation,
                    r.image.values().to_vec(),
                )
            })
            .collect())
    }

    fn __repr__(&self) -> String {
        format!("Bijection(q={}, n={})", self.inner.q(), self.inner.n())
    }
}

#[pymodule]
fn necklaces(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Bijection>()?;
    m.add_function(wrap_pyfunction!(count, m)?)?;
    m.add_function(wrap_pyfunction!(count_block, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_necklace_count, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_multiset_count, m)?)?;
    m.add_function(wrap_pyfunction!(cosets, m)?)?;
    m.add_function(wrap_pyfunction!(factors, m)?)?;
    m.add_function(wrap_pyfunction!(verify_all, m)?)?;
    Ok(())
}
