//! Python bindings for `cyclorep`.

use num_bigint::BigInt;
use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::PyBytes;

use cyclorep::cli::{detect_line, factor_text, parse_input, table2_rows, table3_rows, FactorVocab};
use cyclorep::codec::{self, InnerPoly, Layout, Representation};
use cyclorep::cyclotomic;
use cyclorep::numtheory;
use cyclorep::{Error, SparsePoly};

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Polynomial with integer coefficients.
#[pyclass(name = "Poly", module = "pycyclorep", skip_from_py_object, frozen)]
pub struct Poly {
    inner: SparsePoly,
}

impl From<SparsePoly> for Poly {
    fn from(inner: SparsePoly) -> Self {
        Self { inner }
    }
}

/// Accepts a `Poly`, polynomial text or factorization text.
#[derive(FromPyObject)]
pub enum PolyArg<'py> {
    Poly(PyRef<'py, Poly>),
    Text(String),
}

impl PolyArg<'_> {
    fn to_poly(&self) -> PyResult<SparsePoly> {
        match self {
            Self::Poly(p) => Ok(p.inner.clone()),
            Self::Text(t) => parse_input(t).map_err(py_err),
        }
    }
}

#[pymethods]
impl Poly {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(parse_input(text).map_err(py_err)?.into())
    }

    /// Builds a polynomial from coefficients in ascending order of exponent.
    #[staticmethod]
    fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        SparsePoly::from_coeffs(&coeffs).into()
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs.
    #[staticmethod]
    fn from_terms(terms: Vec<(u64, BigInt)>) -> Self {
        SparsePoly::from_terms(terms).into()
    }

    #[getter]
    fn degree(&self) -> u64 {
        self.inner.degree()
    }

    #[getter]
    fn height(&self) -> BigInt {
        self.inner.height()
    }

    #[getter]
    fn term_count(&self) -> usize {
        self.inner.term_count()
    }

    /// `(exponent, coefficient)` pairs, highest exponent first.
    fn terms(&self) -> Vec<(u64, BigInt)> {
        self.inner.terms().to_vec()
    }

    /// Coefficients in ascending order of exponent.
    fn coeffs(&self) -> Vec<BigInt> {
        self.inner.to_dense().coeffs().to_vec()
    }

    fn coeff(&self, exp: u64) -> BigInt {
        self.inner.coeff(exp)
    }

    fn __call__(&self, x: BigInt) -> BigInt {
        self.inner.eval_at(&x)
    }

    fn graeffe(&self) -> Self {
        self.inner.graeffe().into()
    }

    fn reverse(&self) -> Self {
        self.inner.reverse().into()
    }

    fn negate_x(&self) -> Self {
        self.inner.negate_x().into()
    }

    fn derivative(&self) -> Self {
        self.inner.derivative().into()
    }

    fn gcd(&self, other: PolyArg<'_>) -> PyResult<Self> {
        Ok(self.inner.gcd(&other.to_poly()?).map_err(py_err)?.into())
    }

    fn squarefree_part(&self) -> PyResult<Self> {
        Ok(self.inner.squarefree_part().map_err(py_err)?.into())
    }

    /// Exact quotient; raises `ValueError` when the division leaves a remainder.
    fn div_exact(&self, other: PolyArg<'_>) -> PyResult<Self> {
        let d = other.to_poly()?;
        if d.is_zero() {
            return Err(PyZeroDivisionError::new_err("division by the zero polynomial"));
        }
        Ok(self.inner.div_exact(&d).map_err(py_err)?.into())
    }

    fn __add__(&self, other: PolyArg<'_>) -> PyResult<Self> {
        Ok(self.inner.add(&other.to_poly()?).into())
    }

    fn __sub__(&self, other: PolyArg<'_>) -> PyResult<Self> {
        Ok(self.inner.sub(&other.to_poly()?).into())
    }

    fn __mul__(&self, other: PolyArg<'_>) -> PyResult<Self> {
        Ok(self.inner.mul(&other.to_poly()?).into())
    }

    fn __neg__(&self) -> Self {
        self.inner.neg().into()
    }

    fn __pow__(&self, exp: u64, _modulo: Option<Bound<'_, PyAny>>) -> Self {
        self.inner.pow(exp).into()
    }

    fn __eq__(&self, other: PolyArg<'_>) -> bool {
        other.to_poly().map(|o| o == self.inner).unwrap_or(false)
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.inner.to_string().hash(&mut h);
        h.finish()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}')", self.inner)
    }
}

#[pyfunction]
fn phi(k: u64) -> PyResult<Poly> {
    Ok(cyclotomic::phi_poly(k).map_err(py_err)?.into())
}

/// `x^n - 1`.
#[pyfunction]
fn c(n: u64) -> PyResult<Poly> {
    Ok(cyclotomic::c_poly(n).map_err(py_err)?.into())
}

fn factor_vocab(name: &str) -> PyResult<FactorVocab> {
    match name {
        "plain" => Ok(FactorVocab::Plain),
        "phi" => Ok(FactorVocab::Phi),
        "c" => Ok(FactorVocab::C),
        _ => Err(PyValueError::new_err(format!("unknown vocabulary {name:?}"))),
    }
}

fn layout(name: &str) -> PyResult<Layout> {
    match name {
        "dense" => Ok(Layout::Dense),
        "sparse" => Ok(Layout::Sparse),
        "plain" => Ok(Layout::Plain),
        "phi" => Ok(Layout::PhiAware),
        "c" => Ok(Layout::CAware),
        _ => Err(PyValueError::new_err(format!("unknown layout {name:?}"))),
    }
}

fn inner_poly(name: &str) -> PyResult<InnerPoly> {
    match name {
        "dense" => Ok(InnerPoly::Dense),
        "sparse" => Ok(InnerPoly::Sparse),
        _ => Err(PyValueError::new_err(format!("unknown inner layout {name:?}"))),
    }
}

/// Factorization text in the vocabulary `"plain"`, `"phi"` or `"c"`.
#[pyfunction]
#[pyo3(signature = (f, vocab = "phi", squarefree_only = false))]
fn factor(f: PolyArg<'_>, vocab: &str, squarefree_only: bool) -> PyResult<String> {
    factor_text(&f.to_poly()?, factor_vocab(vocab)?, squarefree_only).map_err(py_err)
}

/// Verdict line: `"cyclotomic: ..."` or `"not-cyclotomic (cofactor: ...)"`.
#[pyfunction]
fn detect(f: PolyArg<'_>) -> PyResult<String> {
    Ok(detect_line(&f.to_poly()?).map_err(py_err)?.1)
}

/// `"cyclotomic"`, `"not-cyclotomic"` or `"unknown"`.
#[pyfunction]
fn is_cyclotomic_quick(f: PolyArg<'_>) -> PyResult<String> {
    Ok(cyclotomic::is_cyclotomic_quick(&f.to_poly()?).map_err(py_err)?.to_string())
}

/// `(k, multiplicity)` pairs of a product of cyclotomic polynomials.
#[pyfunction]
fn cyclotomic_decompose(f: PolyArg<'_>) -> PyResult<Vec<(u64, u64)>> {
    Ok(cyclotomic::cyclotomic_decompose(&f.to_poly()?).map_err(py_err)?.parts)
}

/// `(height, first_k, phi(first_k))` records for `k <= k_max`.
#[pyfunction]
fn height_records(py: Python<'_>, k_max: u64) -> PyResult<Vec<(BigInt, u64, u64)>> {
    let recs = py.detach(|| cyclotomic::height_records(k_max)).map_err(py_err)?;
    Ok(recs.into_iter().map(|r| (r.height, r.first_k, r.phi_of_k)).collect())
}

fn representation(f: &PolyArg<'_>, vocab: &str, squarefree_only: bool) -> PyResult<Representation> {
    codec::represent(&f.to_poly()?, layout(vocab)?, squarefree_only).map_err(py_err)
}

/// Packed blob of `f` in the layout `vocab`.
#[pyfunction]
#[pyo3(signature = (f, vocab = "phi", n_bits = 16, k_bits = 16, inner = "sparse", squarefree_only = false))]
fn encode<'py>(
    py: Python<'py>,
    f: PolyArg<'_>,
    vocab: &str,
    n_bits: u32,
    k_bits: u32,
    inner: &str,
    squarefree_only: bool,
) -> PyResult<Bound<'py, PyBytes>> {
    let v = representation(&f, vocab, squarefree_only)?;
    let blob = codec::encode(&v, n_bits, k_bits, inner_poly(inner)?).map_err(py_err)?;
    Ok(PyBytes::new(py, &blob.bytes))
}

/// Text of the value stored in a blob.
#[pyfunction]
fn decode(blob: &[u8]) -> PyResult<String> {
    Ok(codec::decode(blob).map_err(py_err)?.to_string())
}

/// Body bits of the encoding of `f`, before padding.
#[pyfunction]
#[pyo3(signature = (f, vocab = "phi", n_bits = 16, k_bits = 16, inner = "sparse", squarefree_only = false))]
fn measured_bits(
    f: PolyArg<'_>,
    vocab: &str,
    n_bits: u32,
    k_bits: u32,
    inner: &str,
    squarefree_only: bool,
) -> PyResult<u64> {
    let v = representation(&f, vocab, squarefree_only)?;
    codec::measured_bits(&v, n_bits, k_bits, inner_poly(inner)?).map_err(py_err)
}

/// Rows `(vocab, form, measured_bits, formula_bits)` for `x^n - 1`, or for
/// `(x^p - 1)(x^q - 1)` when `q` is given.
#[pyfunction]
#[pyo3(signature = (n, q = None, n_bits = 16, k_bits = 16))]
fn size_table(n: u64, q: Option<u64>, n_bits: u32, k_bits: u32) -> PyResult<Vec<(String, String, u64, u64)>> {
    let rows = match q {
        None => table2_rows(n, n_bits, k_bits),
        Some(q) => table3_rows(n, q, n_bits, k_bits),
    }
    .map_err(py_err)?;
    Ok(rows
        .into_iter()
        .map(|r| {
            let col = |i: usize| r.columns[i].1.clone();
            (r.label.clone(), col(0), col(1).parse().unwrap(), col(2).parse().unwrap())
        })
        .collect())
}

#[pyfunction]
fn factorize(n: u64) -> PyResult<Vec<(u64, u32)>> {
    Ok(numtheory::factorize(n).map_err(py_err)?.pairs().to_vec())
}

#[pyfunction]
fn divisors(n: u64) -> PyResult<Vec<u64>> {
    numtheory::divisors(n).map_err(py_err)
}

#[pyfunction]
fn totient(n: u64) -> PyResult<u64> {
    numtheory::totient(n).map_err(py_err)
}

#[pyfunction]
fn mobius(n: u64) -> PyResult<i8> {
    numtheory::mobius(n).map_err(py_err)
}

/// Primes `(p, q)` with `p < q`, `pq = k` and `(p-1)(q-1) = phi`.
#[pyfunction]
fn recover_pq(k: u64, phi: u64) -> PyResult<(u64, u64)> {
    numtheory::recover_pq(k, phi).map_err(py_err)
}

#[pymodule]
fn pycyclorep(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Poly>()?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(c, m)?)?;
    m.add_function(wrap_pyfunction!(factor, m)?)?;
    m.add_function(wrap_pyfunction!(detect, m)?)?;
    m.add_function(wrap_pyfunction!(is_cyclotomic_quick, m)?)?;
    m.add_function(wrap_pyfunction!(cyclotomic_decompose, m)?)?;
    m.add_function(wrap_pyfunction!(height_records, m)?)?;
    m.add_function(wrap_pyfunction!(encode, m)?)?;
    m.add_function(wrap_pyfunction!(decode, m)?)?;
    m.add_function(wrap_pyfunction!(measured_bits, m)?)?;
    m.add_function(wrap_pyfunction!(size_table, m)?)?;
    m.add_function(wrap_pyfunction!(factorize, m)?)?;
    m.add_function(wrap_pyfunction!(divisors, m)?)?;
    m.add_function(wrap_pyfunction!(totient, m)?)?;
    m.add_function(wrap_pyfunction!(mobius, m)?)?;
    m.add_function(wrap_pyfunction!(recover_pq, m)?)?;
    Ok(())
}
