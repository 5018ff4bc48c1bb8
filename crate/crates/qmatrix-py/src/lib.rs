//! Python bindings for the quantized coordinate ring library.
//!
//! The module mirrors the CLI surface: parsing and normal forms (as a real
//! operator-overloaded `Element` class), quantum minors, the
//! coquasitriangular form, commutation identities with verification,
//! quasicommutation detection, bulk sweeps, and Poisson brackets.
//! Laurent polynomials cross the boundary as `{exponent: coefficient}`
//! dicts with exact (arbitrary-precision) integer values.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use qmatrix::poisson::{bracket_minors, semiclassical_bracket, CommutativePoly, PoissonVariant};
use qmatrix::relations::{
    gen_generator_minor_relation, gen_pair_relation, quasicommutation_exponent, sweep_verify,
    verify_relation, RelationIdentity, RelationKind, SweepConfig,
};
use qmatrix::rform::{r_minor_factored, r_oracle};
use qmatrix::{minor_element, parse_expression, AlgebraElement, IndexSet, LaurentPoly};

fn err(e: qmatrix::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn index_set(n: usize, elems: &[usize]) -> PyResult<IndexSet> {
    IndexSet::new(n, elems.iter().copied()).map_err(err)
}

fn laurent_to_py<'py>(py: Python<'py>, poly: &LaurentPoly) -> PyResult<Bound<'py, PyDict>> {
    let dict = PyDict::new(py);
    for (exp, coeff) in poly.terms() {
        dict.set_item(exp, coeff.clone())?;
    }
    Ok(dict)
}

/// An element of the quantized coordinate ring, kept in canonical normal
/// form. Supports `+`, `-`, `*`, unary negation, and `==`.
#[pyclass(name = "Element", module = "qmatrix_py", from_py_object)]
#[derive(Clone)]
struct PyElement {
    inner: AlgebraElement,
}

#[pymethods]
impl PyElement {
    /// Ambient matrix size n.
    #[getter]
    fn n(&self) -> usize {
        self.inner.ambient()
    }

    /// Number of normal-form terms.
    fn term_count(&self) -> usize {
        self.inner.term_count()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Bidegree as (row_degrees, col_degrees), or None when the element is
    /// not homogeneous.
    fn grading(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        self.inner.grading()
    }

    /// Normal-form terms as a list of (word, coeff) pairs, where word is a
    /// list of (row, col) generator positions and coeff a Laurent dict.
    fn terms<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        let list = PyList::empty(py);
        for (word, coeff) in self.inner.terms() {
            let letters: Vec<(usize, usize)> =
                word.letters().iter().map(|g| (g.row, g.col)).collect();
            list.append((letters, laurent_to_py(py, coeff)?))?;
        }
        Ok(list)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Element('{}', n={})", self.inner, self.inner.ambient())
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        let inner = self.inner.add_checked(&other.inner).map_err(err)?;
        Ok(Self { inner })
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        let negated = -&other.inner;
        let inner = self.inner.add_checked(&negated).map_err(err)?;
        Ok(Self { inner })
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        let inner = self.inner.mul_checked(&other.inner).map_err(err)?;
        Ok(Self { inner })
    }

    fn __neg__(&self) -> Self {
        Self { inner: -&self.inner }
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

/// Parse an expression in the shared text grammar and return its normal
/// form. Example: `parse("X[2,1]*X[1,2] - q*[12|12]", 2)`.
#[pyfunction]
fn parse(expr: &str, n: usize) -> PyResult<PyElement> {
    Ok(PyElement {
        inner: parse_expression(expr, n).map_err(err)?,
    })
}

/// The generator X[i, j] inside the n×n ring.
#[pyfunction]
fn generator(n: usize, i: usize, j: usize) -> PyResult<PyElement> {
    Ok(PyElement {
        inner: AlgebraElement::generator(n, i, j).map_err(err)?,
    })
}

/// The quantum minor [rows|cols] as a normal-form element.
#[pyfunction]
fn minor(n: usize, rows: Vec<usize>, cols: Vec<usize>) -> PyResult<PyElement> {
    let rows = index_set(n, &rows)?;
    let cols = index_set(n, &cols)?;
    Ok(PyElement {
        inner: minor_element(&rows, &cols).map_err(err)?,
    })
}

/// The coquasitriangular form r([I|J], [M|N]) as a Laurent dict.
/// With `oracle=True` the value is recomputed from the defining axioms
/// instead of the closed formula.
#[pyfunction]
#[pyo3(signature = (n, I, J, M, N, oracle=false))]
#[allow(non_snake_case)]
fn r_form<'py>(
    py: Python<'py>,
    n: usize,
    I: Vec<usize>,
    J: Vec<usize>,
    M: Vec<usize>,
    N: Vec<usize>,
    oracle: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let i = index_set(n, &I)?;
    let j = index_set(n, &J)?;
    let m = index_set(n, &M)?;
    let nn = index_set(n, &N)?;
    let value = if oracle {
        let a = minor_element(&i, &j).map_err(err)?;
        let b = minor_element(&m, &nn).map_err(err)?;
        r_oracle(&a, &b).map_err(err)?
    } else {
        r_minor_factored(&i, &j, &m, &nn).map_err(err)?.expand()
    };
    laurent_to_py(py, &value)
}

/// The factored form of r([I|J], [M|N]): a dict with the q, qhat, and (-q)
/// exponents, the ξ factor degrees, the display text, and the expanded
/// value.
#[pyfunction]
#[pyo3(signature = (n, I, J, M, N))]
#[allow(non_snake_case)]
fn r_form_factored<'py>(
    py: Python<'py>,
    n: usize,
    I: Vec<usize>,
    J: Vec<usize>,
    M: Vec<usize>,
    N: Vec<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let i = index_set(n, &I)?;
    let j = index_set(n, &J)?;
    let m = index_set(n, &M)?;
    let nn = index_set(n, &N)?;
    let fact = r_minor_factored(&i, &j, &m, &nn).map_err(err)?;
    let dict = PyDict::new(py);
    dict.set_item("zero", fact.is_zero())?;
    dict.set_item("q_exp", fact.q_exp())?;
    dict.set_item("qhat_exp", fact.qhat_exp())?;
    dict.set_item("neg_q_exp", fact.neg_q_exp())?;
    dict.set_item("xi_degrees", fact.xi_factor_degrees().to_vec())?;
    dict.set_item("text", fact.to_string())?;
    dict.set_item("value", laurent_to_py(py, &fact.expand())?)?;
    Ok(dict)
}

fn relation_to_py<'py>(py: Python<'py>, rel: &RelationIdentity) -> PyResult<Bound<'py, PyDict>> {
    let side = |terms: &[qmatrix::relations::MinorProductTerm]| -> PyResult<Bound<'py, PyList>> {
        let list = PyList::empty(py);
        for term in terms {
            let entry = PyDict::new(py);
            entry.set_item("coeff", laurent_to_py(py, &term.coeff.expand())?)?;
            let factors: Vec<(Vec<usize>, Vec<usize>)> = term
                .factors
                .iter()
                .map(|d| (d.rows().elems().to_vec(), d.cols().elems().to_vec()))
                .collect();
            entry.set_item("factors", factors)?;
            list.append(entry)?;
        }
        Ok(list)
    };
    let dict = PyDict::new(py);
    dict.set_item("kind", rel.kind.to_string())?;
    dict.set_item("n", rel.ambient())?;
    dict.set_item("lhs", side(&rel.lhs)?)?;
    dict.set_item("rhs", side(&rel.rhs)?)?;
    dict.set_item("text", rel.to_text())?;
    Ok(dict)
}

/// Generate a commutation identity and optionally verify it by expanding
/// both sides to normal form.
///
/// Pair kinds (T5.2, C5.4, T5.6, C5.7, T6.3, C6.4) take the four index
/// sets I, J, M, N; generator kinds (E3.2, E3.3, E3.10, E3.12) take the
/// generator position (i, j) plus the minor's I, J. With `check=True`
/// the returned dict gains a `verified` bool.
#[pyfunction]
#[pyo3(signature = (kind, n, I=None, J=None, M=None, N=None, i=None, j=None, check=false))]
#[allow(non_snake_case)]
fn relation<'py>(
    py: Python<'py>,
    kind: &str,
    n: usize,
    I: Option<Vec<usize>>,
    J: Option<Vec<usize>>,
    M: Option<Vec<usize>>,
    N: Option<Vec<usize>>,
    i: Option<usize>,
    j: Option<usize>,
    check: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let kind: RelationKind = kind.parse().map_err(err)?;
    let need = |name: &str, v: Option<Vec<usize>>| -> PyResult<IndexSet> {
        let v = v.ok_or_else(|| PyValueError::new_err(format!("{kind} needs {name}")))?;
        index_set(n, &v)
    };
    let rel = if kind.is_pair_kind() {
        gen_pair_relation(
            kind,
            &need("I", I)?,
            &need("J", J)?,
            &need("M", M)?,
            &need("N", N)?,
        )
        .map_err(err)?
    } else {
        let (Some(gi), Some(gj)) = (i, j) else {
            return Err(PyValueError::new_err(format!(
                "{kind} needs the generator position i, j"
            )));
        };
        gen_generator_minor_relation(kind, gi, gj, &need("I", I)?, &need("J", J)?).map_err(err)?
    };
    let dict = relation_to_py(py, &rel)?;
    if check {
        dict.set_item("verified", verify_relation(&rel))?;
    }
    Ok(dict)
}

/// Quasicommutation exponent m with [I|J][M|N] = q^m [M|N][I|J], or None
/// when the structural tests are inconclusive.
#[pyfunction]
#[pyo3(signature = (n, I, J, M, N))]
#[allow(non_snake_case)]
fn quasi_exponent(
    n: usize,
    I: Vec<usize>,
    J: Vec<usize>,
    M: Vec<usize>,
    N: Vec<usize>,
) -> PyResult<Option<i64>> {
    let i = index_set(n, &I)?;
    let j = index_set(n, &J)?;
    let m = index_set(n, &M)?;
    let nn = index_set(n, &N)?;
    quasicommutation_exponent(&i, &j, &m, &nn).map_err(err)
}

/// Run a bulk verification sweep and return the report as a dict.
/// `kinds` is "all" or a comma list such as "T5.2,C5.4".
#[pyfunction]
#[pyo3(signature = (n, max_size, kinds="all", seed=1, samples=200))]
fn verify_sweep<'py>(
    py: Python<'py>,
    n: usize,
    max_size: usize,
    kinds: &str,
    seed: u64,
    samples: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let kind_list = if kinds.eq_ignore_ascii_case("all") {
        RelationKind::all().to_vec()
    } else {
        kinds
            .split(',')
            .map(|part| part.trim().parse::<RelationKind>())
            .collect::<qmatrix::Result<Vec<_>>>()
            .map_err(err)?
    };
    let mut config = SweepConfig::new(n, max_size, kind_list);
    config.seed = seed;
    config.samples = samples;
    let report = sweep_verify(&config).map_err(err)?;
    let dict = PyDict::new(py);
    dict.set_item("n", report.n)?;
    dict.set_item("max_size", report.max_size)?;
    dict.set_item(
        "kinds",
        report.kinds.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
    )?;
    dict.set_item("exhaustive", report.exhaustive)?;
    dict.set_item("total", report.total)?;
    dict.set_item("passed", report.passed)?;
    dict.set_item("failed", report.failed)?;
    dict.set_item("first_failure", report.first_failure.clone())?;
    dict.set_item("predicted_words", report.predicted_words)?;
    dict.set_item("text", report.to_string())?;
    Ok(dict)
}

fn poly_to_py<'py>(py: Python<'py>, poly: &CommutativePoly) -> PyResult<Bound<'py, PyDict>> {
    let terms = PyList::empty(py);
    for (mono, coeff) in poly.terms() {
        let vars: Vec<((usize, usize), u32)> = mono.vars().to_vec();
        terms.append((vars, coeff.clone()))?;
    }
    let dict = PyDict::new(py);
    dict.set_item("n", poly.ambient())?;
    dict.set_item("terms", terms)?;
    dict.set_item("text", poly.to_string())?;
    Ok(dict)
}

/// Poisson bracket {[I|J], [M|N]} of two classical minors: a dict with the
/// monomial terms and display text. `variant` picks the closed formula
/// ("7.6", "7.8", or "7.9"); `oracle=True` computes it as the q→1 limit of
/// the scaled quantum commutator instead.
#[pyfunction]
#[pyo3(signature = (n, I, J, M, N, variant="7.9", oracle=false))]
#[allow(non_snake_case)]
fn poisson_bracket<'py>(
    py: Python<'py>,
    n: usize,
    I: Vec<usize>,
    J: Vec<usize>,
    M: Vec<usize>,
    N: Vec<usize>,
    variant: &str,
    oracle: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let variant: PoissonVariant = variant.parse().map_err(err)?;
    let i = index_set(n, &I)?;
    let j = index_set(n, &J)?;
    let m = index_set(n, &M)?;
    let nn = index_set(n, &N)?;
    let bracket = if oracle {
        semiclassical_bracket(&i, &j, &m, &nn).map_err(err)?
    } else {
        bracket_minors(variant, &i, &j, &m, &nn).map_err(err)?
    };
    poly_to_py(py, &bracket)
}

#[pymodule]
fn qmatrix_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyElement>()?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(generator, m)?)?;
    m.add_function(wrap_pyfunction!(minor, m)?)?;
    m.add_function(wrap_pyfunction!(r_form, m)?)?;
    m.add_function(wrap_pyfunction!(r_form_factored, m)?)?;
    m.add_function(wrap_pyfunction!(relation, m)?)?;
    m.add_function(wrap_pyfunction!(quasi_exponent, m)?)?;
    m.add_function(wrap_pyfunction!(verify_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(poisson_bracket, m)?)?;
    Ok(())
}
