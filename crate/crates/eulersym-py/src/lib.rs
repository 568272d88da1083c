//! Python bindings: rings and polynomials, symbol systems parsed from
//! the `.sys` document grammar, the complete-intersection decision, and
//! a raw Groebner-basis entry point.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyType;

use eulersym::document::{parse_polynomial, SymbolSystemDocument};
use eulersym::report::DecisionReport;
use eulersym::variety::{
    build_generators, decide_ci_with, sample_check, sample_points, DecideOptions,
};
use eulersym::{
    algebraic_relations, Ideal, MonomialOrder, Polynomial, Rational, Ring as CoreRing,
    SymbolSystem as CoreSystem,
};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_rational(text: &str) -> PyResult<Rational> {
    text.trim()
        .parse::<Rational>()
        .map_err(|e| value_error(format!("bad rational `{text}`: {e}")))
}

fn parse_point(values: Vec<String>) -> PyResult<Vec<Rational>> {
    values.iter().map(|v| parse_rational(v)).collect()
}

/// A polynomial ring context: an ordered list of variable names.
#[pyclass(name = "Ring", skip_from_py_object)]
#[derive(Clone)]
struct PyRing {
    inner: CoreRing,
}

#[pymethods]
impl PyRing {
    #[new]
    fn new(vars: Vec<String>) -> PyResult<Self> {
        Ok(PyRing {
            inner: CoreRing::new(vars).map_err(value_error)?,
        })
    }

    fn vars(&self) -> Vec<String> {
        self.inner.vars().to_vec()
    }

    /// Parse an expression (same grammar as the document format).
    fn poly(&self, text: &str) -> PyResult<PyPolynomial> {
        Ok(PyPolynomial {
            inner: parse_polynomial(&self.inner, text).map_err(value_error)?,
        })
    }

    fn __repr__(&self) -> String {
        format!("Ring([{}])", self.inner.vars().join(", "))
    }
}

/// A sparse exact-rational multivariate polynomial.
#[pyclass(name = "Polynomial", skip_from_py_object)]
#[derive(Clone)]
struct PyPolynomial {
    inner: Polynomial,
}

#[pymethods]
impl PyPolynomial {
    fn __add__(&self, other: &PyPolynomial) -> PyResult<PyPolynomial> {
        Ok(PyPolynomial {
            inner: self.inner.checked_add(&other.inner).map_err(value_error)?,
        })
    }

    fn __sub__(&self, other: &PyPolynomial) -> PyResult<PyPolynomial> {
        Ok(PyPolynomial {
            inner: self.inner.checked_sub(&other.inner).map_err(value_error)?,
        })
    }

    fn __mul__(&self, other: &PyPolynomial) -> PyResult<PyPolynomial> {
        Ok(PyPolynomial {
            inner: self.inner.checked_mul(&other.inner).map_err(value_error)?,
        })
    }

    fn __neg__(&self) -> PyPolynomial {
        PyPolynomial {
            inner: self.inner.neg_ref(),
        }
    }

    fn __pow__(&self, exp: u32, _mod: Option<u32>) -> PyPolynomial {
        PyPolynomial {
            inner: self.inner.pow(exp),
        }
    }

    fn __eq__(&self, other: &PyPolynomial) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        self.inner.to_string()
    }

    fn degree(&self) -> Option<u32> {
        self.inner.degree()
    }

    /// The common total degree, or None when terms mix degrees. The zero
    /// polynomial reports 0.
    fn homogeneous_degree(&self) -> Option<u32> {
        self.inner.homogeneous_degree()
    }

    fn derivative(&self, var_index: usize) -> PyResult<PyPolynomial> {
        Ok(PyPolynomial {
            inner: self
                .inner
                .partial_derivative(var_index)
                .map_err(value_error)?,
        })
    }

    /// Evaluate at exact rationals given as strings ("3", "-1/2").
    fn evaluate(&self, point: Vec<String>) -> PyResult<String> {
        let values = parse_point(point)?;
        Ok(self
            .inner
            .evaluate(&values)
            .map_err(value_error)?
            .to_string())
    }
}

/// Validation outcome for a symbol system.
#[pyclass(name = "Validation")]
struct PyValidation {
    #[pyo3(get)]
    valid: bool,
    #[pyo3(get)]
    rank: u32,
    #[pyo3(get)]
    n: usize,
    #[pyo3(get)]
    failure: Option<String>,
}

#[pymethods]
impl PyValidation {
    fn __repr__(&self) -> String {
        match &self.failure {
            None => format!("Validation(valid, rank={})", self.rank),
            Some(f) => format!("Validation(INVALID: {f})"),
        }
    }
}

/// The complete-intersection decision record.
#[pyclass(name = "Verdict")]
struct PyVerdict {
    inner: eulersym::CIVerdict,
}

#[pymethods]
impl PyVerdict {
    #[getter]
    fn valid(&self) -> bool {
        self.inner.valid
    }

    #[getter]
    fn is_complete_intersection(&self) -> bool {
        self.inner.is_complete_intersection
    }

    #[getter]
    fn rank(&self) -> u32 {
        self.inner.rank
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn codim(&self) -> usize {
        self.inner.codim
    }

    #[getter]
    fn reason(&self) -> Option<String> {
        self.inner.reason.map(|r| r.to_string())
    }

    /// (c, b, quadratic, y_set_theoretic_ci) for rank-2 systems.
    #[getter]
    fn rank2(&self) -> Option<(usize, u32, bool, bool)> {
        self.inner
            .rank2
            .as_ref()
            .map(|d| (d.c, d.b, d.quadratic, d.y_set_theoretic_ci))
    }

    #[getter]
    fn witness(&self) -> Option<String> {
        self.inner.witness.as_ref().map(|w| w.to_string())
    }

    fn __repr__(&self) -> String {
        format!(
            "Verdict(ci={}, rank={}, reason={:?})",
            self.inner.is_complete_intersection,
            self.inner.rank,
            self.inner.reason.map(|r| r.to_string())
        )
    }
}

/// A symbol system: graded components of homogeneous polynomials closed
/// under partial derivatives.
#[pyclass(name = "SymbolSystem")]
struct PySymbolSystem {
    inner: CoreSystem,
    source: String,
}

#[pymethods]
impl PySymbolSystem {
    /// Build from a variable list and `{degree: [expressions]}`.
    #[new]
    fn new(vars: Vec<String>, components: BTreeMap<u32, Vec<String>>) -> PyResult<Self> {
        let ring = CoreRing::new(vars).map_err(value_error)?;
        let mut map = BTreeMap::new();
        for (k, texts) in components {
            let polys: Vec<Polynomial> = texts
                .iter()
                .map(|t| parse_polynomial(&ring, t))
                .collect::<Result<_, _>>()
                .map_err(value_error)?;
            map.insert(k, polys);
        }
        let inner = CoreSystem::new(ring, map).map_err(value_error)?;
        let source = document_of(&inner);
        Ok(PySymbolSystem { inner, source })
    }

    /// Parse a `.sys` document.
    #[classmethod]
    fn parse(_cls: &Bound<'_, PyType>, text: &str) -> PyResult<Self> {
        let doc = SymbolSystemDocument::parse(text).map_err(value_error)?;
        Ok(PySymbolSystem {
            inner: doc.to_system().map_err(value_error)?,
            source: text.to_string(),
        })
    }

    fn rank(&self) -> u32 {
        self.inner.rank()
    }

    fn n(&self) -> usize {
        self.inner.n()
    }

    /// (degree, dimension) pairs for the stated components.
    fn dims(&self) -> Vec<(u32, usize)> {
        self.inner.dims()
    }

    fn validate(&self) -> PyValidation {
        let report = self.inner.validate();
        PyValidation {
            valid: report.is_valid(),
            rank: report.rank,
            n: report.n,
            failure: report.failure.map(|f| f.to_string()),
        }
    }

    #[pyo3(signature = (witness = false))]
    fn decide(&self, witness: bool) -> PyVerdict {
        PyVerdict {
            inner: decide_ci_with(
                &self.inner,
                DecideOptions {
                    witness,
                    fast_path: true,
                },
            ),
        }
    }

    /// The machine-readable decision report as a JSON string.
    #[pyo3(signature = (witness = false))]
    fn decide_json(&self, witness: bool) -> String {
        let verdict = decide_ci_with(
            &self.inner,
            DecideOptions {
                witness,
                fast_path: true,
            },
        );
        DecisionReport::new(&self.source, verdict).to_json()
    }

    /// Degree-2 generators of the model variety, as strings.
    #[pyo3(signature = (alias_rank2 = false))]
    fn quadrics(&self, alias_rank2: bool) -> PyResult<Vec<String>> {
        let model = build_generators(&self.inner).map_err(value_error)?;
        let gens = if alias_rank2 {
            model
                .generators_rank2_alias()
                .ok_or_else(|| value_error("flat aliases need rank <= 2"))?
        } else {
            model.generators().to_vec()
        };
        Ok(gens.iter().map(|g| g.to_string()).collect())
    }

    /// Ambient variable names of the model variety.
    fn ambient_vars(&self) -> PyResult<Vec<String>> {
        let model = build_generators(&self.inner).map_err(value_error)?;
        Ok(model.ambient().vars().to_vec())
    }

    /// (projective_dimension, codimension, generators) of one level's
    /// base locus.
    #[pyo3(signature = (level = 2))]
    fn base_locus(&self, level: u32) -> PyResult<(i64, u32, Vec<String>)> {
        let report = self.inner.base_locus(level).map_err(value_error)?;
        Ok((
            report.projective_dimension,
            report.codim,
            report
                .ideal
                .generators()
                .iter()
                .map(|g| g.to_string())
                .collect(),
        ))
    }

    /// Verify the generators vanish on random exact points; returns
    /// (vanished, requested).
    #[pyo3(signature = (seed = 0, count = 100))]
    fn sample_check(&self, seed: u64, count: usize) -> PyResult<(usize, usize)> {
        let model = build_generators(&self.inner).map_err(value_error)?;
        let report = sample_check(&model, seed, count);
        Ok((report.checked - report.failures, report.requested))
    }

    /// Image of one parameter value under the parametrizing map.
    fn phi(&self, t: &str, w: Vec<String>) -> PyResult<Vec<String>> {
        let t = parse_rational(t)?;
        let w = parse_point(w)?;
        let point = eulersym::phi(&self.inner, &t, &w).map_err(value_error)?;
        Ok(point.coords().iter().map(|c| c.to_string()).collect())
    }

    /// One random point of the variety (for experimentation).
    #[pyo3(signature = (seed = 0))]
    fn random_point(&self, seed: u64) -> Vec<String> {
        let samples = sample_points(&self.inner, seed, 1);
        samples[0]
            .point
            .coords()
            .iter()
            .map(|c| c.to_string())
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "SymbolSystem(n={}, rank={}, dims={:?})",
            self.inner.n(),
            self.inner.rank(),
            self.inner.dims()
        )
    }
}

fn document_of(sys: &CoreSystem) -> String {
    let mut out = format!("vars: {}\n", sys.ring().vars().join(", "));
    for (k, dim) in sys.dims() {
        if dim == 0 {
            continue;
        }
        let space = sys.component(k).unwrap();
        let exprs: Vec<String> = space.basis().iter().map(|b| b.to_string()).collect();
        out.push_str(&format!("F{k}: {}\n", exprs.join("; ")));
    }
    out
}

/// Reduced Groebner basis of an ideal given as expressions.
#[pyfunction]
#[pyo3(signature = (vars, gens, order = "degrevlex"))]
fn groebner_basis(vars: Vec<String>, gens: Vec<String>, order: &str) -> PyResult<Vec<String>> {
    let ring = CoreRing::new(vars).map_err(value_error)?;
    let polys: Vec<Polynomial> = gens
        .iter()
        .map(|t| parse_polynomial(&ring, t))
        .collect::<Result<_, _>>()
        .map_err(value_error)?;
    let order = MonomialOrder::from_name(order)
        .ok_or_else(|| value_error(format!("unknown order `{order}`")))?;
    let gb = Ideal::new(ring, polys)
        .map_err(value_error)?
        .groebner(order);
    Ok(gb.elements().iter().map(|g| g.to_string()).collect())
}

/// Generators of the relation ideal among homogeneous polynomials.
#[pyfunction]
fn relations(vars: Vec<String>, polys: Vec<String>) -> PyResult<Vec<String>> {
    let ring = CoreRing::new(vars).map_err(value_error)?;
    let polys: Vec<Polynomial> = polys
        .iter()
        .map(|t| parse_polynomial(&ring, t))
        .collect::<Result<_, _>>()
        .map_err(value_error)?;
    let ideal = algebraic_relations(&polys).map_err(value_error)?;
    Ok(ideal.generators().iter().map(|g| g.to_string()).collect())
}

#[pymodule]
fn eulersym_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyRing>()?;
    m.add_class::<PyPolynomial>()?;
    m.add_class::<PySymbolSystem>()?;
    m.add_class::<PyValidation>()?;
    m.add_class::<PyVerdict>()?;
    m.add_function(wrap_pyfunction!(groebner_basis, m)?)?;
    m.add_function(wrap_pyfunction!(relations, m)?)?;
    Ok(())
}
