//! Python bindings: the pair and symmetric-algebra types with their main
//! operations, plus catalog and generator access.

use apklie_core::curvature::curvature_report;
use apklie_core::error::Error;
use apklie_core::extension::{double_extend, reduce, tower};
use apklie_core::format::{
    emit, parse, ApkPairDoc, Document, ExtensionDataDoc, LiePkDoc, RealSymmetricAlgebraDoc,
};
use apklie_core::generate::{generate_pair, CorpusKind};
use apklie_core::liereal::{build_lie, standard_pk};
use apklie_core::realform::{detect_aff, AffDetection};
use apklie_core::scalar::rat_to_string;
use apklie_core::catalog;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn to_py_err(err: Error) -> PyErr {
    match err {
        Error::Internal { .. } | Error::EigenvalueOutsideField { .. } => {
            PyRuntimeError::new_err(err.to_string())
        }
        _ => PyValueError::new_err(err.to_string()),
    }
}

/// A validated APK-compatible pair (U, H).
#[pyclass(name = "ApkPair", from_py_object)]
#[derive(Clone)]
struct PyApkPair {
    inner: apklie_core::apk::ApkPair,
}

#[pymethods]
impl PyApkPair {
    /// Parse any pair-describing document (apk_pair, real_symmetric_algebra
    /// or lie_pk) and convert it to a pair.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let doc = parse(text).map_err(to_py_err)?;
        let inner = doc.to_pair().map_err(to_py_err)?;
        Ok(PyApkPair { inner })
    }

    /// Load a built-in catalog entry as a pair.
    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        let doc = catalog::get(name)
            .ok_or_else(|| PyValueError::new_err(format!("unknown catalog entry {name:?}")))?;
        let inner = doc.to_pair().map_err(to_py_err)?;
        Ok(PyApkPair { inner })
    }

    /// Deterministic corpus pair; kind is "abelian", "tstar" or "tower".
    #[staticmethod]
    fn generate(seed: u64, dim: usize, kind: &str) -> PyResult<Self> {
        let kind = CorpusKind::from_name(kind)
            .ok_or_else(|| PyValueError::new_err(format!("unknown corpus kind {kind:?}")))?;
        let inner = generate_pair(seed, dim, kind).map_err(to_py_err)?;
        Ok(PyApkPair { inner })
    }

    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn to_json(&self) -> String {
        emit(&Document::ApkPair(ApkPairDoc::from_pair(&self.inner)))
    }

    fn signature(&self) -> PyResult<(usize, usize)> {
        self.inner.signature().map_err(to_py_err)
    }

    fn is_nilpotent(&self) -> bool {
        self.inner.algebra().nilpotency().0
    }

    fn is_two_step(&self) -> PyResult<bool> {
        self.inner.is_two_step().map_err(to_py_err)
    }

    fn is_novikov(&self) -> PyResult<bool> {
        self.inner.is_novikov().map_err(to_py_err)
    }

    fn is_flat(&self) -> PyResult<bool> {
        Ok(curvature_report(&self.inner).map_err(to_py_err)?.flat)
    }

    /// Ricci tensor over the canonical real chart, entries as exact
    /// rational strings.
    fn ricci(&self) -> PyResult<Vec<Vec<String>>> {
        let report = curvature_report(&self.inner).map_err(to_py_err)?;
        Ok((0..report.ricci.rows())
            .map(|r| report.ricci.row(r).iter().map(rat_to_string).collect())
            .collect())
    }

    fn einstein_factor(&self) -> PyResult<Option<String>> {
        let report = curvature_report(&self.inner).map_err(to_py_err)?;
        Ok(report.einstein_factor.as_ref().map(rat_to_string))
    }

    /// All classification flags as a dict.
    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let curv = curvature_report(&self.inner).map_err(to_py_err)?;
        let (p, q) = self.inner.signature().map_err(to_py_err)?;
        let l = build_lie(&self.inner).map_err(to_py_err)?;
        let aff = matches!(detect_aff(&self.inner).map_err(to_py_err)?, AffDetection::Aff(_));
        let d = PyDict::new(py);
        d.set_item("complex_dim", self.inner.dim())?;
        d.set_item("nilpotent", self.inner.algebra().nilpotency().0)?;
        d.set_item("unimodular", l.lie().is_unimodular())?;
        d.set_item("flat", curv.flat)?;
        d.set_item("ricci_flat", curv.ricci_flat)?;
        d.set_item(
            "einstein_factor",
            curv.einstein_factor.as_ref().map(rat_to_string),
        )?;
        d.set_item("novikov", curv.novikov)?;
        d.set_item("two_step", curv.two_step)?;
        d.set_item("aff_type", aff)?;
        d.set_item("signature", (p, q))?;
        Ok(d)
    }

    /// The realization g_U as a lie_pk JSON document with every tensor.
    fn lie_json(&self) -> PyResult<String> {
        let l = build_lie(&self.inner).map_err(to_py_err)?;
        Ok(emit(&Document::LiePk(LiePkDoc::from_realization(&l, None))))
    }

    fn direct_sum(&self, other: &PyApkPair) -> PyResult<PyApkPair> {
        Ok(PyApkPair {
            inner: self.inner.direct_sum(&other.inner).map_err(to_py_err)?,
        })
    }

    /// One reduction step: (reduced pair, extension-data JSON). Raises when
    /// the pair is already a base.
    fn reduce(&self) -> PyResult<(PyApkPair, String)> {
        let (reduced, data, _cert) = reduce(&self.inner).map_err(to_py_err)?;
        let data_json = emit(&Document::ExtensionData(ExtensionDataDoc::from_data(&data)));
        Ok((PyApkPair { inner: reduced }, data_json))
    }

    /// Reduce to a base pair; returns (base, number of steps).
    fn tower(&self) -> PyResult<(PyApkPair, usize)> {
        let (base, steps) = tower(&self.inner).map_err(to_py_err)?;
        Ok((PyApkPair { inner: base }, steps.len()))
    }

    /// Apply a double extension given as an extension_data JSON document.
    fn extend(&self, data_json: &str) -> PyResult<PyApkPair> {
        let doc = parse(data_json).map_err(to_py_err)?;
        let Document::ExtensionData(data_doc) = doc else {
            return Err(PyValueError::new_err("expected an extension_data document"));
        };
        let data = data_doc.to_data().map_err(to_py_err)?;
        Ok(PyApkPair {
            inner: double_extend(&self.inner, &data).map_err(to_py_err)?,
        })
    }

    /// aff-type detection: the recovered symmetric algebra as JSON, or None
    /// when the pair is a proper double extension.
    fn detect_aff(&self) -> PyResult<Option<String>> {
        match detect_aff(&self.inner).map_err(to_py_err)? {
            AffDetection::Aff(cert) => Ok(Some(emit(&Document::RealSymmetricAlgebra(
                RealSymmetricAlgebraDoc::from_symmetric_algebra(&cert.recovered),
            )))),
            AffDetection::NotReducible => Ok(None),
        }
    }

    fn __repr__(&self) -> String {
        format!("ApkPair(dim={})", self.inner.dim())
    }
}

/// A real symmetric commutative associative algebra (A, B).
#[pyclass(name = "SymmetricAlgebra", from_py_object)]
#[derive(Clone)]
struct PySymmetricAlgebra {
    inner: apklie_core::liereal::RealSymmetricAlgebra,
}

#[pymethods]
impl PySymmetricAlgebra {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let doc = parse(text).map_err(to_py_err)?;
        let Document::RealSymmetricAlgebra(doc) = doc else {
            return Err(PyValueError::new_err(
                "expected a real_symmetric_algebra document",
            ));
        };
        Ok(PySymmetricAlgebra {
            inner: doc.to_symmetric_algebra().map_err(to_py_err)?,
        })
    }

    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn to_json(&self) -> String {
        emit(&Document::RealSymmetricAlgebra(
            RealSymmetricAlgebraDoc::from_symmetric_algebra(&self.inner),
        ))
    }

    /// The complexified APK pair (U = A^C, H = -4B).
    fn complexify(&self) -> PyResult<PyApkPair> {
        let (pair, _iso) =
            apklie_core::liereal::complexify_pair(&self.inner).map_err(to_py_err)?;
        Ok(PyApkPair { inner: pair })
    }

    /// aff(A) with the standard pseudo-Kähler structure, as a lie_pk JSON
    /// document.
    fn standard_lie_json(&self) -> PyResult<String> {
        let l = standard_pk(&self.inner).map_err(to_py_err)?;
        Ok(emit(&Document::LiePk(LiePkDoc::from_realization(&l, None))))
    }

    fn __repr__(&self) -> String {
        format!("SymmetricAlgebra(dim={})", self.inner.dim())
    }
}

/// Names of the built-in catalog entries.
#[pyfunction]
fn catalog_names() -> Vec<String> {
    catalog::names().iter().map(|s| s.to_string()).collect()
}

/// JSON text of a built-in catalog entry.
#[pyfunction]
fn catalog_json(name: &str) -> PyResult<String> {
    let doc = catalog::get(name)
        .ok_or_else(|| PyValueError::new_err(format!("unknown catalog entry {name:?}")))?;
    Ok(emit(&doc))
}

/// Deterministic corpus document as JSON text.
#[pyfunction]
fn generate_json(seed: u64, dim: usize, kind: &str) -> PyResult<String> {
    let kind = CorpusKind::from_name(kind)
        .ok_or_else(|| PyValueError::new_err(format!("unknown corpus kind {kind:?}")))?;
    let doc = apklie_core::generate::generate(seed, dim, kind).map_err(to_py_err)?;
    Ok(emit(&doc))
}

/// Kind-aware validation: list of violation strings, empty when valid.
#[pyfunction]
fn validate_json(text: &str) -> PyResult<Vec<String>> {
    let doc = parse(text).map_err(to_py_err)?;
    let report = doc.validate().map_err(to_py_err)?;
    Ok(report.violations.iter().map(|v| v.to_string()).collect())
}

/// Degeneracy certificate of the 2-cocycle space of a lie_pk document, as
/// rational strings, or None.
#[pyfunction]
fn cocycle_certificate(text: &str) -> PyResult<Option<Vec<String>>> {
    let doc = parse(text).map_err(to_py_err)?;
    let Document::LiePk(lie_doc) = doc else {
        return Err(PyValueError::new_err("expected a lie_pk document"));
    };
    let lie = lie_doc.lie_algebra().map_err(to_py_err)?;
    let (_basis, cert) = apklie_core::liereal::cocycle_space(&lie);
    Ok(cert.map(|v| v.iter().map(rat_to_string).collect()))
}

#[pymodule]
fn apklie(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyApkPair>()?;
    m.add_class::<PySymmetricAlgebra>()?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_json, m)?)?;
    m.add_function(wrap_pyfunction!(generate_json, m)?)?;
    m.add_function(wrap_pyfunction!(validate_json, m)?)?;
    m.add_function(wrap_pyfunction!(cocycle_certificate, m)?)?;
    Ok(())
}
