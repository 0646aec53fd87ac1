//! Python bindings for the Garside workbench: tables, Coxeter graphs,
//! positive presentations, and the normal-form engine. Reports are returned
//! as JSON strings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use garside_core::artin;
use garside_core::coxeter::{CoxeterGraph, Realization};
use garside_core::examples_gen::{self, Generated};
use garside_core::garside::GarsideStructure;
use garside_core::partialmul::PartialMulTable;
use garside_core::presentations::PositivePresentation;
use garside_core::CoreError;

fn err(e: CoreError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A positive partial multiplication table.
#[pyclass(name = "Table")]
struct PyTable {
    inner: PartialMulTable,
}

#[pymethods]
impl PyTable {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyTable { inner: PartialMulTable::from_json(text).map_err(err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn elements(&self) -> Vec<String> {
        self.inner.ids().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn product(&self, a: &str, b: &str) -> PyResult<Option<String>> {
        let ia = self
            .inner
            .index_of(a)
            .ok_or_else(|| PyValueError::new_err(format!("unknown element {a}")))?;
        let ib = self
            .inner
            .index_of(b)
            .ok_or_else(|| PyValueError::new_err(format!("unknown element {b}")))?;
        Ok(self.inner.product(ia, ib).map(|c| self.inner.id(c).to_string()))
    }

    fn verify_axioms(&self) -> PyResult<String> {
        Ok(serde_json::to_string(&self.inner.verify_axioms()).unwrap())
    }

    fn check_theorem39(&self) -> PyResult<String> {
        let r = self.inner.check_theorem39().map_err(err)?;
        Ok(serde_json::to_string(&r).unwrap())
    }

    /// Whether the axioms and the Garside criterion both hold.
    fn certifies(&self) -> PyResult<bool> {
        if !self.inner.verify_axioms().passed() {
            return Ok(false);
        }
        Ok(self.inner.check_theorem39().map_err(err)?.passed())
    }

    /// The certified structure on the doubled poset.
    fn structure(&self) -> PyResult<PyStructure> {
        if !self.certifies()? {
            return Err(PyValueError::new_err("table does not certify"));
        }
        let e = self.inner.build_e_checked().map_err(err)?;
        Ok(PyStructure { inner: GarsideStructure::from_e(e).map_err(err)? })
    }
}

/// A Coxeter presentation graph.
#[pyclass(name = "Graph")]
struct PyGraph {
    inner: CoxeterGraph,
}

impl PyGraph {
    fn indices(&self, subset: &[String]) -> PyResult<Vec<usize>> {
        subset
            .iter()
            .map(|name| {
                self.inner
                    .vertex_index(name)
                    .ok_or_else(|| PyValueError::new_err(format!("unknown vertex {name}")))
            })
            .collect()
    }
}

#[pymethods]
impl PyGraph {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: CoxeterGraph::from_json(text).map_err(err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn vertices(&self) -> Vec<String> {
        self.inner.vertex_names().to_vec()
    }

    fn is_cyclic_type(&self) -> bool {
        artin::is_cyclic_type(&self.inner)
    }

    fn is_spherical(&self, subset: Vec<String>) -> PyResult<bool> {
        Ok(self.inner.is_spherical(&self.indices(&subset)?))
    }

    fn parabolic_order(&self, subset: Vec<String>) -> PyResult<usize> {
        let r = Realization::new(self.inner.clone()).map_err(err)?;
        let en = r.enumerate_parabolic(&self.indices(&subset)?).map_err(err)?;
        Ok(en.len())
    }

    fn reflection_count(&self, subset: Vec<String>) -> PyResult<usize> {
        let r = Realization::new(self.inner.clone()).map_err(err)?;
        let en = r.enumerate_parabolic(&self.indices(&subset)?).map_err(err)?;
        Ok(r.reflections(&en).len())
    }

    /// Size of the dual interval of the subset with its orientation-compatible
    /// Coxeter element.
    fn dual_interval_size(&self, subset: Vec<String>) -> PyResult<usize> {
        let idx = self.indices(&subset)?;
        let r = Realization::new(self.inner.clone()).map_err(err)?;
        let en = r.enumerate_parabolic(&idx).map_err(err)?;
        let word = r.compatible_coxeter_word(&idx).map_err(err)?;
        let delta = en.apply_word(0, &word);
        Ok(r.dual_interval(&en, delta).len())
    }

    fn check_graph_hypotheses(&self) -> String {
        serde_json::to_string(&artin::check_thm63_graph(&self.inner)).unwrap()
    }

    /// The induced partial multiplication table of the candidate simple set.
    fn table(&self) -> PyResult<PyTable> {
        let u = if artin::is_cyclic_type(&self.inner) {
            artin::build_u_cyclic(self.inner.clone()).map_err(err)?
        } else {
            let r = Realization::new(self.inner.clone()).map_err(err)?;
            artin::build_u_glued(r).map_err(err)?
        };
        Ok(PyTable { inner: u.partial_mul().map_err(err)? })
    }
}

/// A positive presentation.
#[pyclass(name = "Presentation")]
struct PyPresentation {
    inner: PositivePresentation,
}

#[pymethods]
impl PyPresentation {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyPresentation { inner: PositivePresentation::from_json(text).map_err(err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn check_t5(&self) -> PyResult<String> {
        Ok(serde_json::to_string(&self.inner.check_t5().map_err(err)?).unwrap())
    }

    fn check_square(&self) -> PyResult<String> {
        Ok(serde_json::to_string(&self.inner.check_square().map_err(err)?).unwrap())
    }

    fn check_systolic_shape(&self) -> PyResult<String> {
        Ok(serde_json::to_string(&self.inner.check_systolic_shape().map_err(err)?).unwrap())
    }

    fn link_girth(&self) -> PyResult<Option<usize>> {
        Ok(self.inner.link_graph().map_err(err)?.girth())
    }

    /// The subword table.
    fn table(&self) -> PyResult<PyTable> {
        Ok(PyTable { inner: self.inner.build_u_t5().map_err(err)? })
    }
}

/// A certified combinatorial Garside structure with its normal-form engine.
#[pyclass(name = "Structure")]
struct PyStructure {
    inner: GarsideStructure,
}

#[pymethods]
impl PyStructure {
    fn simples(&self) -> Vec<String> {
        self.inner.poset().poset.ids().to_vec()
    }

    fn delta(&self) -> String {
        self.inner.simple_name(self.inner.top()).to_string()
    }

    /// Left-greedy normal form of a whitespace-separated word; a trailing `'`
    /// inverts a letter, `delta` is the top. Returns `(inf, factors)`.
    fn normal_form(&self, word: &str) -> PyResult<(i64, Vec<String>)> {
        let nf = self.inner.normal_form_str(word).map_err(err)?;
        Ok((nf.inf, nf.factors))
    }

    fn equal(&self, w1: &str, w2: &str) -> PyResult<bool> {
        Ok(self.normal_form(w1)? == self.normal_form(w2)?)
    }
}

/// Canonical example inputs by name, as JSON text.
#[pyfunction]
fn generate(name: &str, params: Vec<String>) -> PyResult<String> {
    match examples_gen::generate(name, &params).map_err(err)? {
        Generated::Graph(g) => Ok(g.to_json()),
        Generated::Presentation(p) => Ok(p.to_json()),
    }
}

#[pymodule]
fn garside_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTable>()?;
    m.add_class::<PyGraph>()?;
    m.add_class::<PyPresentation>()?;
    m.add_class::<PyStructure>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    Ok(())
}
