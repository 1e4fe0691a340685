//! Python bindings: `mvpoly.LusztigDatum`, `mvpoly.CrystalElement` and the
//! verification suites.

use mvpoly::crystal::{self, CrystalElement as Element};
use mvpoly::polytope::RenderFormat;
use mvpoly::root_lattice::q_to_string;
use mvpoly::{builder, twisted, verify, LusztigDatum as Datum, MvError, System};
use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

fn err(e: MvError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn system(name: &str) -> PyResult<System> {
    match name {
        "untwisted" => Ok(System::Untwisted),
        "twisted" => Ok(System::Twisted),
        other => Err(PyValueError::new_err(format!("unknown system {other:?}"))),
    }
}

#[pyclass(name = "LusztigDatum", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyDatum {
    inner: Datum,
}

#[pymethods]
impl PyDatum {
    #[new]
    #[pyo3(signature = (a = Vec::new(), partition = Vec::new(), a_up = Vec::new(), system = "untwisted"))]
    fn new(a: Vec<u64>, partition: Vec<u64>, a_up: Vec<u64>, system: &str) -> PyResult<Self> {
        let s = self::system(system)?;
        Ok(PyDatum { inner: Datum::new(a, mvpoly::Partition::new(partition), a_up, s) })
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        Datum::from_json(s).map(|inner| PyDatum { inner }).map_err(err)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn a(&self) -> Vec<u64> {
        self.inner.a_list().to_vec()
    }

    #[getter]
    fn partition(&self) -> Vec<u64> {
        self.inner.lambda().parts().to_vec()
    }

    #[getter]
    fn a_up(&self) -> Vec<u64> {
        self.inner.a_up_list().to_vec()
    }

    #[getter]
    fn system(&self) -> String {
        self.inner.system().to_string()
    }

    fn height(&self) -> u64 {
        mvpoly::lusztig::height(&self.inner)
    }

    /// Coefficients of alpha0 and alpha1, as exact fraction strings.
    fn weight(&self) -> (String, String) {
        let w = mvpoly::lusztig::weight(&self.inner);
        (q_to_string(&w.c0), q_to_string(&w.c1))
    }

    fn __repr__(&self) -> String {
        format!("LusztigDatum({})", self.inner)
    }
}

#[pyclass(name = "CrystalElement", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyElement {
    inner: Element,
}

fn wrap(inner: Element) -> PyElement {
    PyElement { inner }
}

#[pymethods]
impl PyElement {
    #[new]
    fn new(right: &PyDatum) -> PyResult<Self> {
        Element::try_new(right.inner.clone()).map(wrap).map_err(err)
    }

    #[staticmethod]
    fn from_left(left: &PyDatum) -> PyResult<Self> {
        Element::try_from_left(left.inner.clone()).map(wrap).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (system = "untwisted"))]
    fn zero(system: &str) -> PyResult<Self> {
        Ok(wrap(Element::zero(self::system(system)?)))
    }

    #[getter]
    fn right(&self) -> PyDatum {
        PyDatum { inner: self.inner.right().clone() }
    }

    #[getter]
    fn left(&self) -> PyDatum {
        PyDatum { inner: self.inner.left().clone() }
    }

    fn e(&self, i: usize) -> PyResult<Self> {
        check_index(i)?;
        Ok(wrap(crystal::e(i, &self.inner)))
    }

    fn f(&self, i: usize) -> PyResult<Option<Self>> {
        check_index(i)?;
        Ok(crystal::f(i, &self.inner).map(wrap))
    }

    fn phi(&self, i: usize) -> PyResult<i64> {
        check_index(i)?;
        Ok(crystal::phi(i, &self.inner))
    }

    fn eps(&self, i: usize) -> PyResult<i64> {
        check_index(i)?;
        Ok(crystal::eps(i, &self.inner))
    }

    fn star(&self) -> Self {
        wrap(crystal::star(&self.inner))
    }

    fn weight(&self) -> (String, String) {
        let w = crystal::wt(&self.inner);
        (q_to_string(&w.c0), q_to_string(&w.c1))
    }

    /// Apply a comma separated operator word; None if some letter fails.
    fn apply(&self, word: &str) -> PyResult<Option<Self>> {
        let ops = crystal::parse_word(word).map_err(|e| PyKeyError::new_err(e.to_string()))?;
        Ok(crystal::apply_word(&ops, &self.inner).ok().map(wrap))
    }

    fn is_mv(&self) -> bool {
        self.inner.polytope().is_mv()
    }

    fn summary(&self) -> String {
        serde_json::to_string(&crystal::summarize(&self.inner)).expect("serializable")
    }

    #[pyo3(signature = (format = "svg"))]
    fn render(&self, format: &str) -> PyResult<String> {
        let fmt = match format {
            "svg" => RenderFormat::Svg,
            "tikz" => RenderFormat::Tikz,
            other => return Err(PyValueError::new_err(format!("unknown format {other:?}"))),
        };
        Ok(self.inner.polytope().render(fmt))
    }

    fn __repr__(&self) -> String {
        format!("CrystalElement({})", self.inner.right())
    }
}

fn check_index(i: usize) -> PyResult<()> {
    if i > 1 {
        return Err(PyValueError::new_err(format!("index must be 0 or 1, got {i}")));
    }
    Ok(())
}

#[pyfunction]
fn right_to_left(d: &PyDatum) -> PyResult<PyDatum> {
    let inner = match d.inner.system() {
        System::Untwisted => builder::right_to_left(&d.inner),
        System::Twisted => twisted::try_a22_right_to_left(&d.inner).map_err(err)?,
    };
    Ok(PyDatum { inner })
}

#[pyfunction]
fn left_to_right(d: &PyDatum) -> PyResult<PyDatum> {
    let inner = match d.inner.system() {
        System::Untwisted => builder::left_to_right(&d.inner),
        System::Twisted => twisted::try_a22_left_to_right(&d.inner).map_err(err)?,
    };
    Ok(PyDatum { inner })
}

#[pyfunction]
fn enumerate(height: u64) -> Vec<PyElement> {
    verify::enumerate(height).into_iter().map(wrap).collect()
}

#[pyfunction]
fn crystal_graph_dot(height: u64) -> String {
    verify::crystal_graph_dot(height)
}

/// Run a suite and return its reports as JSON strings.
#[pyfunction]
fn run_suite(suite: &str, height: u64) -> PyResult<Vec<String>> {
    let reports = match suite {
        "ks" => vec![verify::ks_characterization_check(height)],
        "phi" => vec![verify::phi_morphism_check(0, height), verify::phi_morphism_check(1, height)],
        "blambda" => verify::standard_lambdas()
            .iter()
            .map(|l| verify::b_lambda_count_check(l, height))
            .collect::<mvpoly::Result<_>>()
            .map_err(err)?,
        "a22" => vec![twisted::similarity_embed_check(height), twisted::a22_transfer_check(height)],
        other => return Err(PyValueError::new_err(format!("unknown suite {other:?}"))),
    };
    Ok(reports.iter().map(|r| r.to_json()).collect())
}

#[pymodule]
#[pyo3(name = "mvpoly")]
fn mvpoly_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDatum>()?;
    m.add_class::<PyElement>()?;
    m.add_function(wrap_pyfunction!(right_to_left, m)?)?;
    m.add_function(wrap_pyfunction!(left_to_right, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(crystal_graph_dot, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
