//! Python bindings: indices, words, 2-posets, the evaluator and the
//! verification harness.

use akzeta::identities::suites::{run_suite as run_suite_core, SuiteConfig, SuiteName};
use akzeta::identities::verify::{default_grid, default_tolerance, parse_grid};
use akzeta::identities::{verify as verify_core, Family, VerifyOptions};
use akzeta::index;
use akzeta::numerics::{self, Arg, ConstTag, Constant, FunFactor, RealBall};
use akzeta::poset::{self, TwoPoset};
use akzeta::words::{self, parse_rational};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn from_json<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

/// A non-empty or empty tuple of positive integers.
#[pyclass(name = "Index", eq, hash, frozen, from_py_object, module = "pyakzeta")]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyIndex(pub index::Index);

#[pymethods]
impl PyIndex {
    /// Accepts `"(1,2)"` or a sequence of integers.
    #[new]
    fn new(k: &Bound<'_, PyAny>) -> PyResult<Self> {
        if let Ok(s) = k.extract::<String>() {
            return s.parse().map(PyIndex).map_err(err);
        }
        let entries: Vec<u32> = k.extract()?;
        index::Index::new(entries).map(PyIndex).map_err(err)
    }

    #[getter]
    fn entries(&self) -> Vec<u32> {
        self.0.entries().to_vec()
    }

    #[getter]
    fn weight(&self) -> u32 {
        self.0.weight()
    }

    #[getter]
    fn depth(&self) -> usize {
        self.0.depth()
    }

    fn is_admissible(&self) -> bool {
        self.0.is_admissible()
    }

    fn dual(&self) -> PyResult<PyIndex> {
        self.0.dual().map(PyIndex).map_err(err)
    }

    fn hoffman_dual(&self) -> PyIndex {
        PyIndex(self.0.hoffman_dual())
    }

    fn reverse_blocks(&self) -> PyIndex {
        PyIndex(self.0.reverse_blocks())
    }

    fn k_minus(&self) -> PyResult<PyIndex> {
        self.0.k_minus().map(PyIndex).map_err(err)
    }

    fn k_plus(&self) -> PyResult<PyIndex> {
        self.0.k_plus().map(PyIndex).map_err(err)
    }

    /// Block form `[(a_1, b_1), ...]`.
    fn blocks(&self) -> Vec<(u32, u32)> {
        self.0.to_blocks().blocks().to_vec()
    }

    fn word(&self) -> String {
        words::index_to_word(&self.0).to_string()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Index('{}')", self.0)
    }
}

/// All indices of a given weight.
#[pyfunction]
fn indices_of_weight(weight: u32, admissible_only: bool) -> Vec<PyIndex> {
    let v = if admissible_only { index::admissible_of_weight(weight) } else { index::all_of_weight(weight) };
    v.into_iter().map(PyIndex).collect()
}

/// Shuffle product of two words, as `{word: "p/q"}`.
#[pyfunction]
fn shuffle<'py>(py: Python<'py>, u: &str, v: &str) -> PyResult<Bound<'py, PyAny>> {
    let u: words::Word = u.parse().map_err(err)?;
    let v: words::Word = v.parse().map_err(err)?;
    from_json(py, &words::shuffle(&u, &v).to_json())
}

/// The duality involution on a word in the letters 0 and 1.
#[pyfunction]
fn word_dual(w: &str) -> PyResult<String> {
    let w: words::Word = w.parse().map_err(err)?;
    w.dual().map(|d| d.to_string()).map_err(err)
}

/// A 2-poset: labels in {0, 1} and covering relations.
#[pyclass(name = "Poset", frozen, module = "pyakzeta")]
pub struct PyPoset(pub TwoPoset);

#[pymethods]
impl PyPoset {
    #[new]
    #[pyo3(signature = (labels, covers = Vec::new()))]
    fn new(labels: Vec<u8>, covers: Vec<(usize, usize)>) -> PyResult<Self> {
        let labels = labels
            .into_iter()
            .map(|l| match l {
                0 => Ok(words::Letter::E0),
                1 => Ok(words::Letter::E1),
                other => Err(err(format!("label {other} is not 0 or 1"))),
            })
            .collect::<PyResult<Vec<_>>>()?;
        TwoPoset::new(labels, &covers).map(PyPoset).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        TwoPoset::from_json_str(text).map(PyPoset).map_err(err)
    }

    #[staticmethod]
    fn chain(k: &PyIndex) -> Self {
        PyPoset(poset::chain_from_index(&k.0))
    }

    #[staticmethod]
    fn xi(k: &PyIndex, m: u32) -> PyResult<Self> {
        poset::xi_poset(&k.0, m).map(PyPoset).map_err(err)
    }

    fn to_json(&self) -> String {
        self.0.to_json().to_string()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn is_admissible(&self) -> bool {
        self.0.is_admissible()
    }

    fn transpose(&self) -> PyPoset {
        PyPoset(self.0.transpose())
    }

    /// The word sum over linear extensions, as `{word: "p/q"}`.
    fn w_map<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        from_json(py, &self.0.w_map().to_json())
    }
}

/// A midpoint-radius enclosure.
#[pyclass(name = "Ball", frozen, module = "pyakzeta")]
pub struct PyBall {
    #[pyo3(get)]
    mid: String,
    #[pyo3(get)]
    radius: f64,
    text: String,
    value: f64,
}

impl From<RealBall> for PyBall {
    fn from(b: RealBall) -> Self {
        PyBall { mid: b.mid_decimal(), radius: b.rad().to_f64(), text: b.display_digits(), value: b.to_f64() }
    }
}

#[pymethods]
impl PyBall {
    fn __float__(&self) -> f64 {
        self.value
    }

    fn __str__(&self) -> String {
        self.text.clone()
    }

    fn __repr__(&self) -> String {
        format!("Ball({})", self.text)
    }
}

/// Memoizing evaluator at a fixed precision in bits.
#[pyclass(name = "Evaluator", frozen, module = "pyakzeta")]
pub struct PyEvaluator(numerics::Evaluator);

impl PyEvaluator {
    fn ball(&self, r: Result<RealBall, numerics::NumericsError>) -> PyResult<PyBall> {
        r.map(|b| PyBall::from(b.with_prec(self.0.prec()))).map_err(err)
    }

    fn fun(&self, f: FunFactor, z: &str) -> PyResult<PyBall> {
        let z = parse_rational(z).map_err(err)?;
        self.ball(self.0.function(&f, &z))
    }
}

#[pymethods]
impl PyEvaluator {
    #[new]
    #[pyo3(signature = (prec = 128, cache = None))]
    fn new(prec: u32, cache: Option<String>) -> PyResult<Self> {
        if prec < 64 {
            return Err(err("prec must be at least 64"));
        }
        let ev = numerics::Evaluator::new(prec);
        Ok(PyEvaluator(match cache {
            Some(p) => ev.with_disk_cache(p),
            None => ev,
        }))
    }

    #[getter]
    fn prec(&self) -> u32 {
        self.0.prec()
    }

    fn zeta(&self, k: &PyIndex) -> PyResult<PyBall> {
        self.ball(self.0.constant(&Constant::mzv(k.0.clone())))
    }

    fn t(&self, k: &PyIndex) -> PyResult<PyBall> {
        self.ball(self.0.constant(&Constant::mtv(k.0.clone())))
    }

    fn xi(&self, k: &PyIndex, m: u32) -> PyResult<PyBall> {
        self.ball(self.0.constant(&Constant::with_arg(ConstTag::Xi, k.0.clone(), m)))
    }

    fn psi(&self, k: &PyIndex, m: u32) -> PyResult<PyBall> {
        self.ball(self.0.constant(&Constant::with_arg(ConstTag::Psi, k.0.clone(), m)))
    }

    /// `Li(k; z)`; `z` is a decimal or fraction string.
    fn li(&self, k: &PyIndex, z: &str) -> PyResult<PyBall> {
        self.fun(FunFactor::li(k.0.clone(), Arg::Z), z)
    }

    /// `A(k; z)`.
    fn a(&self, k: &PyIndex, z: &str) -> PyResult<PyBall> {
        self.fun(FunFactor::a(k.0.clone(), Arg::Z), z)
    }

    /// The iterated integral of a poset at `z`, or at 1 when `z` is omitted.
    #[pyo3(signature = (x, z = None))]
    fn poset_integral(&self, x: &PyPoset, z: Option<&str>) -> PyResult<PyBall> {
        match z {
            Some(z) => {
                let z = parse_rational(z).map_err(err)?;
                self.ball(poset::i_z(&x.0, &z, &self.0))
            }
            None => self.ball(poset::i_one(&x.0, &self.0)),
        }
    }

    /// Writes new constants to the cache file, if any.
    fn flush(&self) -> PyResult<()> {
        self.0.flush().map_err(err)
    }
}

/// Names of the identity families accepted by [`verify`].
#[pyfunction]
fn identities() -> Vec<&'static str> {
    Family::ALL.iter().map(|f| f.name()).collect()
}

/// Verifies a named identity; `params` maps parameter names to strings or
/// integers. Returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (identity, params, evaluator, z_grid = None, tol = None))]
fn verify<'py>(
    py: Python<'py>,
    identity: &str,
    params: &Bound<'py, PyDict>,
    evaluator: &PyEvaluator,
    z_grid: Option<&str>,
    tol: Option<f64>,
) -> PyResult<Bound<'py, PyAny>> {
    let family: Family = identity.parse().map_err(err)?;
    let mut text = Vec::new();
    for (k, v) in params.iter() {
        text.push((k.extract::<String>()?, v.str()?.to_string()));
    }
    let get = |name: &str| text.iter().find(|(k, _)| k == name).map(|(_, v)| v.clone());
    let id = family.build(&get).map_err(err)?;
    let zs = match z_grid {
        Some(g) => parse_grid(g).map_err(err)?,
        None => default_grid(),
    };
    let opts = VerifyOptions::new(zs, tol.unwrap_or_else(|| default_tolerance(family.level())));
    let report = py.detach(|| verify_core(&id, &evaluator.0, &opts)).map_err(err)?;
    from_json(py, &serde_json::to_value(&report).map_err(err)?)
}

/// Runs a suite (`level1`, `level2`, `combinatorics`, `posets`, `all`).
#[pyfunction]
#[pyo3(signature = (name, evaluator, max_weight = 5))]
fn run_suite<'py>(
    py: Python<'py>,
    name: &str,
    evaluator: &PyEvaluator,
    max_weight: u32,
) -> PyResult<Bound<'py, PyAny>> {
    let suite: SuiteName = name.parse().map_err(err)?;
    let cfg = SuiteConfig { max_weight, ..SuiteConfig::default() };
    let report = py.detach(|| run_suite_core(suite, &evaluator.0, &cfg));
    from_json(py, &serde_json::to_value(&report).map_err(err)?)
}

#[pymodule]
pub fn pyakzeta(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyIndex>()?;
    m.add_class::<PyPoset>()?;
    m.add_class::<PyBall>()?;
    m.add_class::<PyEvaluator>()?;
    m.add_function(wrap_pyfunction!(indices_of_weight, m)?)?;
    m.add_function(wrap_pyfunction!(shuffle, m)?)?;
    m.add_function(wrap_pyfunction!(word_dual, m)?)?;
    m.add_function(wrap_pyfunction!(identities, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
