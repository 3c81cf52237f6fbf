//! Python bindings. Elements and sets cross the boundary as names: a set is
//! a list of names, a valuation a list of names in time order.

use omql_core::connectives::{imp_sets, odot_sets};
use omql_core::reconstruct::{self as rc, ReconstructionResult};
use omql_core::verify::universe::{DEFAULT_SAMPLE, DEFAULT_SEED, DEFAULT_VALUATION_CAP};
use omql_core::verify::{
    self, AdjointnessUniverse, Direction, DynamicPair, LawReport, Source, Status,
};
use omql_core::{
    demo, fixtures, format, order, tense as core_tense, validate_omp, Comparison, OmpPoset,
    OmqlError, SetValuation, Subset, TenseOp, Valuation,
};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(
    omql,
    OmqlException,
    PyValueError,
    "Raised for any engine error."
);

fn err(e: OmqlError) -> PyErr {
    OmqlException::new_err(e.to_string())
}

fn parse<T: std::str::FromStr<Err = OmqlError>>(s: &str) -> PyResult<T> {
    s.parse().map_err(err)
}

/// A single name or a list of names.
#[derive(FromPyObject)]
pub enum Names {
    One(String),
    Many(Vec<String>),
}

#[pyclass(frozen, name = "Poset", module = "omql")]
pub struct Poset {
    pub inner: OmpPoset,
}

impl Poset {
    fn set(&self, names: &Names) -> PyResult<Subset> {
        let s = match names {
            Names::One(n) => self.inner.subset([n.as_str()]),
            Names::Many(v) => self.inner.subset(v.iter().map(String::as_str)),
        }
        .map_err(err)?;
        if s.is_empty() {
            return Err(OmqlException::new_err("empty set argument"));
        }
        Ok(s)
    }

    fn valuation(&self, frame: &TimeFrame, values: &[String]) -> PyResult<Valuation> {
        let names: Vec<&str> = values.iter().map(String::as_str).collect();
        let q = Valuation::from_names(&self.inner, &names).map_err(err)?;
        q.check(&self.inner, frame.inner.len()).map_err(err)?;
        Ok(q)
    }

    fn cells(&self, x: &SetValuation) -> Vec<Vec<String>> {
        x.values()
            .iter()
            .map(|s| self.inner.subset_names(s))
            .collect()
    }
}

#[pymethods]
impl Poset {
    /// `fig1` or `bool1` .. `bool6`.
    #[staticmethod]
    pub fn builtin(name: &str) -> PyResult<Self> {
        fixtures::builtin(name)
            .map(|inner| Poset { inner })
            .ok_or_else(|| OmqlException::new_err(format!("unknown built-in poset `{name}`")))
    }

    #[staticmethod]
    #[pyo3(signature = (src, validate = true))]
    pub fn parse(src: &str, validate: bool) -> PyResult<Self> {
        let inner = if validate {
            format::parse_omp(src)
        } else {
            format::parse_poset(src)
        };
        inner.map(|inner| Poset { inner }).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (path, validate = true))]
    pub fn load(path: &str, validate: bool) -> PyResult<Self> {
        format::load_poset(std::path::Path::new(path), validate)
            .map(|inner| Poset { inner })
            .map_err(err)
    }

    #[getter]
    pub fn names(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    pub fn __len__(&self) -> usize {
        self.inner.len()
    }

    pub fn __repr__(&self) -> String {
        format!("Poset({} elements)", self.inner.len())
    }

    pub fn leq(&self, a: &str, b: &str) -> PyResult<bool> {
        let (a, b) = (
            self.inner.element(a).map_err(err)?,
            self.inner.element(b).map_err(err)?,
        );
        Ok(self.inner.leq(a, b))
    }

    /// The orthocomplement a′.
    pub fn inv(&self, a: &str) -> PyResult<String> {
        let a = self.inner.element(a).map_err(err)?;
        Ok(self.inner.name(self.inner.inv(a)).to_string())
    }

    pub fn odot(&self, lhs: Names, rhs: Names) -> PyResult<Vec<String>> {
        let r = odot_sets(&self.inner, &self.set(&lhs)?, &self.set(&rhs)?).map_err(err)?;
        Ok(self.inner.subset_names(&r))
    }

    pub fn imp(&self, lhs: Names, rhs: Names) -> PyResult<Vec<String>> {
        let r = imp_sets(&self.inner, &self.set(&lhs)?, &self.set(&rhs)?).map_err(err)?;
        Ok(self.inner.subset_names(&r))
    }

    /// `kind` is one of le, le1, le2, sq, eq1, eq2, eq.
    pub fn compare(&self, kind: &str, lhs: Names, rhs: Names) -> PyResult<bool> {
        let cmp: Comparison = parse(kind)?;
        order::compare_subsets(&self.inner, cmp, &self.set(&lhs)?, &self.set(&rhs)?).map_err(err)
    }

    /// One line per axiom.
    pub fn validate(&self) -> Vec<String> {
        validate_omp(&self.inner).lines(&self.inner)
    }

    pub fn is_valid(&self) -> bool {
        validate_omp(&self.inner).is_valid()
    }

    pub fn cover_pairs(&self) -> Vec<(String, String)> {
        format::cover_pairs(&self.inner)
    }
}

#[pyclass(frozen, name = "TimeFrame", module = "omql")]
pub struct TimeFrame {
    pub inner: omql_core::TimeFrame,
}

#[pymethods]
impl TimeFrame {
    #[staticmethod]
    pub fn chain_le(m: usize) -> Self {
        TimeFrame {
            inner: omql_core::TimeFrame::chain_le(m),
        }
    }

    #[staticmethod]
    pub fn chain_lt(m: usize) -> Self {
        TimeFrame {
            inner: omql_core::TimeFrame::chain_lt(m),
        }
    }

    #[staticmethod]
    pub fn total(m: usize) -> Self {
        TimeFrame {
            inner: omql_core::TimeFrame::total(m),
        }
    }

    /// Named points and related index pairs (s, t).
    #[staticmethod]
    pub fn from_pairs(names: Vec<String>, pairs: Vec<(usize, usize)>) -> PyResult<Self> {
        omql_core::TimeFrame::from_pairs(names, &pairs)
            .map(|inner| TimeFrame { inner })
            .map_err(err)
    }

    #[staticmethod]
    pub fn parse(src: &str) -> PyResult<Self> {
        format::parse_frame(src)
            .map(|inner| TimeFrame { inner })
            .map_err(err)
    }

    #[getter]
    pub fn names(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    #[getter]
    pub fn matrix(&self) -> Vec<Vec<bool>> {
        self.inner.matrix().to_vec()
    }

    pub fn __len__(&self) -> usize {
        self.inner.len()
    }

    pub fn is_serial(&self) -> bool {
        self.inner.is_serial()
    }

    pub fn is_reflexive(&self) -> bool {
        self.inner.is_reflexive()
    }
}

#[pyclass(frozen, name = "Report", module = "omql")]
pub struct Report {
    #[pyo3(get)]
    pub law: String,
    /// pass, fail or vacuous.
    #[pyo3(get)]
    pub status: String,
    #[pyo3(get)]
    pub verdict: String,
    #[pyo3(get)]
    pub coverage: String,
    #[pyo3(get)]
    pub checked: u64,
    #[pyo3(get)]
    pub witness: Option<String>,
    #[pyo3(get)]
    pub line: String,
}

fn status_name(s: Status) -> String {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Vacuous => "vacuous",
    }
    .to_string()
}

impl From<&LawReport> for Report {
    fn from(r: &LawReport) -> Self {
        Report {
            law: r.law.clone(),
            status: status_name(r.status),
            verdict: r.verdict().to_string(),
            coverage: r.coverage.to_string(),
            checked: r.checked,
            witness: r.witness.as_ref().map(|w| w.to_string()),
            line: r.line(),
        }
    }
}

#[pymethods]
impl Report {
    #[getter]
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    pub fn __repr__(&self) -> String {
        self.line.clone()
    }
}

#[pyclass(frozen, name = "Reconstruction", module = "omql")]
pub struct Reconstruction {
    #[pyo3(get)]
    pub mode: String,
    #[pyo3(get)]
    pub coverage: String,
    #[pyo3(get)]
    pub definitive: bool,
    #[pyo3(get)]
    pub relation: Vec<Vec<bool>>,
    #[pyo3(get)]
    pub contains_original: bool,
    /// Pairs added beyond the original relation, as time names.
    #[pyo3(get)]
    pub extra: Vec<(String, String)>,
    /// (claim, holds) per ledger family.
    #[pyo3(get)]
    pub ledger: Vec<(String, bool)>,
}

impl From<&ReconstructionResult> for Reconstruction {
    fn from(r: &ReconstructionResult) -> Self {
        let names = r.frame.names();
        Reconstruction {
            mode: r.mode.to_string(),
            coverage: r.coverage.to_string(),
            definitive: r.definitive(),
            relation: r.relation().to_vec(),
            contains_original: r.contains_original,
            extra: r
                .extra
                .iter()
                .map(|&(s, t)| (names[s].clone(), names[t].clone()))
                .collect(),
            ledger: r
                .ledger
                .iter()
                .map(|e| (e.claim.clone(), e.holds()))
                .collect(),
        }
    }
}

fn source(exhaustive: bool, sample: Option<usize>, seed: Option<u64>) -> Source {
    if exhaustive {
        Source::Exhaustive
    } else if sample.is_some() || seed.is_some() {
        Source::Sampled {
            count: sample.unwrap_or(DEFAULT_SAMPLE),
            seed: seed.unwrap_or(DEFAULT_SEED),
        }
    } else {
        Source::Auto
    }
}

fn reports(rs: &[LawReport]) -> Vec<Report> {
    rs.iter().map(Report::from).collect()
}

/// X(q) per time point, each value a list of names.
#[pyfunction]
pub fn tense(
    poset: &Poset,
    frame: &TimeFrame,
    op: &str,
    values: Vec<String>,
) -> PyResult<Vec<Vec<String>>> {
    let q = poset.valuation(frame, &values)?;
    let x = core_tense::tense(&poset.inner, &frame.inner, parse(op)?, &q).map_err(err)?;
    Ok(poset.cells(&x))
}

/// (outer * inner)(q) = outer(φ(inner(q))).
#[pyfunction]
pub fn star(
    poset: &Poset,
    frame: &TimeFrame,
    outer: &str,
    inner: &str,
    values: Vec<String>,
) -> PyResult<Vec<Vec<String>>> {
    let q = poset.valuation(frame, &values)?;
    let x = core_tense::star(&poset.inner, &frame.inner, parse(outer)?, parse(inner)?, &q)
        .map_err(err)?;
    Ok(poset.cells(&x))
}

#[pyfunction]
#[pyo3(signature = (poset, frame, pair, exhaustive = false, sample = None, seed = None, cap = DEFAULT_VALUATION_CAP as u64))]
pub fn check_dynamic_pair(
    poset: &Poset,
    frame: &TimeFrame,
    pair: &str,
    exhaustive: bool,
    sample: Option<usize>,
    seed: Option<u64>,
    cap: u64,
) -> PyResult<Vec<Report>> {
    let pair: DynamicPair = parse(pair)?;
    let rs = verify::check_dynamic_pair(
        pair,
        &poset.inner,
        &frame.inner,
        source(exhaustive, sample, seed),
        cap as u128,
    )
    .map_err(err)?;
    Ok(reports(&rs))
}

#[pyfunction]
#[pyo3(signature = (poset, frame, exhaustive = false, sample = None, seed = None, cap = DEFAULT_VALUATION_CAP as u64))]
pub fn check_laws(
    poset: &Poset,
    frame: &TimeFrame,
    exhaustive: bool,
    sample: Option<usize>,
    seed: Option<u64>,
    cap: u64,
) -> PyResult<Vec<Report>> {
    let rs = verify::check_composition_laws(
        &poset.inner,
        &frame.inner,
        &verify::composition_laws(),
        source(exhaustive, sample, seed),
        cap as u128,
    )
    .map_err(err)?;
    Ok(reports(&rs))
}

/// Adjointness, divisibility and units; `universe` is auto, elements or subsets.
#[pyfunction]
#[pyo3(signature = (poset, universe = "auto"))]
pub fn check_adjointness(poset: &Poset, universe: &str) -> PyResult<Vec<Report>> {
    let universe = match universe {
        "auto" => AdjointnessUniverse::Auto,
        "elements" => AdjointnessUniverse::Elements,
        "subsets" => AdjointnessUniverse::Subsets,
        other => {
            return Err(OmqlException::new_err(format!(
                "unknown universe `{other}`"
            )))
        }
    };
    let rs = [
        verify::check_adjointness_lemma(&poset.inner, universe),
        verify::check_divisibility_sweep(&poset.inner),
        verify::check_units(&poset.inner),
    ]
    .into_iter()
    .collect::<Result<Vec<_>, _>>()
    .map_err(err)?;
    Ok(reports(&rs))
}

/// Returns (status, hypothesis, conclusion) for one direction and (X, Y, Z).
#[pyfunction]
#[pyo3(signature = (poset, frame, direction, ops, exhaustive = false, sample = None, seed = None, cap = DEFAULT_VALUATION_CAP as u64))]
#[allow(clippy::too_many_arguments)]
pub fn check_theorem14(
    poset: &Poset,
    frame: &TimeFrame,
    direction: &str,
    ops: (String, String, String),
    exhaustive: bool,
    sample: Option<usize>,
    seed: Option<u64>,
    cap: u64,
) -> PyResult<(String, Report, Report)> {
    let dir: Direction = parse(direction)?;
    let ops = (parse(&ops.0)?, parse(&ops.1)?, parse(&ops.2)?);
    let uni = verify::theorem14_universe(
        &poset.inner,
        frame.inner.len(),
        source(exhaustive, sample, seed),
        cap as u128,
    )
    .map_err(err)?;
    let r = verify::check_theorem14(&poset.inner, &frame.inner, dir, ops, &uni).map_err(err)?;
    Ok((
        status_name(r.status()),
        Report::from(&r.hypothesis),
        Report::from(&r.conclusion),
    ))
}

/// `mode` is star or bar. Without `sample` the quantifiers are exhaustive.
#[pyfunction]
#[pyo3(signature = (poset, frame, mode, sample = None, seed = None, cap = DEFAULT_VALUATION_CAP as u64))]
pub fn reconstruct(
    poset: &Poset,
    frame: &TimeFrame,
    mode: &str,
    sample: Option<usize>,
    seed: Option<u64>,
    cap: u64,
) -> PyResult<Reconstruction> {
    let src = source(false, sample, seed);
    let r = match parse::<rc::Mode>(mode)? {
        rc::Mode::Star => rc::build_r_star(&poset.inner, &frame.inner, src, cap as u128),
        rc::Mode::Bar => rc::build_r_bar(&poset.inner, &frame.inner, src, cap as u128),
    }
    .map_err(err)?;
    Ok(Reconstruction::from(&r))
}

/// The worked example's table as text.
#[pyfunction]
pub fn example1() -> PyResult<String> {
    demo::example1(&fixtures::fig1())
        .map(|e| e.render_table())
        .map_err(err)
}

/// Tense operator names, for convenience.
#[pyfunction]
pub fn tense_ops() -> Vec<String> {
    [TenseOp::P, TenseOp::F, TenseOp::H, TenseOp::G]
        .iter()
        .map(|o| o.to_string())
        .collect()
}

#[pymodule]
fn omql(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Poset>()?;
    m.add_class::<TimeFrame>()?;
    m.add_class::<Report>()?;
    m.add_class::<Reconstruction>()?;
    m.add("OmqlError", m.py().get_type::<OmqlException>())?;
    m.add_function(wrap_pyfunction!(tense, m)?)?;
    m.add_function(wrap_pyfunction!(star, m)?)?;
    m.add_function(wrap_pyfunction!(check_dynamic_pair, m)?)?;
    m.add_function(wrap_pyfunction!(check_laws, m)?)?;
    m.add_function(wrap_pyfunction!(check_adjointness, m)?)?;
    m.add_function(wrap_pyfunction!(check_theorem14, m)?)?;
    m.add_function(wrap_pyfunction!(reconstruct, m)?)?;
    m.add_function(wrap_pyfunction!(example1, m)?)?;
    m.add_function(wrap_pyfunction!(tense_ops, m)?)?;
    Ok(())
}
