//! Python bindings for the location management cost toolkit.

use lmcost_core::comparative;
use lmcost_core::cost::{self, Dimension};
use lmcost_core::crossing::{self, CallModel, ResidenceKind, ResidenceModel};
use lmcost_core::error::Error;
use lmcost_core::mc::{self, McConfig};
use lmcost_core::valley::{self, DEFAULT_SEARCH_WINDOW};
use pyo3::exceptions::{PyArithmeticError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Domain(_) => PyArithmeticError::new_err(e.to_string()),
        Error::NumericalFailure(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn models(kind: &str, cmr: f64, lambda_p: f64) -> PyResult<(ResidenceModel, CallModel)> {
    let kind: ResidenceKind = kind.parse().map_err(to_py)?;
    let call = CallModel::new(lambda_p).map_err(to_py)?;
    let model = ResidenceModel::new(kind, cmr / lambda_p).map_err(to_py)?;
    Ok((model, call))
}

/// Cost-model parameters for one mobility regime.
#[pyclass(frozen, skip_from_py_object, name = "CostParams")]
#[derive(Clone, Copy)]
struct PyCostParams(cost::CostParams);

#[pymethods]
impl PyCostParams {
    #[new]
    #[pyo3(signature = (dim, r, p, call_rate=1.0))]
    fn new(dim: u32, r: f64, p: f64, call_rate: f64) -> PyResult<Self> {
        let dim = Dimension::try_from(dim).map_err(to_py)?;
        cost::CostParams::with_call_rate(dim, r, p, call_rate)
            .map(Self)
            .map_err(to_py)
    }

    #[getter]
    fn dim(&self) -> u32 {
        self.0.dimension.get()
    }

    #[getter]
    fn r(&self) -> f64 {
        self.0.r
    }

    #[getter]
    fn p(&self) -> f64 {
        self.0.paging_cost
    }

    #[getter]
    fn call_rate(&self) -> f64 {
        self.0.call_rate
    }

    /// Cost rate at timeout `t`.
    fn cost(&self, t: f64) -> PyResult<f64> {
        self.0.cost(t).map_err(to_py)
    }

    fn stable_value(&self) -> f64 {
        self.0.stable_value()
    }

    /// `(times, costs)` on a logarithmic grid.
    fn curve(&self, t_start: f64, t_end: f64, steps: usize) -> PyResult<(Vec<f64>, Vec<f64>)> {
        let c = cost::cost_curve(&self.0, t_start, t_end, steps).map_err(to_py)?;
        Ok((c.times, c.values))
    }

    fn __repr__(&self) -> String {
        format!(
            "CostParams(dim={}, r={}, p={}, call_rate={})",
            self.0.dimension, self.0.r, self.0.paging_cost, self.0.call_rate
        )
    }
}

#[pyclass(frozen, get_all, name = "ValleyProfile")]
struct PyValleyProfile {
    sv: f64,
    t_min: f64,
    minimum: f64,
    depth: f64,
    p_m: f64,
    t_90: Option<f64>,
    t_98: Option<f64>,
    censored_t_min: bool,
}

#[pymethods]
impl PyValleyProfile {
    fn has_valley(&self) -> bool {
        self.depth > 0.0
    }

    fn __repr__(&self) -> String {
        format!(
            "ValleyProfile(sv={}, t_min={}, minimum={}, p_m={})",
            self.sv, self.t_min, self.minimum, self.p_m
        )
    }
}

#[pyclass(frozen, get_all, name = "RatioRow")]
struct PyRatioRow {
    r: f64,
    p: f64,
    min_1d: f64,
    min_2d: f64,
    ratio: f64,
    window: Option<f64>,
}

#[pyclass(frozen, get_all, name = "Simulation")]
struct PySimulation {
    counts: Vec<u64>,
    freq: Vec<f64>,
    stderr: Vec<f64>,
    tail_freq: f64,
    expected: Vec<f64>,
    z: Vec<Option<f64>>,
    chi_square: f64,
    dof: usize,
    p_value: f64,
}

#[pyfunction]
#[pyo3(signature = (kind, cmr, n, lambda_p=1.0))]
fn crossing_probability(kind: &str, cmr: f64, n: u64, lambda_p: f64) -> PyResult<f64> {
    let (model, call) = models(kind, cmr, lambda_p)?;
    crossing::crossing_probability(&model, &call, n).map_err(to_py)
}

/// `(probs, tail_mass)` for `N = 0..=n_max`.
#[pyfunction]
#[pyo3(signature = (kind, cmr, n_max=20, lambda_p=1.0))]
fn crossing_distribution(
    kind: &str,
    cmr: f64,
    n_max: usize,
    lambda_p: f64,
) -> PyResult<(Vec<f64>, f64)> {
    let (model, call) = models(kind, cmr, lambda_p)?;
    let d = crossing::crossing_distribution(&model, &call, n_max).map_err(to_py)?;
    Ok((d.probs, d.tail_mass))
}

#[pyfunction]
fn characterize_valley(params: &PyCostParams) -> PyResult<PyValleyProfile> {
    let v = valley::characterize_valley(&params.0).map_err(to_py)?;
    Ok(PyValleyProfile {
        sv: v.sv,
        t_min: v.t_min,
        minimum: v.minimum,
        depth: v.depth,
        p_m: v.p_m,
        t_90: v.t_90,
        t_98: v.t_98,
        censored_t_min: v.censored_t_min,
    })
}

/// `(t, value, censored)` of the minimum on `(0, t_max]`.
#[pyfunction]
#[pyo3(signature = (params, t_max=DEFAULT_SEARCH_WINDOW))]
fn find_minimum(params: &PyCostParams, t_max: f64) -> PyResult<(f64, f64, bool)> {
    let m = valley::find_minimum(&params.0, t_max).map_err(to_py)?;
    Ok((m.t, m.value, m.censored))
}

#[pyfunction]
#[pyo3(signature = (r, p, lambda_p=1.0, window=None))]
fn minima_ratio(r: f64, p: f64, lambda_p: f64, window: Option<f64>) -> PyResult<PyRatioRow> {
    let row = match window {
        Some(w) => comparative::windowed_minima_ratio(r, p, lambda_p, w),
        None => comparative::minima_ratio(r, p, lambda_p),
    }
    .map_err(to_py)?;
    Ok(PyRatioRow {
        r: row.r,
        p: row.p_page,
        min_1d: row.min_1d,
        min_2d: row.min_2d,
        ratio: row.ratio,
        window: row.windowed,
    })
}

#[pyfunction]
fn sv_ratio(r: f64) -> f64 {
    comparative::sv_ratio(r)
}

#[pyfunction]
fn crossover_r() -> f64 {
    comparative::crossover_r()
}

/// Simulates crossings between calls and compares them with the closed form.
#[pyfunction]
#[pyo3(signature = (kind, cmr, n_calls=1_000_000, seed=42, n_max=20, lambda_p=1.0))]
fn simulate(
    py: Python<'_>,
    kind: &str,
    cmr: f64,
    n_calls: usize,
    seed: u64,
    n_max: usize,
    lambda_p: f64,
) -> PyResult<PySimulation> {
    let (model, call) = models(kind, cmr, lambda_p)?;
    let mut cfg = McConfig::new(model, call, n_calls, seed);
    cfg.n_max = n_max;
    let (est, cmp) = py
        .detach(|| {
            let est = mc::simulate_crossings(&cfg)?;
            let cmp = mc::compare_estimates(&est, &model, &call)?;
            Ok((est, cmp))
        })
        .map_err(to_py)?;
    Ok(PySimulation {
        counts: est.counts,
        freq: est.freq,
        stderr: est.stderr,
        tail_freq: est.tail_freq,
        expected: cmp.expected,
        z: cmp.z,
        chi_square: cmp.chi_square,
        dof: cmp.dof,
        p_value: cmp.p_value,
    })
}

#[pymodule]
fn lmcost(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCostParams>()?;
    m.add_class::<PyValleyProfile>()?;
    m.add_class::<PyRatioRow>()?;
    m.add_class::<PySimulation>()?;
    m.add_function(wrap_pyfunction!(crossing_probability, m)?)?;
    m.add_function(wrap_pyfunction!(crossing_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(characterize_valley, m)?)?;
    m.add_function(wrap_pyfunction!(find_minimum, m)?)?;
    m.add_function(wrap_pyfunction!(minima_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(sv_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(crossover_r, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    Ok(())
}
