//! Mean Location Management cost rate of the timer-based update policy.
//!
//! Costs are normalized so one location update costs 1 and paging one
//! Location Area costs `P`. The timeout `t` is dimensionless.

use std::f64::consts::PI;
use std::fmt;

use crate::crossing::{CallModel, Cmr};
use crate::error::{require_positive, Error, Result};
use crate::special::diffusion_kernel;

/// Movement dimension of the terminal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dimension {
    One,
    Two,
}

impl Dimension {
    pub fn get(self) -> u32 {
        match self {
            Dimension::One => 1,
            Dimension::Two => 2,
        }
    }
}

impl TryFrom<u32> for Dimension {
    type Error = Error;

    fn try_from(n: u32) -> Result<Self> {
        match n {
            1 => Ok(Dimension::One),
            2 => Ok(Dimension::Two),
            _ => Err(Error::invalid(
                "dimension",
                format!("must be 1 or 2, got {n}"),
            )),
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.get())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostParams {
    pub dimension: Dimension,
    /// Mobility index: diffusion constant over call rate.
    pub r: f64,
    /// Paging cost per Location Area.
    pub paging_cost: f64,
    pub call_rate: f64,
}

impl CostParams {
    /// Parameters with the call rate normalized to one.
    pub fn new(dimension: Dimension, r: f64, paging_cost: f64) -> Result<Self> {
        Self::with_call_rate(dimension, r, paging_cost, 1.0)
    }

    pub fn with_call_rate(
        dimension: Dimension,
        r: f64,
        paging_cost: f64,
        call_rate: f64,
    ) -> Result<Self> {
        require_positive("r", r)?;
        require_positive("p", paging_cost)?;
        require_positive("lambda_p", call_rate)?;
        Ok(Self {
            dimension,
            r,
            paging_cost,
            call_rate,
        })
    }

    pub fn one_d(r: f64, paging_cost: f64) -> Result<Self> {
        Self::new(Dimension::One, r, paging_cost)
    }

    pub fn two_d(r: f64, paging_cost: f64) -> Result<Self> {
        Self::new(Dimension::Two, r, paging_cost)
    }

    /// Same mobility and paging cost in the other dimension.
    pub fn in_dimension(self, dimension: Dimension) -> Self {
        Self { dimension, ..self }
    }

    /// Cost rate at timeout `t`.
    pub fn cost(&self, t: f64) -> Result<f64> {
        match self.dimension {
            Dimension::One => cost_1d(self, t),
            Dimension::Two => cost_2d(self, t),
        }
    }

    pub fn stable_value(&self) -> f64 {
        stable_value(self)
    }
}

fn check_timeout(t: f64) -> Result<()> {
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::Domain(format!(
            "timeout must be finite and > 0, got {t}"
        )));
    }
    Ok(())
}

fn check_positive_cost(value: f64, params: &CostParams, t: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::Domain(format!(
            "non-positive cost {value} at t = {t} for {}D, r = {}, P = {}",
            params.dimension, params.r, params.paging_cost
        )))
    }
}

/// One-dimensional cost:
/// `λ_p/(1−e^{−t}) · (√r·P·[erf(√t) − 2√(t/π)e^{−t}] + e^{−t})`.
pub fn cost_1d(params: &CostParams, t: f64) -> Result<f64> {
    if params.dimension != Dimension::One {
        return Err(Error::Domain("cost_1d called with 2D parameters".into()));
    }
    check_timeout(t)?;
    let paging = params.r.sqrt() * params.paging_cost * diffusion_kernel(t);
    let value = params.call_rate * (paging + (-t).exp()) / -(-t).exp_m1();
    check_positive_cost(value, params, t)
}

/// Two-dimensional approximation:
/// `λ_p·r·P·π + λ_p·e^{−t}/(1−e^{−t})·(1 − r·π·P·t)`.
pub fn cost_2d(params: &CostParams, t: f64) -> Result<f64> {
    if params.dimension != Dimension::Two {
        return Err(Error::Domain("cost_2d called with 1D parameters".into()));
    }
    check_timeout(t)?;
    let rpp = params.r * PI * params.paging_cost;
    // e^{−t}/(1 − e^{−t}) = 1/(e^t − 1)
    let value = params.call_rate * (rpp + (1.0 - rpp * t) / t.exp_m1());
    check_positive_cost(value, params, t)
}

/// Limit of the cost rate as the timeout grows without bound.
pub fn stable_value(params: &CostParams) -> f64 {
    match params.dimension {
        Dimension::One => params.r.sqrt() * params.call_rate * params.paging_cost,
        Dimension::Two => params.call_rate * params.r * params.paging_cost * PI,
    }
}

/// `r = Dif / λ_p`.
pub fn mobility_index(diffusion: f64, call: &CallModel) -> Result<f64> {
    require_positive("dif", diffusion)?;
    Ok(diffusion / call.rate())
}

/// The cost model's call-to-mobility ratio, `1/r`.
pub fn cmr_of(params: &CostParams) -> Cmr {
    Cmr::new(1.0 / params.r).expect("r validated positive")
}

/// Share of a Location Area's resources spent on paging in `n` dimensions.
pub fn paging_resource_fraction(n: u32) -> f64 {
    3f64.powi(-(n as i32))
}

/// Cost rate sampled on a logarithmic timeout grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CostCurve {
    pub params: CostParams,
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub sv: f64,
}

/// `steps` logarithmically spaced points from `start` to `end` inclusive.
pub fn log_grid(start: f64, end: f64, steps: usize) -> Vec<f64> {
    let (ls, le) = (start.ln(), end.ln());
    let span = (steps - 1) as f64;
    (0..steps)
        .map(|i| match i {
            0 => start,
            _ if i == steps - 1 => end,
            _ => (ls + (le - ls) * i as f64 / span).exp(),
        })
        .collect()
}

pub fn cost_curve(
    params: &CostParams,
    t_start: f64,
    t_end: f64,
    steps: usize,
) -> Result<CostCurve> {
    if !(t_start.is_finite() && t_end.is_finite()) || t_start <= 0.0 || t_end <= t_start {
        return Err(Error::invalid(
            "t_start/t_end",
            format!("need 0 < t_start < t_end, got {t_start}, {t_end}"),
        ));
    }
    if steps < 2 {
        return Err(Error::invalid("steps", "need at least 2 grid points"));
    }
    let times = log_grid(t_start, t_end, steps);
    let values = times
        .iter()
        .map(|&t| params.cost(t))
        .collect::<Result<Vec<_>>>()?;
    Ok(CostCurve {
        params: *params,
        times,
        values,
        sv: stable_value(params),
    })
}
