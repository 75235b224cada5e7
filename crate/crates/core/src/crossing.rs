//! Probability that a terminal crosses `N` Location Areas between two
//! consecutive Poisson calls.
//!
//! With `f` the Laplace-Stieltjes transform of the residence-time density at
//! the call rate and `x = t_r·λ_p`, every model follows the same shape:
//!
//! ```text
//! P(0) = 1 − (1 − f)/x
//! P(N) = (1 − f)²/x · f^(N−1),   N ≥ 1
//! ```
//!
//! The uniform model draws residence times on `[0, 2·t_r]` and uses
//! `f = (1 − e^{−2x})/(2x)` in both the `N = 0` and the `N ≥ 1` terms.

use std::fmt;
use std::str::FromStr;

use crate::error::{require_positive, Error, Result};

/// Smallest and largest accepted `t_r·λ_p`.
pub const MIN_LOAD: f64 = 1e-12;
pub const MAX_LOAD: f64 = 1e6;

pub const DEFAULT_N_MAX: usize = 50;

/// Bracket for [`equal_crossing_cmr`].
pub const CMR_SEARCH_RANGE: (f64, f64) = (1e-6, 1e3);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ResidenceKind {
    Exponential,
    Constant,
    /// Uniform on `[0, 2·t_r]`.
    Uniform,
}

impl ResidenceKind {
    pub const ALL: [ResidenceKind; 3] = [
        ResidenceKind::Exponential,
        ResidenceKind::Constant,
        ResidenceKind::Uniform,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ResidenceKind::Exponential => "exp",
            ResidenceKind::Constant => "const",
            ResidenceKind::Uniform => "uniform",
        }
    }

    /// Transform `f*(λ_p)` as a function of the load `x = t_r·λ_p`.
    pub fn transform(self, x: f64) -> f64 {
        match self {
            ResidenceKind::Exponential => 1.0 / (1.0 + x),
            ResidenceKind::Constant => (-x).exp(),
            ResidenceKind::Uniform => one_minus_exp_over(2.0 * x),
        }
    }

    /// `1 − f*(λ_p)`, evaluated without subtracting from one.
    fn transform_complement(self, x: f64) -> f64 {
        match self {
            ResidenceKind::Exponential => x / (1.0 + x),
            ResidenceKind::Constant => -(-x).exp_m1(),
            ResidenceKind::Uniform => complement_of_mean_exp(2.0 * x),
        }
    }

    fn p_zero(self, x: f64) -> f64 {
        match self {
            ResidenceKind::Exponential => x / (1.0 + x),
            // 1 − (1 − e^{−x})/x
            ResidenceKind::Constant => complement_of_mean_exp(x),
            // 1 − (1 − g(2x))/x  with  g(y) = (1 − e^{−y})/y
            ResidenceKind::Uniform => second_order_remainder(2.0 * x) / x,
        }
    }

    /// `P_cross(n)` for a validated load.
    pub(crate) fn probability_at(self, x: f64, n: u64) -> f64 {
        if n == 0 {
            return self.p_zero(x);
        }
        let c = self.transform_complement(x);
        let f = self.transform(x);
        c * c / x * pow_u64(f, n - 1)
    }

    /// Mass of all `N > n_max` for a validated load.
    pub(crate) fn tail_at(self, x: f64, n_max: u64) -> f64 {
        // Σ_{N>n_max} c²/x f^{N−1} = c/x · f^{n_max}
        self.transform_complement(x) / x * pow_u64(self.transform(x), n_max)
    }
}

impl fmt::Display for ResidenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ResidenceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exp" | "exponential" => Ok(ResidenceKind::Exponential),
            "const" | "constant" => Ok(ResidenceKind::Constant),
            "uniform" | "unif" => Ok(ResidenceKind::Uniform),
            other => Err(Error::invalid(
                "dist",
                format!("unknown distribution `{other}` (expected exp, const or uniform)"),
            )),
        }
    }
}

fn pow_u64(base: f64, exp: u64) -> f64 {
    match i32::try_from(exp) {
        Ok(e) => base.powi(e),
        Err(_) => base.powf(exp as f64),
    }
}

/// `(1 − e^{−y})/y`.
fn one_minus_exp_over(y: f64) -> f64 {
    if y < 1e-4 {
        // Σ (−y)^k/(k+1)!
        1.0 - y / 2.0 + y * y / 6.0 - y * y * y / 24.0 + y * y * y * y / 120.0
    } else {
        -(-y).exp_m1() / y
    }
}

/// `1 − (1 − e^{−y})/y`.
fn complement_of_mean_exp(y: f64) -> f64 {
    if y < 0.5 {
        alternating_tail(y, 1)
    } else {
        (y + (-y).exp_m1()) / y
    }
}

/// `y/2 − 1 + (1 − e^{−y})/y`, the remainder after the linear term.
fn second_order_remainder(y: f64) -> f64 {
    if y < 0.5 {
        alternating_tail(y, 2)
    } else {
        y / 2.0 - complement_of_mean_exp(y)
    }
}

/// `Σ_{k ≥ first} (−1)^{k−first} y^k/(k+1)!`, for small `y`.
fn alternating_tail(y: f64, first: u32) -> f64 {
    let mut term = 1.0f64;
    for k in 1..=first {
        term *= y / (k as f64 + 1.0);
    }
    let mut sum = term;
    for k in first + 1..first + 60 {
        term *= -y / (k as f64 + 1.0);
        sum += term;
        if term.abs() < 1e-3 * f64::EPSILON * sum {
            break;
        }
    }
    sum
}

/// Residence-time distribution in a Location Area.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidenceModel {
    kind: ResidenceKind,
    mean_residence: f64,
}

impl ResidenceModel {
    pub fn new(kind: ResidenceKind, mean_residence: f64) -> Result<Self> {
        require_positive("t_r", mean_residence)?;
        Ok(Self {
            kind,
            mean_residence,
        })
    }

    pub fn kind(&self) -> ResidenceKind {
        self.kind
    }

    /// Mean residence time `t_r`.
    pub fn mean_residence(&self) -> f64 {
        self.mean_residence
    }

    /// Dimensionless load `t_r·λ_p`, rejected outside the supported range.
    pub fn load(&self, call: &CallModel) -> Result<f64> {
        validated_load(self.mean_residence * call.rate())
    }
}

fn validated_load(x: f64) -> Result<f64> {
    if !x.is_finite() || !(MIN_LOAD..=MAX_LOAD).contains(&x) {
        return Err(Error::invalid(
            "t_r·λ_p",
            format!("{x} outside supported range [{MIN_LOAD:e}, {MAX_LOAD:e}]"),
        ));
    }
    Ok(x)
}

/// Poisson call arrivals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CallModel {
    rate: f64,
}

impl CallModel {
    pub fn new(rate: f64) -> Result<Self> {
        require_positive("lambda_p", rate)?;
        Ok(Self { rate })
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }
}

/// Call-to-mobility ratio: calls per mobility event.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Cmr(f64);

impl Cmr {
    pub fn new(value: f64) -> Result<Self> {
        require_positive("cmr", value)?;
        Ok(Cmr(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn of(model: &ResidenceModel, call: &CallModel) -> Result<Self> {
        Cmr::new(model.mean_residence * call.rate())
    }

    /// Model/call pair realizing this ratio with `t_r = cmr` and `λ_p = 1`.
    pub fn realize(self, kind: ResidenceKind) -> Result<(ResidenceModel, CallModel)> {
        Ok((ResidenceModel::new(kind, self.0)?, CallModel::new(1.0)?))
    }
}

/// `f*(λ_p)`: the transform of the residence density at the call rate.
pub fn lst_at_rate(model: &ResidenceModel, call: &CallModel) -> Result<f64> {
    let x = model.load(call)?;
    Ok(model.kind.transform(x))
}

pub fn crossing_probability(model: &ResidenceModel, call: &CallModel, n: u64) -> Result<f64> {
    let x = model.load(call)?;
    Ok(model.kind.probability_at(x, n))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossingDistribution {
    /// `P_cross(N)` for `N = 0..=n_max`.
    pub probs: Vec<f64>,
    /// Analytic mass of `N > n_max`.
    pub tail_mass: f64,
}

impl CrossingDistribution {
    pub fn n_max(&self) -> usize {
        self.probs.len() - 1
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum::<f64>() + self.tail_mass
    }
}

pub fn crossing_distribution(
    model: &ResidenceModel,
    call: &CallModel,
    n_max: usize,
) -> Result<CrossingDistribution> {
    if n_max < 1 {
        return Err(Error::invalid("n_max", "must be at least 1"));
    }
    let x = model.load(call)?;
    let kind = model.kind;
    let probs = (0..=n_max as u64)
        .map(|n| kind.probability_at(x, n))
        .collect();
    Ok(CrossingDistribution {
        probs,
        tail_mass: kind.tail_at(x, n_max as u64),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossingGap {
    pub p0: f64,
    pub p1: f64,
    /// `p0 / p1`.
    pub ratio: f64,
}

/// `P_cross(0)` against `P_cross(1)` at a given CMR.
pub fn p0_p1_gap(kind: ResidenceKind, cmr: Cmr) -> Result<CrossingGap> {
    let x = validated_load(cmr.value())?;
    let p0 = kind.probability_at(x, 0);
    let p1 = kind.probability_at(x, 1);
    Ok(CrossingGap {
        p0,
        p1,
        ratio: p0 / p1,
    })
}

/// CMR at which `P_cross(0) = P_cross(1)`, if one exists in [`CMR_SEARCH_RANGE`].
pub fn equal_crossing_cmr(kind: ResidenceKind) -> Option<Cmr> {
    let gap = |x: f64| kind.probability_at(x, 0) - kind.probability_at(x, 1);
    let (lo, hi) = CMR_SEARCH_RANGE;
    let root = crate::solve::bisect(gap, lo, hi, 1e-9, 200).ok()?;
    Cmr::new(root).ok()
}
