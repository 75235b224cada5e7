//! Characterization of the valley in a cost curve: where the minimum sits,
//! how deep it is, and how long the curve takes to recover.

use crate::cost::{log_grid, CostParams};
use crate::error::{Error, Result};
use crate::solve::{bisect, golden_section};

/// Default right edge of the minimum search.
pub const DEFAULT_SEARCH_WINDOW: f64 = 50.0;
/// Right edge for crossing and settling searches.
pub const HORIZON: f64 = 200.0;
/// `depth/sv` at or below this is treated as "no valley".
pub const VALLEY_THRESHOLD: f64 = 1e-9;
pub const T90_LEVEL: f64 = 0.9;
pub const T98_BAND: f64 = 0.02;

const SCAN_POINTS: usize = 4000;
// coarse grid starts this far below the window edge
const SCAN_DECADES: f64 = 1e-7;
const SETTLE_POINTS: usize = 20_001;
const SETTLE_START: f64 = 1e-4;
const MAX_ITER: usize = 200;
const TIE_TOLERANCE: f64 = 1e-12;

/// Result of a minimum search on `(0, t_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub t: f64,
    pub value: f64,
    /// The curve was still falling at `t_max`; `t` and `value` are the boundary.
    pub censored: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValleyProfile {
    pub sv: f64,
    pub t_min: f64,
    pub minimum: f64,
    pub depth: f64,
    /// Depth as a percentage of the stable value.
    pub p_m: f64,
    pub t_90: Option<f64>,
    pub t_98: Option<f64>,
    pub censored_t_min: bool,
}

impl ValleyProfile {
    pub fn has_valley(&self) -> bool {
        self.depth > 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowedMinimum {
    pub t: f64,
    pub value: f64,
    /// Minimum sits at the window edge: the curve is still falling there.
    pub at_boundary: bool,
}

fn eval(params: &CostParams) -> impl Fn(f64) -> f64 + '_ {
    move |t| params.cost(t).unwrap_or(f64::INFINITY)
}

struct Scan {
    grid: Vec<f64>,
    best: usize,
}

fn scan(params: &CostParams, t_max: f64) -> Result<Scan> {
    if !t_max.is_finite() || t_max <= 0.0 {
        return Err(Error::invalid(
            "t_max",
            format!("must be finite and > 0, got {t_max}"),
        ));
    }
    let grid = log_grid(t_max * SCAN_DECADES, t_max, SCAN_POINTS);
    let mut best = 0;
    let mut best_value = f64::INFINITY;
    for (i, &t) in grid.iter().enumerate() {
        let v = params.cost(t)?;
        // earliest of near-equal minima wins
        if v < best_value * (1.0 - TIE_TOLERANCE) {
            best = i;
            best_value = v;
        }
    }
    if best == 0 {
        return Err(Error::NumericalFailure(format!(
            "cost minimum lies below t = {:e}",
            grid[0]
        )));
    }
    Ok(Scan { grid, best })
}

fn refine(params: &CostParams, lo: f64, hi: f64) -> Result<(f64, f64)> {
    let tol = 1e-6 * hi.min(1.0);
    golden_section(eval(params), lo, hi, tol, MAX_ITER)
}

/// Global minimum of the cost rate on `(0, t_max]`.
///
/// A log grid brackets the minimum and golden-section search refines it.
/// When the grid minimum is the right boundary the result is censored.
pub fn find_minimum(params: &CostParams, t_max: f64) -> Result<Minimum> {
    let Scan { grid, best } = scan(params, t_max)?;
    let last = grid.len() - 1;
    if best == last {
        return Ok(Minimum {
            t: t_max,
            value: params.cost(t_max)?,
            censored: true,
        });
    }
    let (t, value) = refine(params, grid[best - 1], grid[best + 1])?;
    Ok(Minimum {
        t,
        value,
        censored: false,
    })
}

/// Minimum over `(0, window]`, which may sit on the window edge.
pub fn windowed_minimum(params: &CostParams, window: f64) -> Result<WindowedMinimum> {
    let Scan { grid, best } = scan(params, window)?;
    let last = grid.len() - 1;
    if best < last {
        let (t, value) = refine(params, grid[best - 1], grid[best + 1])?;
        return Ok(WindowedMinimum {
            t,
            value,
            at_boundary: false,
        });
    }
    let edge = params.cost(window)?;
    let (t, value) = refine(params, grid[last - 1], window)?;
    if value < edge && window - t > 1e-6 * window {
        Ok(WindowedMinimum {
            t,
            value,
            at_boundary: false,
        })
    } else {
        Ok(WindowedMinimum {
            t: window,
            value: edge,
            at_boundary: true,
        })
    }
}

/// Time after the minimum at which the cost climbs back to `level·sv`.
///
/// `None` when the curve never dips below `level·sv`.
pub fn rising_crossing(params: &CostParams, level: f64) -> Result<Option<f64>> {
    let min = find_minimum(params, DEFAULT_SEARCH_WINDOW)?;
    crossing_after(params, &min, level)
}

fn crossing_after(params: &CostParams, min: &Minimum, level: f64) -> Result<Option<f64>> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::invalid(
            "q",
            format!("must lie in (0, 1), got {level}"),
        ));
    }
    let target = level * params.stable_value();
    if min.value >= target {
        return Ok(None);
    }
    let f = eval(params);
    if f(HORIZON) < target {
        return Err(Error::NumericalFailure(format!(
            "cost does not recover to {level}·SV before t = {HORIZON}"
        )));
    }
    bisect(|t| f(t) - target, min.t, HORIZON, 1e-9, MAX_ITER).map(Some)
}

/// Earliest timeout after which the cost stays within `±band·sv`.
pub fn settle_time(params: &CostParams, band: f64) -> Result<f64> {
    if !(band > 0.0 && band < 1.0) {
        return Err(Error::invalid(
            "epsilon",
            format!("must lie in (0, 1), got {band}"),
        ));
    }
    let sv = params.stable_value();
    let limit = band * sv;
    let outside = |t: f64| (params.cost(t).unwrap_or(f64::INFINITY) - sv).abs() - limit;
    let grid = log_grid(SETTLE_START, HORIZON, SETTLE_POINTS);
    let last_out = grid.iter().rposition(|&t| outside(t) > 0.0);
    match last_out {
        None => Ok(grid[0]),
        Some(i) if i == grid.len() - 1 => Err(Error::NumericalFailure(format!(
            "cost has not settled within ±{band}·SV by t = {HORIZON}"
        ))),
        Some(i) => bisect(outside, grid[i], grid[i + 1], 1e-10, MAX_ITER),
    }
}

pub fn characterize_valley(params: &CostParams) -> Result<ValleyProfile> {
    let min = find_minimum(params, DEFAULT_SEARCH_WINDOW)?;
    let sv = params.stable_value();
    let raw_depth = sv - min.value;
    let has_valley = raw_depth / sv > VALLEY_THRESHOLD;
    let depth = if has_valley { raw_depth } else { 0.0 };
    let t_90 = if has_valley {
        crossing_after(params, &min, T90_LEVEL)?
    } else {
        None
    };
    let t_98 = match settle_time(params, T98_BAND) {
        Ok(t) => Some(t),
        Err(Error::NumericalFailure(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(ValleyProfile {
        sv,
        t_min: min.t,
        minimum: min.value,
        depth,
        p_m: depth / sv * 100.0,
        t_90,
        t_98,
        censored_t_min: min.censored,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::Dimension;

    fn one(r: f64, p: f64) -> CostParams {
        CostParams::one_d(r, p).unwrap()
    }

    fn two(r: f64, p: f64) -> CostParams {
        CostParams::two_d(r, p).unwrap()
    }

    #[test]
    fn reference_valley() {
        let v = characterize_valley(&one(10_000.0, 0.1)).unwrap();
        assert!((v.sv - 10.0).abs() < 1e-12);
        assert!((v.minimum - 6.577).abs() < 5e-4, "{}", v.minimum);
        assert!((v.depth - 3.423).abs() < 5e-4);
        assert!((v.p_m - 34.23).abs() < 5e-3);
        assert!((v.t_90.unwrap() - 2.3485).abs() < 0.01);
        assert!(!v.censored_t_min);
    }

    #[test]
    fn shallow_valley_has_no_t90() {
        let v = characterize_valley(&one(150.0, 0.1)).unwrap();
        assert!(v.minimum > 0.9 * v.sv);
        assert!(v.t_90.is_none());
        assert!((v.minimum - 1.194).abs() < 1e-3);
        assert_eq!(rising_crossing(&one(500.0, 0.1), 0.9).unwrap(), None);
    }

    #[test]
    fn very_shallow_valley_is_still_detected() {
        let v = characterize_valley(&one(1.5, 0.3)).unwrap();
        assert!(v.has_valley());
        assert!(v.depth < 1e-4 && v.depth > 0.0);
        assert!(v.t_90.is_none());
    }

    #[test]
    fn minimum_locations() {
        let m = find_minimum(&one(14_000.0, 0.9), DEFAULT_SEARCH_WINDOW).unwrap();
        assert!((m.t - 0.09).abs() < 0.01, "{}", m.t);
        let m = find_minimum(&two(14_000.0, 0.9), DEFAULT_SEARCH_WINDOW).unwrap();
        assert!((m.t - 0.007).abs() < 0.001, "{}", m.t);
        let m = find_minimum(&one(14.0, 0.1), 10.0).unwrap();
        assert!(m.censored);
        assert_eq!(m.t, 10.0);
    }

    #[test]
    fn crossing_examples() {
        let t = rising_crossing(&one(1000.0, 0.1), 0.9).unwrap().unwrap();
        assert!((t - 1.9388).abs() < 1e-3, "{t}");
        for p in [0.1, 0.5, 0.9] {
            let t = rising_crossing(&two(14_000.0, p), 0.9).unwrap().unwrap();
            assert!((t - 3.6153).abs() < 1e-3, "{t}");
        }
        assert!(rising_crossing(&one(1000.0, 0.1), 1.0).is_err());
        assert!(rising_crossing(&one(1000.0, 0.1), 0.0).is_err());
    }

    #[test]
    fn settling_examples() {
        let t = settle_time(&one(1400.0, 0.5), T98_BAND).unwrap();
        assert!((t - 4.344).abs() / 4.344 < 0.05, "{t}");
        let t = settle_time(&two(14.0, 0.1), T98_BAND).unwrap();
        assert!((t - 5.596).abs() / 5.596 < 0.01, "{t}");
        // approaches from above: no valley inside the band
        let t = settle_time(&one(14.0, 0.1), T98_BAND).unwrap();
        assert!((t - 4.08).abs() / 4.08 < 0.05, "{t}");
        assert!(settle_time(&one(14.0, 0.1), 1.5).is_err());
    }

    #[test]
    fn settled_curve_stays_in_band() {
        for params in [one(1400.0, 0.5), two(14.0, 0.1), one(14.0, 0.1)] {
            let t98 = settle_time(&params, T98_BAND).unwrap();
            let sv = params.stable_value();
            for t in log_grid(t98 * (1.0 + 1e-9), HORIZON, 5000) {
                let v = params.cost(t).unwrap();
                assert!((v - sv).abs() <= T98_BAND * sv * (1.0 + 1e-9));
            }
        }
    }

    #[test]
    fn windowed_examples() {
        let w = windowed_minimum(&one(0.14, 0.1), 10.0).unwrap();
        assert!(w.at_boundary);
        assert_eq!(w.t, 10.0);
        assert!((w.value - 0.038).abs() / 0.038 < 0.03, "{}", w.value);
        let w = windowed_minimum(&two(0.14, 0.3), 10.0).unwrap();
        assert!((w.value - 0.13).abs() / 0.13 < 0.03, "{}", w.value);
        let full = find_minimum(&one(10_000.0, 0.1), DEFAULT_SEARCH_WINDOW).unwrap();
        let w = windowed_minimum(&one(10_000.0, 0.1), 10.0).unwrap();
        assert!(!w.at_boundary);
        assert!((w.value - full.value).abs() < 1e-12);
        assert!((w.value - 6.577).abs() < 5e-4);
    }

    #[test]
    fn profile_invariants() {
        for dim in [Dimension::One, Dimension::Two] {
            for r in [1.4, 14.0, 1400.0, 14_000.0] {
                for p in [0.1, 0.5, 0.9] {
                    let params = CostParams::new(dim, r, p).unwrap();
                    let v = characterize_valley(&params).unwrap();
                    assert!(v.depth >= 0.0 && v.p_m >= 0.0 && v.p_m < 100.0);
                    if let Some(t90) = v.t_90 {
                        assert!(v.minimum < 0.9 * v.sv && t90 > v.t_min);
                    } else {
                        assert!(!v.has_valley() || v.minimum >= 0.9 * v.sv);
                    }
                    assert!(v.t_98.is_some());
                }
            }
        }
    }

    #[test]
    fn bad_window() {
        assert!(find_minimum(&one(14.0, 0.1), 0.0).is_err());
        assert!(windowed_minimum(&one(14.0, 0.1), f64::NAN).is_err());
    }
}
