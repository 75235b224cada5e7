//! Builders for every report the command line can emit.

use lmcost_core::comparative::{minima_ratio, sweep, windowed_minima_ratio, Sweep};
use lmcost_core::cost::{cost_curve, CostParams, Dimension};
use lmcost_core::crossing::{crossing_distribution, CallModel, ResidenceKind, ResidenceModel};
use lmcost_core::error::{Error, Result};
use lmcost_core::mc::{compare_estimates, simulate_crossings, McConfig};
use lmcost_core::valley::characterize_valley;

use crate::output::{format_sig, Cell, Format, Sheet, PRECISION};

/// Logarithmic timeout grid for curve output.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub start: f64,
    pub end: f64,
    pub steps: usize,
}

pub const DEFAULT_GRID: TimeGrid = TimeGrid {
    start: 0.01,
    end: 10.0,
    steps: 200,
};

fn models(kind: ResidenceKind, cmr: f64, lambda: f64) -> Result<(ResidenceModel, CallModel)> {
    let call = CallModel::new(lambda)?;
    Ok((ResidenceModel::new(kind, cmr / lambda)?, call))
}

pub fn probs(
    kind: ResidenceKind,
    cmr: f64,
    lambda: f64,
    n_max: usize,
    format: Format,
) -> Result<Sheet> {
    let (model, call) = models(kind, cmr, lambda)?;
    let dist = crossing_distribution(&model, &call, n_max)?;
    let mut s = Sheet::new(format);
    s.comment(format!(
        "dist={kind} cmr={} lambda={}",
        format_sig(cmr, PRECISION),
        format_sig(lambda, PRECISION)
    ));
    s.header(&["n", "p_cross"]);
    for (n, &p) in dist.probs.iter().enumerate() {
        s.row(vec![n.into(), p.into()]);
    }
    s.comment(format!(
        "tail_mass={} total={}",
        format_sig(dist.tail_mass, PRECISION),
        format_sig(dist.total(), 12)
    ));
    Ok(s)
}

fn params(dim: Dimension, r: f64, p: f64, lambda: f64) -> Result<CostParams> {
    CostParams::with_call_rate(dim, r, p, lambda)
}

pub fn valley(dim: Dimension, r: f64, p: f64, lambda: f64, format: Format) -> Result<Sheet> {
    let v = characterize_valley(&params(dim, r, p, lambda)?)?;
    let mut s = Sheet::new(format);
    s.header(&[
        "dim", "r", "p", "sv", "tmin", "minimum", "depth", "p_m", "t90", "t98", "censored",
    ]);
    s.row(vec![
        dim.get().into(),
        r.into(),
        p.into(),
        v.sv.into(),
        v.t_min.into(),
        v.minimum.into(),
        v.depth.into(),
        v.p_m.into(),
        v.t_90.into(),
        v.t_98.into(),
        v.censored_t_min.into(),
    ]);
    Ok(s)
}

fn curve_rows(s: &mut Sheet, params: &CostParams, grid: TimeGrid) -> Result<()> {
    let c = cost_curve(params, grid.start, grid.end, grid.steps)?;
    for (&t, &v) in c.times.iter().zip(&c.values) {
        s.row(vec![
            params.dimension.get().into(),
            params.r.into(),
            params.paging_cost.into(),
            t.into(),
            v.into(),
        ]);
    }
    Ok(())
}

const CURVE_HEADER: [&str; 5] = ["dim", "r", "p", "t", "cost"];

pub fn curve(
    dim: Dimension,
    r: f64,
    p: f64,
    lambda: f64,
    grid: TimeGrid,
    format: Format,
) -> Result<Sheet> {
    let params = params(dim, r, p, lambda)?;
    let mut s = Sheet::new(format);
    s.comment(format!(
        "sv={}",
        format_sig(params.stable_value(), PRECISION)
    ));
    s.header(&CURVE_HEADER);
    curve_rows(&mut s, &params, grid)?;
    Ok(s)
}

pub fn ratio(r: f64, p: f64, lambda: f64, window: Option<f64>, format: Format) -> Result<Sheet> {
    let row = match window {
        Some(w) => windowed_minima_ratio(r, p, lambda, w)?,
        None => minima_ratio(r, p, lambda)?,
    };
    let mut s = Sheet::new(format);
    s.header(&["r", "p", "min2d", "min1d", "ratio", "window"]);
    s.row(vec![
        r.into(),
        p.into(),
        row.min_2d.into(),
        row.min_1d.into(),
        row.ratio.into(),
        row.windowed.into(),
    ]);
    Ok(s)
}

pub struct SimulateArgs {
    pub kind: ResidenceKind,
    pub cmr: f64,
    pub lambda: f64,
    pub calls: usize,
    pub seed: u64,
    pub n_max: usize,
}

pub fn simulate(args: &SimulateArgs, format: Format) -> Result<Sheet> {
    let (model, call) = models(args.kind, args.cmr, args.lambda)?;
    let mut cfg = McConfig::new(model, call, args.calls, args.seed);
    cfg.n_max = args.n_max;
    let est = simulate_crossings(&cfg)?;
    let cmp = compare_estimates(&est, &model, &call)?;
    let mut s = Sheet::new(format);
    s.comment(format!(
        "dist={} cmr={} calls={} warmup={} seed={} generator=xoshiro256++",
        args.kind,
        format_sig(args.cmr, PRECISION),
        args.calls,
        cfg.warmup_calls,
        args.seed
    ));
    s.header(&["n", "freq", "stderr", "analytic", "z"]);
    for n in 0..=args.n_max {
        s.row(vec![
            n.into(),
            est.freq[n].into(),
            est.stderr[n].into(),
            cmp.expected[n].into(),
            cmp.z[n].into(),
        ]);
    }
    s.comment(format!(
        "tail_freq={} chi_square={} dof={} p_value={}",
        format_sig(est.tail_freq, PRECISION),
        format_sig(cmp.chi_square, PRECISION),
        cmp.dof,
        format_sig(cmp.p_value, PRECISION)
    ));
    Ok(s)
}

fn paper_cell(v: Option<f64>) -> Cell {
    v.into()
}

pub fn table(id: u32, format: Format) -> Result<Sheet> {
    let mut s = Sheet::new(format);
    match sweep(id)? {
        Sweep::Valley {
            id,
            p,
            caption_p,
            rows,
        } => {
            s.comment(format!("table {id}: one-dimensional valley, P={p}"));
            if caption_p.is_some() {
                s.comment(format!("caption-anomaly: values consistent with P={p}"));
            }
            s.header(&[
                "r",
                "sv",
                "minimum",
                "depth",
                "p_m",
                "t90",
                "paper_sv",
                "paper_minimum",
                "paper_depth",
                "paper_p_m",
                "paper_t90",
            ]);
            for row in rows {
                let v = row.profile;
                let want = row.published;
                s.row(vec![
                    row.r.into(),
                    v.sv.into(),
                    v.minimum.into(),
                    v.depth.into(),
                    v.p_m.into(),
                    v.t_90.into(),
                    paper_cell(want.map(|w| w.sv)),
                    paper_cell(want.map(|w| w.minimum)),
                    paper_cell(want.map(|w| w.depth)),
                    paper_cell(want.map(|w| w.p_m)),
                    paper_cell(want.and_then(|w| w.t90)),
                ]);
            }
        }
        Sweep::Settling(rows) => {
            s.comment("table 7: settling time into the ±2% band around SV");
            s.header(&["p", "dim", "r", "t98", "paper_value"]);
            for row in rows {
                s.row(vec![
                    row.p.into(),
                    row.dim.get().into(),
                    row.r.into(),
                    row.t98.into(),
                    paper_cell(row.published),
                ]);
            }
        }
        Sweep::Tmin(rows) => {
            s.comment("table 8: timeout at the cost minimum, searched on (0, 10]");
            s.header(&["p", "dim", "r", "tmin", "censored", "paper_value"]);
            for row in rows {
                let paper = match row.published {
                    Some(Some(v)) => Cell::Num(v),
                    Some(None) => Cell::Text(">10".into()),
                    None => Cell::Empty,
                };
                s.row(vec![
                    row.p.into(),
                    row.dim.get().into(),
                    row.r.into(),
                    row.t_min.into(),
                    row.censored.into(),
                    paper,
                ]);
            }
        }
        Sweep::RatioGrid(rows) => {
            s.comment(
                "table 9: ratio of 2D to 1D cost minima; ratio_w10 restricts both to t <= 10",
            );
            s.header(&["r", "p", "ratio", "ratio_w10", "paper_value"]);
            for row in rows {
                s.row(vec![
                    row.full.r.into(),
                    row.full.p_page.into(),
                    row.full.ratio.into(),
                    row.windowed.ratio.into(),
                    paper_cell(row.published),
                ]);
            }
        }
        Sweep::RatioBlocks { id, window, rows } => {
            match window {
                Some(w) => s.comment(format!("table {id}: minima restricted to t <= {w}")),
                None => s.comment(format!("table {id}: unrestricted minima")),
            }
            s.header(&[
                "r",
                "p",
                "min2d",
                "min1d",
                "ratio",
                "paper_min2d",
                "paper_min1d",
                "paper_value",
            ]);
            for e in rows {
                s.row(vec![
                    e.row.r.into(),
                    e.row.p_page.into(),
                    e.row.min_2d.into(),
                    e.row.min_1d.into(),
                    e.row.ratio.into(),
                    paper_cell(e.published.map(|c| c.min_2d)),
                    paper_cell(e.published.map(|c| c.min_1d)),
                    paper_cell(e.published.map(|c| c.ratio)),
                ]);
            }
        }
    }
    Ok(s)
}

const FIGURE_3_R: [f64; 9] = [
    150.0, 500.0, 1000.0, 2500.0, 5000.0, 7500.0, 10000.0, 15000.0, 50000.0,
];
const FIGURE_5_R: [f64; 3] = [14.0, 1400.0, 14000.0];
const FIGURE_7_R: [f64; 3] = [1.4, 5.0, 8.0];

/// Timeout grid a figure uses when none is given.
pub fn figure_grid(id: u32) -> TimeGrid {
    match id {
        6 => TimeGrid {
            start: 0.001,
            end: 1.0,
            steps: 200,
        },
        _ => DEFAULT_GRID,
    }
}

fn both_dimensions(s: &mut Sheet, rs: &[f64], p: f64, grid: TimeGrid) -> Result<()> {
    s.header(&CURVE_HEADER);
    for dim in [Dimension::One, Dimension::Two] {
        for &r in rs {
            curve_rows(s, &CostParams::new(dim, r, p)?, grid)?;
        }
    }
    Ok(())
}

pub fn figure(id: u32, grid: TimeGrid, n_max: usize, format: Format) -> Result<Sheet> {
    let mut s = Sheet::new(format);
    match id {
        1 | 2 => {
            let cmr = if id == 1 { 0.1 } else { 2.0 };
            s.comment(format!("figure {id}: crossing probabilities at CMR={cmr}"));
            let dists = ResidenceKind::ALL
                .iter()
                .map(|&k| {
                    let (model, call) = models(k, cmr, 1.0)?;
                    crossing_distribution(&model, &call, n_max)
                })
                .collect::<Result<Vec<_>>>()?;
            s.header(&["n", "p_exp", "p_const", "p_uniform"]);
            for n in 0..=n_max {
                let mut cells = vec![Cell::from(n)];
                cells.extend(dists.iter().map(|d| Cell::Num(d.probs[n])));
                s.row(cells);
            }
        }
        3 => {
            s.comment("figure 3: one-dimensional cost, P=0.2");
            s.header(&CURVE_HEADER);
            for r in FIGURE_3_R {
                curve_rows(&mut s, &CostParams::one_d(r, 0.2)?, grid)?;
            }
        }
        4 => {
            let (r, p) = (10_000.0, 0.1);
            let v = characterize_valley(&CostParams::one_d(r, p)?)?;
            s.comment(format!("figure 4: valley metrics, 1D r={r} P={p}"));
            s.header(&["metric", "value"]);
            let metrics: [(&str, Option<f64>); 7] = [
                ("sv", Some(v.sv)),
                ("tmin", Some(v.t_min)),
                ("minimum", Some(v.minimum)),
                ("depth", Some(v.depth)),
                ("p_m", Some(v.p_m)),
                ("t90", v.t_90),
                ("t98", v.t_98),
            ];
            for (name, value) in metrics {
                s.row(vec![name.into(), value.into()]);
            }
        }
        5 | 6 => {
            s.comment(format!("figure {id}: 1D and 2D cost, P=0.1"));
            both_dimensions(&mut s, &FIGURE_5_R, 0.1, grid)?;
        }
        7 => {
            s.comment("figure 7: 1D and 2D cost at low r, P=0.1");
            both_dimensions(&mut s, &FIGURE_7_R, 0.1, grid)?;
        }
        _ => return Err(Error::UnknownFigure(id)),
    }
    Ok(s)
}
