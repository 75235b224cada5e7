//! Two-dimensional versus one-dimensional comparisons and the table sweeps.

use std::f64::consts::PI;

use crate::cost::{CostParams, Dimension};
use crate::error::{require_positive, Error, Result};
use crate::published::{
    self, RatioBlockRow, RatioCell, BLOCK_P, TABLE_10, TABLE_11, TABLE_11_WINDOW, TABLE_7, TABLE_8,
    TABLE_8_WINDOW, TABLE_9, TABLE_9_P, TABLE_9_R,
};
use crate::valley::{
    characterize_valley, find_minimum, settle_time, windowed_minimum, ValleyProfile,
    DEFAULT_SEARCH_WINDOW, T98_BAND,
};

/// Window used for the windowed variant of the ratio grid.
pub const RATIO_WINDOW: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioRow {
    pub r: f64,
    pub p_page: f64,
    pub min_1d: f64,
    pub min_2d: f64,
    /// `min_2d / min_1d`.
    pub ratio: f64,
    /// Window the minima were restricted to, if any.
    pub windowed: Option<f64>,
}

fn pair(r: f64, p_page: f64, lambda_p: f64) -> Result<(CostParams, CostParams)> {
    let one = CostParams::with_call_rate(Dimension::One, r, p_page, lambda_p)?;
    Ok((one, one.in_dimension(Dimension::Two)))
}

fn ratio_row(r: f64, p_page: f64, min_1d: f64, min_2d: f64, windowed: Option<f64>) -> RatioRow {
    RatioRow {
        r,
        p_page,
        min_1d,
        min_2d,
        ratio: min_2d / min_1d,
        windowed,
    }
}

/// Ratio of the two-dimensional to the one-dimensional cost minimum.
pub fn minima_ratio(r: f64, p_page: f64, lambda_p: f64) -> Result<RatioRow> {
    let (one, two) = pair(r, p_page, lambda_p)?;
    let m1 = find_minimum(&one, DEFAULT_SEARCH_WINDOW)?;
    let m2 = find_minimum(&two, DEFAULT_SEARCH_WINDOW)?;
    Ok(ratio_row(r, p_page, m1.value, m2.value, None))
}

/// As [`minima_ratio`], with both minima restricted to `(0, window]`.
pub fn windowed_minima_ratio(r: f64, p_page: f64, lambda_p: f64, window: f64) -> Result<RatioRow> {
    require_positive("window", window)?;
    let (one, two) = pair(r, p_page, lambda_p)?;
    let m1 = windowed_minimum(&one, window)?;
    let m2 = windowed_minimum(&two, window)?;
    Ok(ratio_row(r, p_page, m1.value, m2.value, Some(window)))
}

/// Ratio of the stable values, `π√r`. Independent of `P` and `λ_p`.
pub fn sv_ratio(r: f64) -> f64 {
    PI * r.sqrt()
}

/// The `r` at which both dimensions share a stable value, `1/π²`.
pub fn crossover_r() -> f64 {
    1.0 / (PI * PI)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValleySweepRow {
    pub r: f64,
    pub profile: ValleyProfile,
    pub published: Option<published::ValleyRow>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SettlingRow {
    pub p: f64,
    pub dim: Dimension,
    pub r: f64,
    pub t98: f64,
    pub published: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TminRow {
    pub p: f64,
    pub dim: Dimension,
    pub r: f64,
    pub t_min: f64,
    pub censored: bool,
    /// Printed value; `None` inside `Some` marks a censored cell.
    pub published: Option<Option<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioGridRow {
    pub full: RatioRow,
    pub windowed: RatioRow,
    pub published: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioBlockEntry {
    pub row: RatioRow,
    pub published: Option<RatioCell>,
}

/// Computed rows of one table, each annotated with the published value.
#[derive(Debug, Clone, PartialEq)]
pub enum Sweep {
    Valley {
        id: u32,
        p: f64,
        caption_p: Option<f64>,
        rows: Vec<ValleySweepRow>,
    },
    Settling(Vec<SettlingRow>),
    Tmin(Vec<TminRow>),
    RatioGrid(Vec<RatioGridRow>),
    RatioBlocks {
        id: u32,
        window: Option<f64>,
        rows: Vec<RatioBlockEntry>,
    },
}

/// One-dimensional valley profiles over a list of `r` at fixed `P`.
pub fn valley_sweep(p: f64, rs: &[f64]) -> Result<Vec<ValleySweepRow>> {
    rs.iter()
        .map(|&r| {
            let profile = characterize_valley(&CostParams::one_d(r, p)?)?;
            Ok(ValleySweepRow {
                r,
                profile,
                published: None,
            })
        })
        .collect()
}

/// Full and windowed minima ratios over an `r × P` grid, in row-major order.
pub fn ratio_grid(rs: &[f64], ps: &[f64], window: f64) -> Result<Vec<RatioGridRow>> {
    let mut out = Vec::with_capacity(rs.len() * ps.len());
    for &r in rs {
        for &p in ps {
            out.push(RatioGridRow {
                full: minima_ratio(r, p, 1.0)?,
                windowed: windowed_minima_ratio(r, p, 1.0, window)?,
                published: None,
            });
        }
    }
    Ok(out)
}

fn valley_table_sweep(id: u32) -> Result<Sweep> {
    let table = published::valley_table(id).ok_or(Error::UnknownTable(id))?;
    let rs: Vec<f64> = table.rows.iter().map(|row| row.r).collect();
    let mut rows = valley_sweep(table.p, &rs)?;
    for (row, pubrow) in rows.iter_mut().zip(table.rows) {
        row.published = Some(*pubrow);
    }
    Ok(Sweep::Valley {
        id,
        p: table.p,
        caption_p: table.caption_p,
        rows,
    })
}

fn settling_sweep() -> Result<Sweep> {
    TABLE_7
        .iter()
        .map(|cell| {
            let params = CostParams::new(cell.dim, cell.r, cell.p)?;
            Ok(SettlingRow {
                p: cell.p,
                dim: cell.dim,
                r: cell.r,
                t98: settle_time(&params, T98_BAND)?,
                published: Some(cell.t98),
            })
        })
        .collect::<Result<_>>()
        .map(Sweep::Settling)
}

fn tmin_sweep() -> Result<Sweep> {
    TABLE_8
        .iter()
        .map(|cell| {
            let params = CostParams::new(cell.dim, cell.r, cell.p)?;
            let m = find_minimum(&params, TABLE_8_WINDOW)?;
            Ok(TminRow {
                p: cell.p,
                dim: cell.dim,
                r: cell.r,
                t_min: m.t,
                censored: m.censored,
                published: Some(cell.t_min),
            })
        })
        .collect::<Result<_>>()
        .map(Sweep::Tmin)
}

fn table_9_sweep() -> Result<Sweep> {
    let mut rows = ratio_grid(&TABLE_9_R, &TABLE_9_P, RATIO_WINDOW)?;
    let printed = TABLE_9.iter().flatten();
    for (row, &value) in rows.iter_mut().zip(printed) {
        row.published = Some(value);
    }
    Ok(Sweep::RatioGrid(rows))
}

fn block_sweep(id: u32, table: &[RatioBlockRow], window: Option<f64>) -> Result<Sweep> {
    let mut rows = Vec::with_capacity(table.len() * BLOCK_P.len());
    for block in table {
        for (&p, cell) in BLOCK_P.iter().zip(block.cells) {
            let row = match window {
                Some(w) => windowed_minima_ratio(block.r, p, 1.0, w)?,
                None => minima_ratio(block.r, p, 1.0)?,
            };
            rows.push(RatioBlockEntry {
                row,
                published: Some(cell),
            });
        }
    }
    Ok(Sweep::RatioBlocks { id, window, rows })
}

/// Recomputes table `id` (1 through 11) on its published grid.
pub fn sweep(id: u32) -> Result<Sweep> {
    match id {
        1..=6 => valley_table_sweep(id),
        7 => settling_sweep(),
        8 => tmin_sweep(),
        9 => table_9_sweep(),
        10 => block_sweep(id, &TABLE_10, None),
        11 => block_sweep(id, &TABLE_11, Some(TABLE_11_WINDOW)),
        _ => Err(Error::UnknownTable(id)),
    }
}
