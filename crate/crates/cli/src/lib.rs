//! `lmcost`: command-line reports for the timer-based location management
//! cost toolkit. Data goes to the output stream (or `--out`), diagnostics to
//! the error stream.

pub mod output;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lmcost_core::cost::Dimension;
use lmcost_core::crossing::ResidenceKind;
use lmcost_core::error::Error;

use output::{Format, Sheet};
use report::{SimulateArgs, TimeGrid, DEFAULT_GRID};

pub const EXIT_OK: u8 = 0;
pub const EXIT_IO: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "lmcost",
    version,
    about = "Timer-based location management cost reports"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,

    /// Write data to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Tsv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Probability of crossing N Location Areas between two calls.
    #[command(allow_negative_numbers = true)]
    Probs {
        #[arg(long, value_parser = parse_dist)]
        dist: ResidenceKind,
        #[arg(long)]
        cmr: f64,
        #[arg(long, default_value_t = 20)]
        nmax: usize,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
    },
    /// Valley metrics of one cost curve.
    #[command(allow_negative_numbers = true)]
    Valley(CostArgs),
    /// Cost rate on a logarithmic timeout grid.
    #[command(allow_negative_numbers = true)]
    Curve {
        #[command(flatten)]
        cost: CostArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Ratio of the 2D to the 1D cost minimum.
    #[command(allow_negative_numbers = true)]
    Ratio {
        #[arg(long)]
        r: f64,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        /// Restrict both minima to timeouts up to this value.
        #[arg(long)]
        window: Option<f64>,
    },
    /// Monte Carlo estimate of the crossing distribution.
    #[command(allow_negative_numbers = true)]
    Simulate {
        #[arg(long, value_parser = parse_dist)]
        dist: ResidenceKind,
        #[arg(long)]
        cmr: f64,
        #[arg(long, default_value_t = 1_000_000)]
        calls: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        nmax: usize,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
    },
    /// Recompute a published table (1 to 11) next to its printed values.
    #[command(allow_negative_numbers = true)]
    Table {
        #[arg(long)]
        id: u32,
    },
    /// Data behind a published figure (1 to 7).
    #[command(allow_negative_numbers = true)]
    Figure {
        #[arg(long)]
        id: u32,
        #[arg(long, default_value_t = 20)]
        nmax: usize,
        #[command(flatten)]
        grid: GridArgs,
    },
}

#[derive(Debug, Args)]
struct CostArgs {
    #[arg(long, value_parser = parse_dim)]
    dim: Dimension,
    #[arg(long)]
    r: f64,
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
}

#[derive(Debug, Args)]
struct GridArgs {
    #[arg(long)]
    t_start: Option<f64>,
    #[arg(long)]
    t_end: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
}

impl GridArgs {
    fn resolve(&self, default: TimeGrid) -> TimeGrid {
        TimeGrid {
            start: self.t_start.unwrap_or(default.start),
            end: self.t_end.unwrap_or(default.end),
            steps: self.steps.unwrap_or(default.steps),
        }
    }
}

fn parse_dist(s: &str) -> Result<ResidenceKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_dim(s: &str) -> Result<Dimension, String> {
    let n: u32 = s
        .parse()
        .map_err(|_| format!("expected 1 or 2, got `{s}`"))?;
    Dimension::try_from(n).map_err(|e| e.to_string())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidParameter { .. }
        | Error::UnknownTable(_)
        | Error::UnknownFigure(_)
        | Error::Mismatch(_) => EXIT_USAGE,
        Error::Domain(_) | Error::NumericalFailure(_) => EXIT_NUMERICAL,
    }
}

fn build(cli: &Cli) -> Result<Sheet, Error> {
    let format = match cli.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Tsv => Format::Tsv,
    };
    match &cli.command {
        Command::Probs {
            dist,
            cmr,
            nmax,
            lambda,
        } => report::probs(*dist, *cmr, *lambda, *nmax, format),
        Command::Valley(c) => report::valley(c.dim, c.r, c.p, c.lambda, format),
        Command::Curve { cost: c, grid } => report::curve(
            c.dim,
            c.r,
            c.p,
            c.lambda,
            grid.resolve(DEFAULT_GRID),
            format,
        ),
        Command::Ratio {
            r,
            p,
            lambda,
            window,
        } => report::ratio(*r, *p, *lambda, *window, format),
        Command::Simulate {
            dist,
            cmr,
            calls,
            seed,
            nmax,
            lambda,
        } => {
            let args = SimulateArgs {
                kind: *dist,
                cmr: *cmr,
                lambda: *lambda,
                calls: *calls,
                seed: *seed,
                n_max: *nmax,
            };
            report::simulate(&args, format)
        }
        Command::Table { id } => report::table(*id, format),
        Command::Figure { id, nmax, grid } => {
            report::figure(*id, grid.resolve(report::figure_grid(*id)), *nmax, format)
        }
    }
}

/// Parses `argv`, runs one subcommand and returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                EXIT_USAGE
            } else {
                // --help and --version
                let _ = write!(out, "{rendered}");
                EXIT_OK
            };
        }
    };
    let sheet = match build(&cli) {
        Ok(sheet) => sheet,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    let text = sheet.into_string();
    let written = match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => out.write_all(text.as_bytes()).and_then(|_| out.flush()),
    };
    match written {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: cannot write output: {e}");
            EXIT_IO
        }
    }
}
