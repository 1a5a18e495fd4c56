// SPDX-License-Identifier: Apache-2.0

//! Command-line front end for `gaussnet-core`.
//!
//! Subcommands:
//!
//! * `simulate` - time series of δ, EoF and the invariants for one vertex pair
//! * `table1` - saturated rescaled EoF of complete graphs at strong coupling
//! * `sweep` - maximum EoF as a function of the coupling constant
//! * `classes` - distance classes of vertex pairs

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use gaussnet_core::graph::{Graph, GraphSpec};

pub mod commands;
pub mod error;
pub mod report;
pub mod svg;

pub use error::CliError;
use report::{emit, Format};

#[derive(Debug, Parser)]
#[command(name = "gaussnet", version, about = "Entanglement dynamics of oscillator networks on graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Time series of the pair entanglement.
    Simulate(SimulateArgs),
    /// Saturated maximum of the rescaled EoF on complete graphs.
    Table1(Table1Args),
    /// Maximum EoF over a range of coupling constants.
    Sweep(SweepArgs),
    /// List (distance, shortest-path count) classes of vertex pairs.
    Classes(ClassesArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file (stdout if omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct PairArgs {
    /// Explicit vertex pair `i,j`.
    #[arg(long, value_parser = parse_pair, conflicts_with = "class")]
    pub pair: Option<(usize, usize)>,
    /// Distance class `distance:d[:count]`; the lexicographically smallest
    /// pair of the class is used.
    #[arg(long)]
    pub class: Option<ClassSelector>,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    /// Graph spec: two | complete:N | meanfield:N | path:N | cycle:N | cube | octahedron | file:PATH
    #[arg(long)]
    pub graph: GraphSpec,
    /// Coupling constant.
    #[arg(long = "c", default_value_t = 5.0)]
    pub coupling: f64,
    #[command(flatten)]
    pub pair: PairArgs,
    #[arg(long)]
    pub tmax: f64,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Plot (N-1)·E instead of E in the SVG.
    #[arg(long)]
    pub rescaled: bool,
    /// Also write an SVG plot.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Recompute every EoF value through the series-exponential oracle.
    #[arg(long, hide = true)]
    pub verify: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct Table1Args {
    #[arg(long, value_delimiter = ',', default_value = "3,4,5,6,7,8,9,10,15,20,30")]
    pub sizes: Vec<usize>,
    /// Coupling standing in for c → ∞.
    #[arg(long = "c", default_value_t = 1e6)]
    pub coupling: f64,
    /// Grid points per oscillation period before refinement.
    #[arg(long, default_value_t = 400)]
    pub samples: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub graph: GraphSpec,
    /// Coupling range `start:stop:points`, endpoints included.
    #[arg(long = "c-range")]
    pub c_range: CouplingRange,
    #[command(flatten)]
    pub pair: PairArgs,
    /// Search window [0, tmax]; defaults to one period on complete graphs.
    #[arg(long)]
    pub tmax: Option<f64>,
    /// Minimum grid points in the search window.
    #[arg(long, default_value_t = 400)]
    pub samples: usize,
    /// Plot (N-1)·E instead of E in the SVG.
    #[arg(long)]
    pub rescaled: bool,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[arg(long, hide = true)]
    pub verify: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ClassesArgs {
    #[arg(long)]
    pub graph: GraphSpec,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `i,j`, got `{s}`"))?;
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("invalid vertex `{x}`"));
    Ok((parse(a)?, parse(b)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassSelector {
    pub distance: usize,
    pub count: Option<u64>,
}

impl FromStr for ClassSelector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("expected `distance:d[:count]`, got `{s}`");
        let mut parts = s.split(':');
        if parts.next() != Some("distance") {
            return Err(bad());
        }
        let distance = parts.next().and_then(|d| d.parse().ok()).ok_or_else(bad)?;
        let count = match parts.next() {
            Some(k) => Some(k.parse().map_err(|_| bad())?),
            None => None,
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(ClassSelector { distance, count })
    }
}

impl std::fmt::Display for ClassSelector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.count {
            Some(k) => write!(f, "distance:{}:{k}", self.distance),
            None => write!(f, "distance:{}", self.distance),
        }
    }
}

impl PairArgs {
    /// Explicit pair, class representative, or by default the smallest
    /// adjacent pair.
    pub fn resolve(&self, g: &Graph) -> Result<(usize, usize), CliError> {
        match (self.pair, self.class) {
            (Some(p), _) => Ok(p),
            (None, Some(c)) => Ok(g.class_representative(c.distance, c.count)?),
            (None, None) => Ok(g.class_representative(1, None)?),
        }
    }

    fn describe(&self) -> String {
        match (self.pair, self.class) {
            (Some((i, j)), _) => format!("pair {i},{j}"),
            (None, Some(c)) => format!("class {c}"),
            (None, None) => "default (smallest adjacent pair)".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingRange {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl CouplingRange {
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.start];
        }
        let last = self.points - 1;
        (0..self.points)
            .map(|k| {
                if k == last {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * k as f64 / last as f64
                }
            })
            .collect()
    }
}

impl FromStr for CouplingRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let fields: Vec<&str> = s.split(':').collect();
        let [a, b, n] = fields[..] else {
            return Err(format!("expected `start:stop:points`, got `{s}`"));
        };
        let num = |x: &str| x.parse::<f64>().map_err(|_| format!("invalid number `{x}`"));
        let (start, stop) = (num(a)?, num(b)?);
        let points = n.parse::<usize>().map_err(|_| format!("invalid point count `{n}`"))?;
        if !(start.is_finite() && stop.is_finite()) || start < 0.0 {
            return Err(format!("range must be finite with start >= 0, got `{s}`"));
        }
        if points == 0 || stop < start || (points == 1 && stop != start) {
            return Err(format!("empty coupling range `{s}`"));
        }
        Ok(CouplingRange { start, stop, points })
    }
}

impl std::fmt::Display for CouplingRange {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.points)
    }
}

/// Runs one subcommand and writes its artifacts.
pub fn run(cli: Cli) -> Result<(), CliError> {
    let (outcome, output, svg_path) = match &cli.command {
        Command::Simulate(a) => (commands::simulate(a)?, &a.output, a.svg.as_ref()),
        Command::Table1(a) => (commands::table1(a)?, &a.output, None),
        Command::Sweep(a) => (commands::sweep(a)?, &a.output, a.svg.as_ref()),
        Command::Classes(a) => (commands::classes(a)?, &a.output, None),
    };
    let commands::Outcome {
        mut report,
        chart,
        verification,
    } = outcome;

    let out_name = output
        .out
        .as_ref()
        .map_or_else(|| "stdout".to_string(), |p| p.display().to_string());
    report.manifest.artifacts.push(out_name);
    if let (Some(path), Some(chart)) = (svg_path, &chart) {
        report.manifest.artifacts.push(path.display().to_string());
        std::fs::write(path, chart.render())?;
    }
    emit(&report.render(output.format), output.out.as_deref())?;

    if let Some(v) = verification {
        eprintln!(
            "verify: max |eof(closed form) - eof(series exponential)| = {:e} over {} points",
            v.max_deviation, v.points
        );
        if v.max_deviation >= commands::VERIFY_TOL {
            return Err(CliError::Verification {
                deviation: v.max_deviation,
                tolerance: commands::VERIFY_TOL,
            });
        }
    }
    Ok(())
}
