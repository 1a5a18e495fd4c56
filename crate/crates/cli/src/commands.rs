// SPDX-License-Identifier: Apache-2.0

use gaussnet_core::dynamics::{self, PairModel, SimConfig, TimeGrid};
use gaussnet_core::entanglement::{self, max_entanglement, trajectory, MaxEntanglement};
use gaussnet_core::graph::Graph;
use gaussnet_core::oracle;
use rayon::prelude::*;

use crate::error::CliError;
use crate::report::{format_float, Cell, Report, RunManifest};
use crate::svg::{LineChart, Series};
use crate::{ClassesArgs, SimulateArgs, SweepArgs, Table1Args};

/// Largest tolerated EoF difference between closed form and oracle.
pub const VERIFY_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verification {
    pub max_deviation: f64,
    pub points: usize,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub chart: Option<LineChart>,
    pub verification: Option<Verification>,
}

fn oracle_eof(potential: &nalgebra::DMatrix<f64>, t: f64, i: usize, j: usize) -> Result<f64, CliError> {
    let m = oracle::pair_covariance_numeric(potential, t, i, j)?;
    Ok(entanglement::evaluate(&m)?.eof.eof)
}

fn verify(g: &Graph, c: f64, i: usize, j: usize, samples: &[(f64, f64)]) -> Result<Verification, CliError> {
    let v = dynamics::potential(g, c)?;
    let deviations = samples
        .par_iter()
        .map(|&(t, e)| Ok((oracle_eof(&v, t, i, j)? - e).abs()))
        .collect::<Result<Vec<f64>, CliError>>()?;
    Ok(Verification {
        max_deviation: deviations.into_iter().fold(0.0, f64::max),
        points: samples.len(),
    })
}

pub fn simulate(args: &SimulateArgs) -> Result<Outcome, CliError> {
    let graph = args.graph.build()?;
    let grid = TimeGrid::new(args.tmax, args.samples)?;
    let cfg = SimConfig::new(graph, args.coupling, grid)?;
    let (i, j) = args.pair.resolve(&cfg.graph)?;
    let model = PairModel::for_graph(&cfg.graph, cfg.coupling, i, j)?;
    let points = trajectory(&model, &cfg.grid)?;

    let mut manifest = RunManifest::new("simulate");
    manifest
        .param("graph", &args.graph)
        .param("modes", cfg.graph.n())
        .param("c", format_float(cfg.coupling))
        .param("selection", args.pair.describe())
        .param("pair", format!("{i},{j}"))
        .param("t_max", format_float(cfg.grid.t_max()))
        .param("samples", cfg.grid.samples())
        .param("verify", args.verify);
    let mut report = Report::new(manifest, vec!["t", "delta", "eof", "rescaled_eof", "u", "v", "w"]);
    for p in &points {
        let ev = &p.evaluation;
        report.push(vec![
            p.t.into(),
            ev.delta().into(),
            ev.eof.eof.into(),
            ev.eof.rescaled.unwrap_or(f64::NAN).into(),
            ev.invariants.u.into(),
            ev.invariants.v.into(),
            ev.invariants.w.into(),
        ]);
    }

    let chart = args.svg.as_ref().map(|_| LineChart {
        title: format!("{} c = {}", args.graph, format_float(cfg.coupling)),
        x_label: "t".into(),
        y_label: if args.rescaled { "(N-1) E [ebits]" } else { "E [ebits]" }.into(),
        series: vec![Series {
            name: format!("pair ({i},{j})"),
            points: points
                .iter()
                .map(|p| {
                    let e = &p.evaluation.eof;
                    (p.t, if args.rescaled { e.rescaled.unwrap_or(f64::NAN) } else { e.eof })
                })
                .collect(),
        }],
    });

    let verification = if args.verify {
        let samples: Vec<(f64, f64)> = points.iter().map(|p| (p.t, p.evaluation.eof.eof)).collect();
        Some(verify(&cfg.graph, cfg.coupling, i, j, &samples)?)
    } else {
        None
    };
    Ok(Outcome {
        report,
        chart,
        verification,
    })
}

/// Maximum rescaled EoF of the complete graph `K_n` over one period.
pub fn meanfield_max(n: usize, c: f64, samples: usize) -> Result<MaxEntanglement, CliError> {
    let model = PairModel::mean_field(n, c)?;
    let period = model.period().expect("complete graph is periodic");
    Ok(max_entanglement(&model, &TimeGrid::new(period, samples)?)?)
}

pub fn table1(args: &Table1Args) -> Result<Outcome, CliError> {
    if args.sizes.is_empty() {
        return Err(CliError::Usage("no sizes given".into()));
    }
    if let Some(&n) = args.sizes.iter().find(|&&n| n < 3) {
        return Err(CliError::Usage(format!(
            "size {n} not supported: the maximum rescaled entanglement is unbounded for N = 2 and undefined below"
        )));
    }
    let results = args
        .sizes
        .par_iter()
        .map(|&n| meanfield_max(n, args.coupling, args.samples).map(|m| (n, m)))
        .collect::<Result<Vec<_>, CliError>>()?;

    let mut manifest = RunManifest::new("table1");
    let sizes: Vec<String> = args.sizes.iter().map(usize::to_string).collect();
    manifest
        .param("sizes", sizes.join(","))
        .param("c", format_float(args.coupling))
        .param("samples_per_period", args.samples)
        .note("N = 2 omitted: its maximum entanglement grows without bound, like log2 of the mode frequency");
    let mut report = Report::new(manifest, vec!["N", "E_r_max", "t_star"]);
    for (n, m) in results {
        report.push(vec![n.into(), m.rescaled.into(), m.t_star.into()]);
    }
    Ok(Outcome {
        report,
        chart: None,
        verification: None,
    })
}

pub fn sweep(args: &SweepArgs) -> Result<Outcome, CliError> {
    let graph = args.graph.build()?;
    let (i, j) = args.pair.resolve(&graph)?;
    let complete = graph.complete_size();
    if complete.is_none() && args.tmax.is_none() {
        return Err(CliError::Usage(
            "--tmax is required for graphs other than complete graphs".into(),
        ));
    }
    if complete.is_some() {
        PairModel::for_graph(&graph, 0.0, i, j)?;
    }
    let couplings = args.c_range.values();

    let results = couplings
        .par_iter()
        .map(|&c| -> Result<(f64, MaxEntanglement), CliError> {
            let model = match complete {
                Some(n) => PairModel::mean_field(n, c)?,
                None => PairModel::for_graph(&graph, c, i, j)?,
            };
            let window = args.tmax.or(model.period()).expect("window resolved above");
            Ok((c, max_entanglement(&model, &TimeGrid::new(window, args.samples)?)?))
        })
        .collect::<Result<Vec<_>, CliError>>()?;

    let mut manifest = RunManifest::new("sweep");
    manifest
        .param("graph", &args.graph)
        .param("modes", graph.n())
        .param("c_range", args.c_range)
        .param("selection", args.pair.describe())
        .param("pair", format!("{i},{j}"))
        .param(
            "window",
            args.tmax
                .map_or_else(|| "one period".to_string(), |t| format!("[0, {}]", format_float(t))),
        )
        .param("samples", args.samples)
        .param("verify", args.verify);
    let mut report = Report::new(manifest, vec!["c", "E_max", "E_r_max", "t_star"]);
    for (c, m) in &results {
        report.push(vec![(*c).into(), m.e_max.into(), m.rescaled.into(), m.t_star.into()]);
    }

    let chart = args.svg.as_ref().map(|_| LineChart {
        title: format!("maximum entanglement, {}", args.graph),
        x_label: "c".into(),
        y_label: if args.rescaled { "max (N-1) E [ebits]" } else { "max E [ebits]" }.into(),
        series: vec![Series {
            name: format!("pair ({i},{j})"),
            points: results
                .iter()
                .map(|(c, m)| (*c, if args.rescaled { m.rescaled } else { m.e_max }))
                .collect(),
        }],
    });

    let verification = if args.verify {
        let samples: Vec<(f64, f64, f64)> = results.iter().map(|(c, m)| (*c, m.t_star, m.e_max)).collect();
        let devs = samples
            .par_iter()
            .map(|&(c, t, e)| {
                let (a, b) = if complete.is_some() { (0, 1) } else { (i, j) };
                let v = dynamics::potential(&graph, c)?;
                Ok((oracle_eof(&v, t, a, b)? - e).abs())
            })
            .collect::<Result<Vec<f64>, CliError>>()?;
        Some(Verification {
            max_deviation: devs.into_iter().fold(0.0, f64::max),
            points: samples.len(),
        })
    } else {
        None
    };
    Ok(Outcome {
        report,
        chart,
        verification,
    })
}

pub fn classes(args: &ClassesArgs) -> Result<Outcome, CliError> {
    let graph = args.graph.build()?;
    let classes = graph.distance_classes()?;
    let mut manifest = RunManifest::new("classes");
    manifest.param("graph", &args.graph).param("modes", graph.n());
    let mut report = Report::new(
        manifest,
        vec!["distance", "paths", "representative_i", "representative_j", "size"],
    );
    for c in classes {
        report.push(vec![
            Cell::from(c.stats.distance),
            c.stats.count.into(),
            c.representative.0.into(),
            c.representative.1.into(),
            c.size.into(),
        ]);
    }
    Ok(Outcome {
        report,
        chart: None,
        verification: None,
    })
}
