// SPDX-License-Identifier: Apache-2.0

//! End-to-end acceptance checks. Prints one `[PASS]`/`[FAIL]` line per
//! criterion and exits non-zero if any fails.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};

use gaussnet_cli::commands;
use gaussnet_cli::report::Format;
use gaussnet_cli::{OutputArgs, Table1Args};
use gaussnet_core::dynamics::{
    self, covariance_at, pair_reduction, propagator, spectral_system, symplectic_form, PairModel, TimeGrid,
};
use gaussnet_core::entanglement::{eof, evaluate, max_entanglement, trajectory};
use gaussnet_core::graph::Graph;
use gaussnet_core::oracle;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Entropy of a thermal mode with `n̄ = sinh² r`, `δ = e^{-2r}`.
fn thermal_eof(delta: f64) -> f64 {
    let r = -delta.ln() / 2.0;
    let nbar = r.sinh().powi(2);
    (nbar + 1.0) * (nbar + 1.0).log2() - nbar * nbar.log2()
}

fn table1_reproduction() -> Outcome {
    const SIZES: [usize; 11] = [3, 4, 5, 6, 7, 8, 9, 10, 15, 20, 30];
    const EXPECTED: [f64; 11] = [0.803, 0.592, 0.484, 0.415, 0.365, 0.328, 0.298, 0.274, 0.196, 0.156, 0.113];
    let out = commands::table1(&Table1Args {
        sizes: SIZES.to_vec(),
        coupling: 1e6,
        samples: 400,
        output: OutputArgs {
            out: None,
            format: Format::Csv,
        },
    })
    .map_err(err)?;
    let got = out.report.column("E_r_max").ok_or("missing column")?;
    let mut worst: f64 = 0.0;
    for ((n, e), g) in SIZES.iter().zip(EXPECTED).zip(&got) {
        let d = (g - e).abs();
        worst = worst.max(d);
        check(d <= 0.01, format!("N = {n}: E_r_max = {g:.4}, expected {e} +- 0.01"))?;
    }
    Ok(format!("11 sizes, max |deviation| = {worst:.4}"))
}

fn two_mode_closed_form() -> Outcome {
    let mut worst_delta: f64 = 0.0;
    for c in [2.0, 8.3] {
        let w = (1.0f64 + 2.0 * c).sqrt();
        let model = PairModel::for_graph(&Graph::two(), c, 0, 1).map_err(err)?;
        let grid = TimeGrid::new(4.21, 2000).map_err(err)?;
        for p in trajectory(&model, &grid).map_err(err)? {
            let a = (1.0 / w - w) * (w * p.t).sin();
            let exact = (1.0 + 0.25 * a * a).sqrt() - 0.5 * a.abs();
            let d = (p.evaluation.delta() - exact).abs();
            worst_delta = worst_delta.max(d);
            check(d <= 1e-10, format!("c = {c}, t = {}: |delta - closed form| = {d:e}", p.t))?;
        }
        let m = max_entanglement(&model, &grid).map_err(err)?;
        let d_min = 1.0 / w;
        check(
            (m.delta - d_min).abs() <= 1e-8,
            format!("c = {c}: delta_min = {}, expected {d_min}", m.delta),
        )?;
        if c == 2.0 {
            let reference = thermal_eof(1.0 / 5f64.sqrt());
            check(
                (m.e_max - reference).abs() <= 1e-4,
                format!("c = 2: e_max = {}, oracle {reference}", m.e_max),
            )?;
        }
    }
    Ok(format!(
        "max |delta - closed form| = {worst_delta:.1e}; c = 2 peak matches direct EoF at delta = 1/sqrt(5) ({:.7})",
        thermal_eof(1.0 / 5f64.sqrt())
    ))
}

fn mean_field_invariants() -> Outcome {
    let mut worst: f64 = 0.0;
    for (n, c) in [(3usize, 1.0), (20, 1.0), (50, 0.3)] {
        let s = spectral_system(&Graph::complete(n), c).map_err(err)?;
        let w = (1.0 + n as f64 * c).sqrt();
        let nf = n as f64;
        let grid = TimeGrid::new(10.0, 100).map_err(err)?;
        for t in grid.times() {
            let inv = evaluate(&pair_reduction(&s, t, 0, 1).map_err(err)?).map_err(err)?.invariants;
            let q = (w - 1.0 / w).powi(2) * (w * t).sin().powi(2);
            let u = 1.0 + (1.0 / nf) * (1.0 - 1.0 / nf) * q;
            let v = -q / (nf * nf);
            let ww = 1.0 + 2.0 * q * (nf - 2.0) / (nf * nf);
            let d = (inv.u - u).abs().max((inv.v - v).abs()).max((inv.w - ww).abs());
            worst = worst.max(d);
            check(d <= 1e-9, format!("N = {n}, c = {c}, t = {t}: deviation {d:e}"))?;
        }
    }
    Ok(format!("3 clusters x 100 times, max deviation = {worst:.1e}"))
}

fn random_connected_graph(rng: &mut StdRng, max_n: usize) -> Graph {
    let n = rng.random_range(2..=max_n);
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
    for _ in 0..rng.random_range(0..2 * n) {
        let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
        let e = (a.min(b), a.max(b));
        if a != b && !edges.contains(&e) {
            edges.push(e);
        }
    }
    Graph::new(n, edges).expect("valid random graph")
}

fn oracle_equivalence() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0004);
    let mut worst: f64 = 0.0;
    for k in 0..50 {
        let g = random_connected_graph(&mut rng, 8);
        let c = rng.random_range(0.0..=10.0);
        let t = rng.random_range(0.0..=10.0);
        let closed = propagator(&spectral_system(&g, c).map_err(err)?, t);
        let numeric = oracle::evolve_numeric(&dynamics::potential(&g, c).map_err(err)?, t).map_err(err)?;
        let d = (closed - numeric).amax();
        worst = worst.max(d);
        check(
            d <= 1e-8,
            format!("graph #{k} (N = {}, c = {c}, t = {t}): max-norm {d:e}", g.n()),
        )?;
    }
    Ok(format!("50 random graphs, max-norm deviation = {worst:.1e}"))
}

fn physicality() -> Outcome {
    let graphs = [
        Graph::two(),
        Graph::complete(6),
        Graph::path(5),
        Graph::cycle(7),
        Graph::cube(),
        Graph::octahedron(),
    ];
    let grid = TimeGrid::new(10.0, 200).map_err(err)?;
    let (mut sym, mut spl, mut det, mut eig): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, f64::INFINITY);
    let mut states = 0;
    for g in &graphs {
        let sigma = symplectic_form(g.n());
        for c in [0.5, 5.0, 50.0] {
            let s = spectral_system(g, c).map_err(err)?;
            for t in grid.times() {
                let u = propagator(&s, t);
                let gamma = covariance_at(&s, t);
                sym = sym.max(gamma.symmetry_error());
                spl = spl.max((&u * &sigma * u.transpose() - &sigma).amax());
                det = det.max((gamma.determinant() - 1.0).abs());
                eig = eig.min(gamma.min_uncertainty_eigenvalue());
                states += 1;
            }
        }
    }
    check(sym <= 1e-10, format!("symmetry error {sym:e}"))?;
    check(spl <= 1e-10, format!("symplecticity error {spl:e}"))?;
    check(det <= 1e-8, format!("|det - 1| = {det:e}"))?;
    check(eig >= -1e-9, format!("min eig(Gamma + i sigma) = {eig:e}"))?;
    Ok(format!(
        "{states} states: symmetry {sym:.1e}, symplecticity {spl:.1e}, |det - 1| {det:.1e}, min eig {eig:.1e}"
    ))
}

fn eof_properties() -> Outcome {
    let grid: Vec<f64> = (1..=100).map(|k| k as f64 / 101.0).collect();
    let mut prev = f64::INFINITY;
    for &d in &grid {
        let r = eof(d).map_err(err)?;
        check(
            (r.c_plus - r.c_minus - 1.0).abs() <= 1e-9,
            format!("C+ - C- = {} at delta = {d}", r.c_plus - r.c_minus),
        )?;
        check(r.eof < prev, format!("not strictly decreasing at delta = {d}"))?;
        prev = r.eof;
    }
    for d in [1.0, 1.0 + 1e-12, 1.5, 10.0, 1e6] {
        check(eof(d).map_err(err)?.eof == 0.0, format!("eof({d}) != 0"))?;
    }
    let near = eof(1.0 - 1e-6).map_err(err)?.eof;
    check(near < 1e-4, format!("eof(1 - 1e-6) = {near:e}"))?;
    Ok(format!("100-point grid strictly decreasing, eof(1 - 1e-6) = {near:.1e}"))
}

fn class_curve(g: &Graph, c: f64, distance: usize, grid: &TimeGrid) -> Result<Vec<f64>, String> {
    let (i, j) = g.class_representative(distance, None).map_err(err)?;
    let model = PairModel::for_graph(g, c, i, j).map_err(err)?;
    Ok(trajectory(&model, grid).map_err(err)?.iter().map(|p| p.evaluation.eof.eof).collect())
}

fn class_max(g: &Graph, c: f64, distance: usize, t_max: f64) -> Result<f64, String> {
    let (i, j) = g.class_representative(distance, None).map_err(err)?;
    let model = PairModel::for_graph(g, c, i, j).map_err(err)?;
    Ok(max_entanglement(&model, &TimeGrid::new(t_max, 400).map_err(err)?).map_err(err)?.e_max)
}

fn distance_class_ordering() -> Outcome {
    let oct = Graph::octahedron();
    let mut summary = Vec::new();
    for c in [1.0, 2.0, 5.0, 10.0] {
        let (e1, e2) = (class_max(&oct, c, 1, 10.0)?, class_max(&oct, c, 2, 10.0)?);
        check(e2 > e1, format!("octahedron c = {c}: distance-2 max {e2} <= distance-1 max {e1}"))?;
        summary.push(format!("c={c}: {e2:.3}>{e1:.3}"));
    }

    let cube = Graph::cube();
    let maxima: Vec<f64> = (1..=3).map(|d| class_max(&cube, 5.0, d, 10.0)).collect::<Result<_, _>>()?;
    check(
        maxima.iter().all(|&e| e > 0.0),
        format!("cube c = 5: class maxima {maxima:?}"),
    )?;
    let grid = TimeGrid::new(10.0, 4000).map_err(err)?;
    let curves: Vec<Vec<f64>> = (1..=3).map(|d| class_curve(&cube, 5.0, d, &grid)).collect::<Result<_, _>>()?;
    let mut crossing = None;
    'scan: for near in 0..3 {
        for far in near + 1..3 {
            let diff: Vec<f64> = curves[far].iter().zip(&curves[near]).map(|(f, n)| f - n).collect();
            for k in 1..diff.len() {
                if diff[k - 1] <= -1e-6 && diff[k] >= 1e-6 || diff[k - 1] >= 1e-6 && diff[k] <= -1e-6 {
                    crossing = Some((far + 1, near + 1, grid.time(k)));
                    break 'scan;
                }
            }
        }
    }
    let (far, near, t) = crossing.ok_or("cube c = 5: no crossing between class curves")?;
    Ok(format!(
        "octahedron [{}]; cube c=5 maxima {:.3}/{:.3}/{:.3}, distance-{far} crosses distance-{near} near t = {t:.3}",
        summary.join(", "),
        maxima[0],
        maxima[1],
        maxima[2]
    ))
}

fn growth_and_saturation() -> Outcome {
    let c = 1e4;
    let model = PairModel::for_graph(&Graph::two(), c, 0, 1).map_err(err)?;
    let w = (1.0f64 + 2.0 * c).sqrt();
    let e = max_entanglement(&model, &TimeGrid::new(PI / w, 400).map_err(err)?).map_err(err)?.e_max;
    let ratio = e / w.log2();
    check((0.8..=1.2).contains(&ratio), format!("two-mode ratio {ratio}"))?;

    let mut worst: f64 = 0.0;
    for n in [3usize, 4, 5, 6, 7, 8, 9, 10, 15, 20, 30] {
        let lo = commands::meanfield_max(n, 1e4, 400).map_err(err)?.e_max;
        let hi = commands::meanfield_max(n, 1e6, 400).map_err(err)?.e_max;
        worst = worst.max(hi - lo);
        check(hi - lo < 0.01, format!("N = {n}: e_max(1e6) - e_max(1e4) = {}", hi - lo))?;
    }
    Ok(format!(
        "two-mode ratio at c = 1e4: {ratio:.3}; mean-field max e_max(1e6) - e_max(1e4) = {worst:.1e}"
    ))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(err)?;
    let runs: [&[&str]; 3] = [
        &["simulate", "--graph", "cube", "--c", "5", "--class", "distance:3", "--tmax", "10", "--samples", "500"],
        &["table1", "--sizes", "3,5,10"],
        &["sweep", "--graph", "octahedron", "--c-range", "0:10:11", "--tmax", "10", "--class", "distance:2"],
    ];
    for (k, args) in runs.iter().enumerate() {
        let mut outputs = Vec::new();
        for _ in 0..2 {
            let path = dir.path().join(format!("run{k}.csv"));
            let status = Command::new(env!("CARGO_BIN_EXE_gaussnet"))
                .args(*args)
                .arg("--out")
                .arg(&path)
                .status()
                .map_err(err)?;
            check(status.success(), format!("`gaussnet {}` exited with {status}", args.join(" ")))?;
            outputs.push(std::fs::read(&path).map_err(err)?);
        }
        check(outputs[0] == outputs[1], format!("`gaussnet {}` output differs between runs", args.join(" ")))?;
        check(!outputs[0].is_empty(), "empty output")?;
    }
    Ok("simulate, table1 and sweep CSVs byte-identical across repeated runs".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 table of saturated rescaled EoF", table1_reproduction),
        ("2 two-mode closed form", two_mode_closed_form),
        ("3 mean-field invariants", mean_field_invariants),
        ("4 series-exponential oracle", oracle_equivalence),
        ("5 physicality", physicality),
        ("6 EoF function properties", eof_properties),
        ("7 distance-class ordering", distance_class_ordering),
        ("8 log growth and saturation", growth_and_saturation),
        ("9 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {name}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
