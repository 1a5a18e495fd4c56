// SPDX-License-Identifier: Apache-2.0

//! Entanglement of formation of symmetric two-mode Gaussian states.
//!
//! A symmetric two-mode covariance matrix `Γ = [[α, β], [β, α]]` is fixed up
//! to local symplectic transformations by three invariants, `u = det α`,
//! `v = det β` and `w = det Γ`. They determine the standard form
//! `(n, k_x, k_p)` and with it
//!
//! ```text
//! δ = √((n - k_x)(n + k_p)),   Δ = min(1, δ),   C± = (1 ± Δ)² / 4Δ
//! E = C₊ log₂ C₊ - C₋ log₂ C₋
//! ```
//!
//! `δ` is also available directly from the invariants through
//! [`delta_from_invariants`]. Both routes are evaluated by [`evaluate`]; the
//! standard-form route is the one reported. The two agree whenever
//! `v ≤ 0`. For `v > 0` the state is separable: the standard-form route
//! still returns the smallest symplectic eigenvalue of the partial
//! transpose, while the closed formula does not, although both stay `≥ 1`.

use crate::dynamics::{PairModel, TimeGrid, TwoModeCovariance};
use crate::error::{Error, Result};

/// Roundoff allowance for radicands; anything more negative is unphysical.
pub const CLAMP_TOL: f64 = 1e-9;
const STATE_SYMMETRY_TOL: f64 = 1e-8;
/// `δ` within this distance below 1 is roundoff on a separable state.
const UNIT_DELTA_TOL: f64 = 1e-12;
const GRID_POINTS_PER_PERIOD: f64 = 400.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeInvariants {
    /// `det α`
    pub u: f64,
    /// `det β`
    pub v: f64,
    /// `det Γ`
    pub w: f64,
    /// `u² + v² - w`
    pub xi: f64,
}

impl TwoModeInvariants {
    pub fn new(u: f64, v: f64, w: f64) -> Self {
        TwoModeInvariants {
            u,
            v,
            w,
            xi: u * u + v * v - w,
        }
    }
}

pub fn invariants(m: &TwoModeCovariance) -> Result<TwoModeInvariants> {
    let scale = m.matrix().amax().max(1.0);
    let asym = m.symmetry_error().max((m.alpha() - m.alpha_second()).amax()) / scale;
    if asym > STATE_SYMMETRY_TOL {
        return Err(Error::AsymmetricState(asym));
    }
    Ok(TwoModeInvariants::new(
        m.alpha().determinant(),
        m.beta().determinant(),
        m.matrix().determinant(),
    ))
}

/// Clamps roundoff-sized negatives to zero; rejects anything below
/// `-CLAMP_TOL * scale`.
fn clamp_radicand(x: f64, scale: f64, what: &str) -> Result<f64> {
    if x >= 0.0 {
        Ok(x)
    } else if x >= -CLAMP_TOL * scale.max(1.0) {
        Ok(0.0)
    } else if x.is_nan() {
        Err(Error::Unphysical(format!("{what} is NaN")))
    } else {
        Err(Error::Unphysical(format!("{what} is negative ({x:e})")))
    }
}

/// Standard form of a symmetric two-mode covariance matrix,
/// `[[n, k_x], [k_x, n]] ⊕ [[n, k_p], [k_p, n]]` in `(x₁, x₂, p₁, p₂)`
/// ordering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandardForm {
    pub n: f64,
    pub k_x: f64,
    /// Non-positive for `det β ≤ 0`; positive only for separable states
    /// with `det β > 0`.
    pub k_p: f64,
}

impl StandardForm {
    /// `√((n - k_x)(n + k_p))`.
    pub fn delta(&self) -> Result<f64> {
        let d2 = (self.n - self.k_x) * (self.n + self.k_p);
        Ok(clamp_radicand(d2, self.n * self.n, "delta squared")?.sqrt())
    }
}

/// Recovers `(n, k_x, k_p)` from `n² = u`, `k_x k_p = v` and
/// `(n² - k_x²)(n² - k_p²) = w`.
///
/// `k_x²` and `k_p²` are the roots of `z² - (ξ/u) z + v² = 0`. The roots are
/// obtained through `(k_x ∓ k_p)² = ((u ∓ v)² - w)/u`, which avoids the
/// cancellation in the discriminant of nearly pure states.
pub fn standard_form(inv: &TwoModeInvariants) -> Result<StandardForm> {
    let TwoModeInvariants { u, v, w, .. } = *inv;
    if u.is_nan() || u <= 0.0 {
        return Err(Error::Unphysical(format!("det alpha must be positive, got {u:e}")));
    }
    let n = u.sqrt();
    let diff_sq = {
        let a = (u - v) * (u - v);
        clamp_radicand(a - w, a.max(w.abs()), "(k_x - k_p)^2")? / u
    };
    let sum_sq = {
        let a = (u + v) * (u + v);
        clamp_radicand(a - w, a.max(w.abs()), "(k_x + k_p)^2")? / u
    };
    let (diff, sum) = (diff_sq.sqrt(), sum_sq.sqrt());
    Ok(StandardForm {
        n,
        k_x: 0.5 * (sum + diff),
        k_p: 0.5 * (sum - diff),
    })
}

/// `δ² = u - v - √((ξ - √(ξ² - 4u²v²))/2) - √((ξ + √(ξ² - 4u²v²))/2)`.
pub fn delta_from_invariants(inv: &TwoModeInvariants) -> Result<f64> {
    let TwoModeInvariants { u, v, xi, .. } = *inv;
    let uv2 = 4.0 * u * u * v * v;
    let disc = clamp_radicand(xi * xi - uv2, xi * xi, "xi^2 - 4u^2v^2")?.sqrt();
    let lo = clamp_radicand(0.5 * (xi - disc), xi.abs(), "(xi - root)/2")?.sqrt();
    let hi = clamp_radicand(0.5 * (xi + disc), xi.abs(), "(xi + root)/2")?.sqrt();
    let d2 = u - v - lo - hi;
    Ok(clamp_radicand(d2, u.abs() + v.abs(), "delta squared")?.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EofResult {
    pub delta: f64,
    /// `Δ = min(1, δ)`
    pub clamped_delta: f64,
    pub c_plus: f64,
    pub c_minus: f64,
    /// Entanglement of formation in ebits.
    pub eof: f64,
    /// `(N - 1) · eof` when the mode count is known.
    pub rescaled: Option<f64>,
}

impl EofResult {
    pub fn with_rescaling(mut self, modes: usize) -> Self {
        self.rescaled = Some(modes.saturating_sub(1) as f64 * self.eof);
        self
    }
}

fn xlog2x(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

pub fn eof(delta: f64) -> Result<EofResult> {
    if delta.is_nan() || delta <= 0.0 {
        return Err(Error::NonPositiveDelta(delta));
    }
    let d = delta.min(1.0);
    let (c_plus, c_minus, e) = if d >= 1.0 - UNIT_DELTA_TOL {
        (1.0, 0.0, 0.0)
    } else {
        let cp = (1.0 + d) * (1.0 + d) / (4.0 * d);
        let cm = (1.0 - d) * (1.0 - d) / (4.0 * d);
        (cp, cm, xlog2x(cp) - xlog2x(cm))
    };
    Ok(EofResult {
        delta,
        clamped_delta: d,
        c_plus,
        c_minus,
        eof: e.max(0.0),
        rescaled: None,
    })
}

/// Everything computed for one two-mode state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairEvaluation {
    pub invariants: TwoModeInvariants,
    pub standard_form: StandardForm,
    /// `δ` from the closed invariant formula; `None` if that route rejected
    /// the invariants.
    pub delta_closed_form: Option<f64>,
    pub eof: EofResult,
}

impl PairEvaluation {
    /// Authoritative `δ` (standard-form route).
    pub fn delta(&self) -> f64 {
        self.eof.delta
    }

    /// Disagreement between the two `δ` routes.
    pub fn route_discrepancy(&self) -> Option<f64> {
        self.delta_closed_form.map(|d| (d - self.delta()).abs())
    }
}

pub fn evaluate(m: &TwoModeCovariance) -> Result<PairEvaluation> {
    let inv = invariants(m)?;
    let sf = standard_form(&inv)?;
    let delta = sf.delta()?;
    Ok(PairEvaluation {
        invariants: inv,
        standard_form: sf,
        delta_closed_form: delta_from_invariants(&inv).ok(),
        eof: eof(delta)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub evaluation: PairEvaluation,
}

/// Evaluates the pair on every grid point. EoF values carry the `(N-1)`
/// rescaling of the model's mode count.
pub fn trajectory(model: &PairModel, grid: &TimeGrid) -> Result<Vec<TrajectoryPoint>> {
    grid.times()
        .map(|t| {
            let mut evaluation = evaluate(&model.covariance(t)?)?;
            evaluation.eof = evaluation.eof.with_rescaling(model.modes());
            Ok(TrajectoryPoint { t, evaluation })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxEntanglement {
    pub t_star: f64,
    pub e_max: f64,
    /// `(N - 1) · e_max`
    pub rescaled: f64,
    pub delta: f64,
}

/// Maximum of the pair EoF over `[0, grid.t_max()]`.
///
/// The grid is densified to at least 400 points per period `π/ω_max` of the
/// fastest normal mode. The best grid point is then refined by a
/// golden-section search on its two neighboring intervals, since peaks
/// become cusp-like at strong coupling.
pub fn max_entanglement(model: &PairModel, grid: &TimeGrid) -> Result<MaxEntanglement> {
    let period = std::f64::consts::PI / model.max_omega();
    let needed = (GRID_POINTS_PER_PERIOD * grid.t_max() / period).ceil() as usize + 1;
    let grid = TimeGrid::new(grid.t_max(), grid.samples().max(needed))?;
    let eof_at = |t: f64| -> Result<EofResult> { eof(evaluate(&model.covariance(t)?)?.delta()) };

    let mut best = (0usize, eof_at(0.0)?);
    for k in 1..grid.samples() {
        let e = eof_at(grid.time(k))?;
        if e.eof > best.1.eof {
            best = (k, e);
        }
    }
    let (k, mut best_eof) = best;
    let mut t_star = grid.time(k);

    if best_eof.eof > 0.0 {
        let step = grid.step();
        let lo = grid.time(k.saturating_sub(1));
        let hi = grid.time((k + 1).min(grid.samples() - 1));
        let tol = 1e-6f64.min(step * 1e-3);
        let (t, e) = golden_section_max(lo, hi, tol, |t| eof_at(t).map(|r| r.eof))?;
        if e > best_eof.eof {
            t_star = t;
            best_eof = eof_at(t)?;
        }
    }
    let rescaled = (model.modes() - 1) as f64 * best_eof.eof;
    Ok(MaxEntanglement {
        t_star,
        e_max: best_eof.eof,
        rescaled,
        delta: best_eof.delta,
    })
}

fn golden_section_max(
    mut a: f64,
    mut b: f64,
    tol: f64,
    f: impl Fn(f64) -> Result<f64>,
) -> Result<(f64, f64)> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while b - a > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    let t = 0.5 * (a + b);
    Ok((t, f(t)?))
}
