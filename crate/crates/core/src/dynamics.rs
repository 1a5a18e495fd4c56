// SPDX-License-Identifier: Apache-2.0

//! Closed-form Gaussian dynamics of oscillators coupled along graph edges.
//!
//! The Hamiltonian is `H = ½ Σ p_i² + ½ xᵀ V x` with `V = I + c·L`, where `L`
//! is the graph Laplacian. With the kinetic matrix equal to the identity
//! the phase-space propagator is
//!
//! ```text
//! U(t) = [  cos Wt    W⁻¹ sin Wt ]      W = √V
//!        [ -W sin Wt  cos Wt     ]
//! ```
//!
//! and starting from `Γ(0) = I` the covariance is `Γ(t) = U(t) U(t)ᵀ`.
//!
//! Full covariance matrices use the block ordering `(x_1..x_N, p_1..p_N)`.
//! Two-mode matrices use `(x_i, p_i, x_j, p_j)`. The reorder happens only in
//! [`pair_reduction`] and [`CovarianceMatrix::pair`].

use nalgebra::{DMatrix, Matrix2, Matrix4, SymmetricEigen};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::{self, SpectralSystem};

/// Relative tolerance on the equality of the two single-mode blocks.
pub const PAIR_SYMMETRY_TOL: f64 = 1e-8;

/// Uniform grid on `[0, t_max]`, both endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t_max: f64,
    samples: usize,
}

impl TimeGrid {
    pub fn new(t_max: f64, samples: usize) -> Result<Self> {
        if !(t_max.is_finite() && t_max > 0.0) {
            return Err(Error::InvalidGrid(format!("t_max must be positive, got {t_max}")));
        }
        if samples < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 samples, got {samples}")));
        }
        Ok(TimeGrid { t_max, samples })
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn step(&self) -> f64 {
        self.t_max / (self.samples - 1) as f64
    }

    pub fn time(&self, k: usize) -> f64 {
        if k + 1 == self.samples {
            self.t_max
        } else {
            self.t_max * k as f64 / (self.samples - 1) as f64
        }
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.samples).map(|k| self.time(k))
    }
}

#[derive(Debug, Clone)]
pub struct SimConfig {
    pub graph: Graph,
    pub coupling: f64,
    pub grid: TimeGrid,
}

impl SimConfig {
    pub fn new(graph: Graph, coupling: f64, grid: TimeGrid) -> Result<Self> {
        check_coupling(coupling)?;
        Ok(SimConfig {
            graph,
            coupling,
            grid,
        })
    }
}

fn check_coupling(c: f64) -> Result<()> {
    if c.is_finite() && c >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidCoupling(c))
    }
}

/// `V = I + c·L(g)`.
pub fn potential(g: &Graph, c: f64) -> Result<DMatrix<f64>> {
    check_coupling(c)?;
    Ok(DMatrix::identity(g.n(), g.n()) + g.laplacian() * c)
}

/// Diagonalizes the potential of `g` at coupling `c`.
pub fn spectral_system(g: &Graph, c: f64) -> Result<SpectralSystem> {
    spectral::eig_sym(&potential(g, c)?)
}

/// The symplectic form `[[0, I], [-I, 0]]` on `n` modes.
pub fn symplectic_form(n: usize) -> DMatrix<f64> {
    let mut s = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        s[(k, n + k)] = 1.0;
        s[(n + k, k)] = -1.0;
    }
    s
}

fn assemble_blocks(a: &DMatrix<f64>, b: &DMatrix<f64>, c: &DMatrix<f64>, d: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    m.view_mut((0, 0), (n, n)).copy_from(a);
    m.view_mut((0, n), (n, n)).copy_from(b);
    m.view_mut((n, 0), (n, n)).copy_from(c);
    m.view_mut((n, n), (n, n)).copy_from(d);
    m
}

/// Phase-space propagator `U(t)` in `(x, p)` block ordering.
pub fn propagator(s: &SpectralSystem, t: f64) -> DMatrix<f64> {
    let cos = s.matrix_function(|w| (w * t).cos());
    let sin_over = s.matrix_function(|w| (w * t).sin() / w);
    let minus_w_sin = s.matrix_function(|w| -w * (w * t).sin());
    assemble_blocks(&cos, &sin_over, &minus_w_sin, &cos)
}

fn gamma_xx(w: f64, t: f64) -> f64 {
    let (s, c) = (w * t).sin_cos();
    c * c + s * s / (w * w)
}

fn gamma_pp(w: f64, t: f64) -> f64 {
    let (s, c) = (w * t).sin_cos();
    c * c + w * w * s * s
}

fn gamma_xp(w: f64, t: f64) -> f64 {
    let (s, c) = (w * t).sin_cos();
    (1.0 / w - w) * s * c
}

/// Covariance matrix of all `N` modes, `(x, p)` block ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix(DMatrix<f64>);

impl CovarianceMatrix {
    pub fn from_matrix(m: DMatrix<f64>) -> Self {
        CovarianceMatrix(m)
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn modes(&self) -> usize {
        self.0.nrows() / 2
    }

    pub fn symmetry_error(&self) -> f64 {
        (&self.0 - self.0.transpose()).amax()
    }

    pub fn determinant(&self) -> f64 {
        self.0.clone().determinant()
    }

    /// Smallest eigenvalue of the Hermitian matrix `Γ + iσ`, computed through
    /// its real embedding `[[Γ, -σ], [σ, Γ]]`.
    pub fn min_uncertainty_eigenvalue(&self) -> f64 {
        let m = self.0.nrows();
        let sigma = symplectic_form(self.modes());
        let embedded = assemble_blocks(&self.0, &(-&sigma), &sigma, &self.0);
        debug_assert_eq!(embedded.nrows(), 2 * m);
        SymmetricEigen::new(embedded).eigenvalues.min()
    }

    /// Extracts the two-mode block of vertices `i` and `j`.
    pub fn pair(&self, i: usize, j: usize) -> TwoModeCovariance {
        let n = self.modes();
        let idx = [i, n + i, j, n + j];
        TwoModeCovariance(Matrix4::from_fn(|r, c| self.0[(idx[r], idx[c])]))
    }
}

/// `Γ(t) = U(t) U(t)ᵀ` from the vacuum, built from the closed-form blocks.
pub fn covariance_at(s: &SpectralSystem, t: f64) -> CovarianceMatrix {
    let xx = s.matrix_function(|w| gamma_xx(w, t));
    let pp = s.matrix_function(|w| gamma_pp(w, t));
    let xp = s.matrix_function(|w| gamma_xp(w, t));
    CovarianceMatrix(assemble_blocks(&xx, &xp, &xp, &pp))
}

/// Two-mode covariance matrix in `(x_1, p_1, x_2, p_2)` ordering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeCovariance(Matrix4<f64>);

impl TwoModeCovariance {
    pub fn from_matrix(m: Matrix4<f64>) -> Self {
        TwoModeCovariance(m)
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    /// Single-mode block of the first mode.
    pub fn alpha(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(0, 0).into_owned()
    }

    /// Single-mode block of the second mode.
    pub fn alpha_second(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(2, 2).into_owned()
    }

    /// Cross-correlation block.
    pub fn beta(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(0, 2).into_owned()
    }

    pub fn symmetry_error(&self) -> f64 {
        (self.0 - self.0.transpose()).amax()
    }

    /// Largest difference between the two single-mode blocks, relative to the
    /// largest entry (at least 1).
    pub fn mode_asymmetry(&self) -> f64 {
        (self.alpha() - self.alpha_second()).amax() / self.0.amax().max(1.0)
    }

    pub fn max_abs_diff(&self, other: &TwoModeCovariance) -> f64 {
        (self.0 - other.0).amax()
    }
}

fn check_pair(n: usize, i: usize, j: usize) -> Result<()> {
    for v in [i, j] {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    if i == j {
        return Err(Error::SamePair(i));
    }
    Ok(())
}

/// The reduced state of modes `i` and `j` at time `t`, computed from the
/// normal modes in O(N) without forming the full covariance matrix.
///
/// Fails with [`Error::AsymmetricPair`] when the two single-mode blocks
/// differ, which means no graph symmetry exchanges `i` and `j`.
pub fn pair_reduction(s: &SpectralSystem, t: f64, i: usize, j: usize) -> Result<TwoModeCovariance> {
    check_pair(s.dim(), i, j)?;
    let q = s.modes();
    let (mut xx, mut pp, mut xp) = ([0.0; 3], [0.0; 3], [0.0; 3]);
    for k in 0..s.dim() {
        let w = s.omegas()[k];
        let weights = [q[(i, k)] * q[(i, k)], q[(j, k)] * q[(j, k)], q[(i, k)] * q[(j, k)]];
        let (gx, gp, gxp) = (gamma_xx(w, t), gamma_pp(w, t), gamma_xp(w, t));
        for (slot, wt) in weights.iter().enumerate() {
            xx[slot] += wt * gx;
            pp[slot] += wt * gp;
            xp[slot] += wt * gxp;
        }
    }
    let [ii, jj, ij] = [0, 1, 2];
    #[rustfmt::skip]
    let m = Matrix4::new(
        xx[ii], xp[ii], xx[ij], xp[ij],
        xp[ii], pp[ii], xp[ij], pp[ij],
        xx[ij], xp[ij], xx[jj], xp[jj],
        xp[ij], pp[ij], xp[jj], pp[jj],
    );
    let cov = TwoModeCovariance(m);
    let asym = cov.mode_asymmetry();
    if asym > PAIR_SYMMETRY_TOL {
        let a = cov.alpha();
        let b = cov.alpha_second();
        return Err(Error::AsymmetricPair {
            i,
            j,
            diagnosis: format!(
                "vertices lie in different orbits of the graph symmetry group; \
                 single-mode blocks differ (<x{i}x{i}> = {:.6}, <x{j}x{j}> = {:.6}, \
                 <p{i}p{i}> = {:.6}, <p{j}p{j}> = {:.6}, relative deviation {asym:.3e})",
                a[(0, 0)],
                b[(0, 0)],
                a[(1, 1)],
                b[(1, 1)],
            ),
        });
    }
    Ok(cov)
}

/// Closed-form pair covariance of the complete graph on `n` vertices, with
/// `ω = √(1 + n·c)`.
pub fn meanfield_pair_covariance(n: usize, c: f64, t: f64) -> Result<TwoModeCovariance> {
    if n < 2 {
        return Err(Error::InvalidSize {
            family: "meanfield".into(),
            size: n,
        });
    }
    check_coupling(c)?;
    let nf = n as f64;
    let w = (1.0 + nf * c).sqrt();
    let (s, co) = (w * t).sin_cos();
    let s2 = s * s;
    let sc = s * co;
    let inv = 1.0 / nf;
    let xx = inv + (1.0 - inv) * (co * co + s2 / (w * w));
    let xx12 = inv * (1.0 - 1.0 / (w * w)) * s2;
    let pp = inv + (1.0 - inv) * (co * co + w * w * s2);
    let pp12 = inv * (1.0 - w * w) * s2;
    let xp = (1.0 - inv) * (1.0 / w - w) * sc;
    let xp12 = -inv * (1.0 / w - w) * sc;
    #[rustfmt::skip]
    let m = Matrix4::new(
        xx,   xp,   xx12, xp12,
        xp,   pp,   xp12, pp12,
        xx12, xp12, xx,   xp,
        xp12, pp12, xp,   pp,
    );
    Ok(TwoModeCovariance(m))
}

/// A source of two-mode states for one vertex pair.
#[derive(Debug, Clone)]
pub enum PairModel {
    /// Any graph, evaluated through its normal modes.
    Graph {
        system: SpectralSystem,
        i: usize,
        j: usize,
    },
    /// Complete graph, evaluated through the analytic pair formulas.
    MeanField { n: usize, coupling: f64 },
}

impl PairModel {
    /// Builds a model for pair `(i, j)` of `g`. The pair symmetry is checked
    /// once here at a generic time so later evaluations fail fast.
    pub fn for_graph(g: &Graph, c: f64, i: usize, j: usize) -> Result<Self> {
        check_pair(g.n(), i, j)?;
        let system = spectral_system(g, c)?;
        pair_reduction(&system, 0.739_085_133_215_160_7, i, j)?;
        Ok(PairModel::Graph { system, i, j })
    }

    pub fn mean_field(n: usize, c: f64) -> Result<Self> {
        meanfield_pair_covariance(n, c, 0.0)?;
        Ok(PairModel::MeanField { n, coupling: c })
    }

    pub fn covariance(&self, t: f64) -> Result<TwoModeCovariance> {
        match self {
            PairModel::Graph { system, i, j } => pair_reduction(system, t, *i, *j),
            PairModel::MeanField { n, coupling } => meanfield_pair_covariance(*n, *coupling, t),
        }
    }

    /// Number of modes in the underlying graph.
    pub fn modes(&self) -> usize {
        match self {
            PairModel::Graph { system, .. } => system.dim(),
            PairModel::MeanField { n, .. } => *n,
        }
    }

    /// Highest normal-mode frequency.
    pub fn max_omega(&self) -> f64 {
        match self {
            PairModel::Graph { system, .. } => system.max_omega(),
            PairModel::MeanField { n, coupling } => (1.0 + *n as f64 * coupling).sqrt(),
        }
    }

    /// Period of the pair state, when it is periodic: `π/ω` for the complete
    /// graph, whose pair entries depend on `t` only through `sin²ωt` and
    /// `sin ωt cos ωt`.
    pub fn period(&self) -> Option<f64> {
        match self {
            PairModel::MeanField { .. } => Some(std::f64::consts::PI / self.max_omega()),
            PairModel::Graph { .. } => None,
        }
    }
}
