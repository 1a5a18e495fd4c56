// SPDX-License-Identifier: Apache-2.0

//! Brute-force evolution `R(t) = exp(K t) R(0)` with `K = [[0, I], [-V, 0]]`.
//!
//! The exponential is a truncated Taylor series with scaling and squaring.
//! Nothing here touches the eigendecomposition, so comparing against
//! [`crate::dynamics::propagator`] checks the closed form end to end.

use nalgebra::DMatrix;

use crate::dynamics::{CovarianceMatrix, TwoModeCovariance};
use crate::error::{Error, Result};

/// Taylor order after scaling.
const SERIES_ORDER: usize = 16;
/// Scaling target for the induced ∞-norm of `K t / 2^s`.
const SCALED_NORM: f64 = 0.5;

/// The generator `K = [[0, I], [-V, 0]]` of the phase-space flow.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorMatrix(DMatrix<f64>);

impl GeneratorMatrix {
    pub fn new(potential: &DMatrix<f64>) -> Result<Self> {
        let (rows, cols) = potential.shape();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        let n = rows;
        let mut k = DMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            k[(i, n + i)] = 1.0;
        }
        k.view_mut((n, 0), (n, n)).copy_from(&(-potential));
        Ok(GeneratorMatrix(k))
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn modes(&self) -> usize {
        self.0.nrows() / 2
    }
}

fn inf_norm(m: &DMatrix<f64>) -> f64 {
    m.row_iter().map(|r| r.iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max)
}

/// Upper bound on the Taylor remainder `Σ_{k>m} θ^k/k!` for `θ < m + 2`.
fn remainder_bound(theta: f64, order: usize) -> f64 {
    let mut term = 1.0;
    for k in 1..=order + 1 {
        term *= theta / k as f64;
    }
    term / (1.0 - theta / (order + 2) as f64)
}

/// `exp(K t)` by scaling and squaring.
pub fn expm(k: &GeneratorMatrix, t: f64) -> DMatrix<f64> {
    let a = k.matrix() * t;
    let dim = a.nrows();
    let norm = inf_norm(&a);
    let squarings = if norm > SCALED_NORM {
        (norm / SCALED_NORM).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a * 2f64.powi(-squarings);
    debug_assert!(remainder_bound(inf_norm(&scaled), SERIES_ORDER) < 1e-12);

    // Horner form of Σ_{j ≤ m} A^j / j!.
    let id = DMatrix::<f64>::identity(dim, dim);
    let mut result = id.clone();
    for j in (1..=SERIES_ORDER).rev() {
        result = &id + (&scaled * result) / j as f64;
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

/// Propagator for potential `V` at time `t`, computed without any
/// eigendecomposition.
pub fn evolve_numeric(potential: &DMatrix<f64>, t: f64) -> Result<DMatrix<f64>> {
    if !t.is_finite() {
        return Err(Error::InvalidGrid(format!("time must be finite, got {t}")));
    }
    Ok(expm(&GeneratorMatrix::new(potential)?, t))
}

/// `Γ(t) = U U ᵀ` with `U` from [`evolve_numeric`].
pub fn covariance_numeric(potential: &DMatrix<f64>, t: f64) -> Result<CovarianceMatrix> {
    let u = evolve_numeric(potential, t)?;
    Ok(CovarianceMatrix::from_matrix(&u * u.transpose()))
}

/// Two-mode block of [`covariance_numeric`].
pub fn pair_covariance_numeric(potential: &DMatrix<f64>, t: f64, i: usize, j: usize) -> Result<TwoModeCovariance> {
    Ok(covariance_numeric(potential, t)?.pair(i, j))
}
