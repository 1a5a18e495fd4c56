// SPDX-License-Identifier: Apache-2.0

//! Symmetric eigendecomposition of the potential matrix and functions of it.
//!
//! Every closed-form propagator in this crate is a matrix function
//! `f(W) = Ω · diag(f(ω_i)) · Ωᵀ` of the frequency matrix `W = √V`. Matrix
//! functions are basis-invariant, so degenerate spectra (the complete graph
//! has an (N-1)-fold degenerate band) need no special treatment.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};

const SYMMETRY_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct SpectralSystem {
    /// Orthonormal eigenvectors as columns.
    modes: DMatrix<f64>,
    /// Mode frequencies `ω_i = √λ_i`, ascending.
    omegas: DVector<f64>,
}

/// Diagonalizes a symmetric positive definite potential matrix.
pub fn eig_sym(v: &DMatrix<f64>) -> Result<SpectralSystem> {
    let (rows, cols) = v.shape();
    if rows != cols || rows == 0 {
        return Err(Error::NotSquare { rows, cols });
    }
    let scale = v.amax().max(1.0);
    let asym = (v - v.transpose()).amax();
    if asym > SYMMETRY_TOL * scale {
        return Err(Error::NotSymmetric(asym));
    }

    let eig = SymmetricEigen::new(v.clone());
    let mut order: Vec<usize> = (0..rows).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let lowest = eig.eigenvalues[order[0]];
    if lowest <= 0.0 {
        return Err(Error::NonPositiveEigenvalue(lowest));
    }
    let omegas = DVector::from_iterator(rows, order.iter().map(|&k| eig.eigenvalues[k].sqrt()));
    let modes = DMatrix::from_columns(&order.iter().map(|&k| eig.eigenvectors.column(k)).collect::<Vec<_>>());
    Ok(SpectralSystem { modes, omegas })
}

impl SpectralSystem {
    pub fn dim(&self) -> usize {
        self.omegas.len()
    }

    /// The orthogonal matrix `Ω` whose columns are the normal modes.
    pub fn modes(&self) -> &DMatrix<f64> {
        &self.modes
    }

    pub fn omegas(&self) -> &DVector<f64> {
        &self.omegas
    }

    pub fn max_omega(&self) -> f64 {
        self.omegas[self.dim() - 1]
    }

    /// `Ω · diag(f(ω_i)) · Ωᵀ`.
    pub fn matrix_function(&self, f: impl Fn(f64) -> f64) -> DMatrix<f64> {
        let n = self.dim();
        let mut scaled = self.modes.clone();
        for k in 0..n {
            let fk = f(self.omegas[k]);
            scaled.column_mut(k).scale_mut(fk);
        }
        let mut out = &scaled * self.modes.transpose();
        // Exact symmetry keeps downstream symmetry checks meaningful.
        for i in 0..n {
            for j in i + 1..n {
                let m = 0.5 * (out[(i, j)] + out[(j, i)]);
                out[(i, j)] = m;
                out[(j, i)] = m;
            }
        }
        out
    }

    /// `Σ_k Ω_ik Ω_jk f(ω_k)`, a single entry of [`matrix_function`] in O(N).
    ///
    /// [`matrix_function`]: SpectralSystem::matrix_function
    pub fn matrix_function_entry(&self, i: usize, j: usize, f: impl Fn(f64) -> f64) -> f64 {
        (0..self.dim())
            .map(|k| self.modes[(i, k)] * self.modes[(j, k)] * f(self.omegas[k]))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use approx::assert_relative_eq;

    fn potential(g: &Graph, c: f64) -> DMatrix<f64> {
        DMatrix::identity(g.n(), g.n()) + g.laplacian() * c
    }

    #[test]
    fn identity_spectrum() {
        for n in 1..6 {
            let s = eig_sym(&DMatrix::identity(n, n)).unwrap();
            assert!(s.omegas().iter().all(|&w| (w - 1.0).abs() < 1e-14));
            let q = s.modes();
            assert!((q.transpose() * q - DMatrix::identity(n, n)).amax() < 1e-12);
            assert!((s.matrix_function(|w| w) - DMatrix::identity(n, n)).amax() < 1e-12);
        }
    }

    #[test]
    fn two_vertex_frequencies() {
        for c in [0.5, 2.0, 8.3] {
            let s = eig_sym(&potential(&Graph::two(), c)).unwrap();
            assert_relative_eq!(s.omegas()[0], 1.0, epsilon = 1e-12);
            assert_relative_eq!(s.omegas()[1], (1.0 + 2.0 * c).sqrt(), epsilon = 1e-12);
        }
    }

    #[test]
    fn mean_field_frequencies() {
        for (n, c) in [(3, 1.0), (7, 0.25), (20, 1.0)] {
            let s = eig_sym(&potential(&Graph::complete(n), c)).unwrap();
            assert_relative_eq!(s.omegas()[0], 1.0, epsilon = 1e-12);
            let w = (1.0 + n as f64 * c).sqrt();
            for k in 1..n {
                assert_relative_eq!(s.omegas()[k], w, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn decomposition_residual() {
        for (g, c) in [(Graph::cube(), 5.0), (Graph::octahedron(), 10.0), (Graph::path(9), 3.3)] {
            let v = potential(&g, c);
            let s = eig_sym(&v).unwrap();
            let q = s.modes();
            let n = g.n();
            assert!((q.transpose() * q - DMatrix::identity(n, n)).amax() < 1e-10);
            let lam = DMatrix::from_diagonal(&s.omegas().map(|w| w * w));
            assert!((&v * q - q * lam).amax() < 1e-10 * v.amax());
            assert!((s.matrix_function(|w| w * w) - &v).amax() < 1e-10);
            assert!((s.matrix_function(|_| 1.0) - DMatrix::identity(n, n)).amax() < 1e-10);
            let f = s.matrix_function(|w| (0.37 * w).cos());
            assert!((&f * &v - &v * &f).amax() < 1e-9);
            assert_relative_eq!(s.matrix_function_entry(0, 1, |w| w.sin()), s.matrix_function(|w| w.sin())[(0, 1)], epsilon = 1e-13);
        }
    }

    #[test]
    fn cosine_of_two_vertex_potential() {
        let c = 2.0;
        let t = std::f64::consts::PI / (2.0 * 5f64.sqrt());
        let s = eig_sym(&potential(&Graph::two(), c)).unwrap();
        let f = s.matrix_function(|w| (w * t).cos());
        let mut ev: Vec<f64> = f.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        assert!(ev[0].abs() < 1e-12);
        assert_relative_eq!(ev[1], t.cos(), epsilon = 1e-12);
    }

    #[test]
    fn degenerate_band_is_basis_independent() {
        // For V = (1+Nc)I - cE: f(V) = f(ω)·I + (f(1) - f(ω))·E/N.
        let n = 9;
        let c = 1.7;
        let w = (1.0 + n as f64 * c).sqrt();
        let s = eig_sym(&potential(&Graph::complete(n), c)).unwrap();
        let fs: [fn(f64) -> f64; 3] = [|x| (2.1 * x).sin() / x, |x| x.powi(3), |x| (0.4 * x).cos().powi(2)];
        for f in fs {
            let closed = DMatrix::identity(n, n) * f(w) + DMatrix::from_element(n, n, (f(1.0) - f(w)) / n as f64);
            assert!((s.matrix_function(f) - closed).amax() < 1e-10);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let nonsym = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.4, 1.0]);
        assert!(matches!(eig_sym(&nonsym), Err(Error::NotSymmetric(_))));
        let indefinite = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]);
        assert!(matches!(eig_sym(&indefinite), Err(Error::NonPositiveEigenvalue(_))));
        let rect = DMatrix::<f64>::zeros(2, 3);
        assert!(matches!(eig_sym(&rect), Err(Error::NotSquare { .. })));
    }
}
