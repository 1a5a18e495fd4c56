// SPDX-License-Identifier: Apache-2.0

//! Entanglement dynamics of bosonic modes on finite symmetric graphs.
//!
//! A set of unit-frequency harmonic oscillators sits on the vertices of a
//! graph and is coupled by springs along its edges. Starting from the
//! uncorrelated vacuum (covariance matrix `Γ(0) = I`), the state stays
//! Gaussian and evolves in closed form through the eigendecomposition of the
//! potential matrix `V = I + c·L`. For any pair of symmetry-equivalent
//! vertices the reduced two-mode state is symmetric, and its entanglement of
//! formation follows from three determinants.
//!
//! | Module | Purpose |
//! |--------|---------|
//! | [`graph`] | graphs, named families, edge files, shortest-path classes |
//! | [`spectral`] | symmetric eigendecomposition and matrix functions |
//! | [`dynamics`] | potential, propagator, covariance evolution, pair reduction |
//! | [`entanglement`] | symplectic invariants, standard form, δ, EoF, maxima |
//! | [`oracle`] | series matrix exponential used to cross-check the closed form |
//!
//! ```
//! use gaussnet_core::{dynamics, entanglement, graph::Graph};
//!
//! let g = Graph::two();
//! let sys = dynamics::spectral_system(&g, 2.0).unwrap();
//! let t = std::f64::consts::FRAC_PI_2 / 5f64.sqrt();
//! let pair = dynamics::pair_reduction(&sys, t, 0, 1).unwrap();
//! let eval = entanglement::evaluate(&pair).unwrap();
//! assert!((eval.eof.eof - 0.701882).abs() < 1e-6);
//! ```

pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod spectral;

pub use error::{Error, ErrorKind, Result};
