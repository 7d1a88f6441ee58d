//! Phases of nonstatic light waves in a static medium.
//!
//! A light wave confined to a medium with constant permittivity and
//! permeability can still evolve nonstatically: its envelope collapses and
//! expands periodically, governed by a positive time function `f(t)` built
//! from three constants `(c1, c2, c3)` with `c1*c2 - c3^2 = 1`. This crate
//! computes the resulting geometric, dynamical, and total phases for
//! coherent and Fock states of such a wave, evaluates the associated
//! wavefunctions on configuration-space grids, and cross-verifies every
//! closed form against independent numerical oracles (adaptive quadrature,
//! finite-difference Schrödinger residuals, gauge-invariance experiments).
//!
//! Layout:
//!
//! * [`params`] — nonstaticity parameters, wave/medium configuration,
//!   the nonstaticity measure, and angle normalization.
//! * [`timefunc`] — the time function `f(t)`, its derivatives, the
//!   governing nonlinear ODE residual, and the classical trajectory.
//! * [`phase`] — the branch-continuous phase time `T(t)`, the complex
//!   eigenvalue amplitude, the phase rates, and the closed-form phases
//!   with their linear/nonlinear decomposition (coherent and Fock).
//! * [`wavefunction`] — eigenfunctions, phase-carrying wavefunctions,
//!   expansion coefficients, and grid expectation values.
//! * [`verify`] — quadrature oracles, Schrödinger-residual checks,
//!   gauge-invariance checks, and constancy audits with machine-readable
//!   reports.
//! * [`quad`] — the adaptive Gauss–Kronrod integrator backing the oracles.
//! * [`config`] — plain-text `key = value` configuration files.
//!
//! With the default `parallel` feature, trajectory, sweep, and grid
//! evaluations fan out over a rayon thread pool; disabling the feature
//! yields a dependency-free sequential build with identical results.

pub mod config;
pub mod error;
pub mod exec;
pub mod params;
pub mod phase;
pub mod quad;
pub mod timefunc;
pub mod verify;
pub mod wavefunction;

pub use error::Error;
pub use params::{Amplitude, C3Branch, NonstaticityMeasure, NonstaticityParams, WaveConfig};
pub use phase::{ComplexAmplitude, GFunctions, PhaseSample};
pub use timefunc::TimeFunctionValue;
pub use wavefunction::FieldGrid;

/// Library version, recorded in run manifests and verification reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
