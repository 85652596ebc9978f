//! Numerical laboratory for magnetic Dirichlet-to-Neumann (D-to-N) spectra.
//!
//! The crate computes D-to-N eigenvalues of the magnetic Schrödinger operator
//! `(-i∇ - bA)²` three ways — exact radial models on the disk and the exterior
//! of the disk, Schur-complement boundary reductions of grid discretizations on
//! general star-shaped planar domains, and reduced half-line / half-space model
//! operators — and evaluates the asymptotic expansions that tie them together.
//!
//! Module map:
//! - [`specfun`]: parabolic cylinder and modified Bessel functions, bracketed
//!   root-finding and adaptive quadrature.
//! - [`model1d`]: the half-line Robin harmonic oscillator, the curve `Θ(γ)`,
//!   the profile `f_*`, and the model constants `α`, `α̂`, `Θ₀`, `γ₀`.
//! - [`diskexact`]: per-angular-mode radial solves for disk / exterior-disk
//!   D-to-N and Robin spectra (the high-precision oracle).
//! - [`domain2d`]: boundary-fitted grids on star-shaped domains, the discrete
//!   D-to-N map as a Schur complement, and the weak-field coefficient.
//! - [`halfspace3d`]: the half-space angular model `λ(ϑ)` and the assembled
//!   three-dimensional leading-order functional.
//! - [`asympt`]: expansion evaluators and sweep comparison reports.

pub mod asympt;
pub mod diskexact;
pub mod domain2d;
pub mod halfspace3d;
pub mod model1d;
pub mod specfun;
