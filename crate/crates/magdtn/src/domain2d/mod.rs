//! General smooth star-shaped planar domains: boundary geometry, grid
//! discretization of the magnetic form, the discrete D-to-N map as a Schur
//! complement over boundary unknowns, and the weak-field coefficient.
//!
//! The discretization is a boundary-fitted polar-type grid (radial rings ×
//! angular rays, graded toward the boundary) carrying an isoparametric
//! bilinear discretization of the sesquilinear form
//! `∫ (-i∇-bA)u · conj((-i∇-bA)v) dx`. Each cell is assembled in a local
//! gauge centered at the cell (the rotational potential reconstructed from
//! the field along radii), then conjugated back by nodal phases. A global
//! gauge change `A → A + ∇ψ` therefore conjugates the assembled matrix by a
//! diagonal unitary exactly, and spectra are gauge-invariant to roundoff.

mod assemble;
mod domain;
mod field;
mod mesh;
mod schur;
mod solver;
mod weakfield;

pub use assemble::{assemble, GridOperator};
pub use domain::{build_domain, DomainSpec};
pub use field::{FieldKind, FieldSpec};
pub use schur::dtn_schur_eigs;

/// Dev aid: expose the dense Schur complement.
pub fn debug_schur(op: &GridOperator) -> Result<nalgebra::DMatrix<num_complex::Complex64>> {
    schur::schur_complement(op)
}
pub use weakfield::weak_field_coefficient;

use crate::diskexact::DtNSpectrum;
use crate::model1d::{self, Model1dError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DomainError {
    #[error("invalid boundary: {0}")]
    InvalidBoundary(String),
    #[error("mesh construction failed: {0}")]
    MeshFailure(String),
    #[error("interior factorization failed: {0} (mesh or field pathology)")]
    FactorizationFailure(String),
    #[error("eigensolver failed to converge: {0}")]
    ConvergenceFailure(String),
    #[error("curvature assumption violated: {0}")]
    AssumptionViolation(String),
    #[error(transparent)]
    Model(#[from] Model1dError),
}

pub type Result<T> = std::result::Result<T, DomainError>;

/// Predicted low-eigenvalue gap `λ₂ - λ₁ ≈ 2 c_*(k₂) b^{-1/4}` for a domain
/// with a unique non-degenerate curvature maximum.
pub fn splitting_gap_prediction(domain: &DomainSpec, b: f64) -> Result<f64> {
    let k2 = domain.curvature_k2().ok_or_else(|| {
        DomainError::AssumptionViolation(
            "the curvature maximum is not unique and non-degenerate".into(),
        )
    })?;
    Ok(2.0 * model1d::splitting_c_star(k2)? * b.powf(-0.25))
}

/// Convenience wrapper: assemble, reduce and solve for the `count` smallest
/// D-to-N eigenvalues of a domain/field/strength triple.
pub fn dtn_spectrum(
    domain: &DomainSpec,
    field: &FieldSpec,
    b: f64,
    h: f64,
    count: usize,
    seed: u64,
) -> Result<DtNSpectrum> {
    let op = assemble(domain, field, b, h)?;
    dtn_schur_eigs(&op, count, seed)
}
