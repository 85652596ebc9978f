//! Exact per-angular-mode D-to-N and Robin spectra for the disk and the
//! exterior of the disk.
//!
//! With a radial gauge the magnetic harmonic extension separates into Fourier
//! modes `u = v(r) e^{imθ}`, and each mode carries exactly one D-to-N
//! eigenvalue `v'(R)/v(R)` (interior) or `-v'(R)/v(R)` (exterior). The radial
//! solves integrate the log-derivative (Riccati form) with an adaptive
//! embedded Runge–Kutta stepper, which keeps the dynamic range bounded even
//! when `u` itself grows like `e^{br²/4}`.

mod radial;
mod robin;
mod spectrum;

pub use robin::{gamma_crossing, robin_disk_mode};
pub use spectrum::{
    default_mode_window, dtn_disk_exterior, dtn_disk_mode, dtn_disk_spectrum,
    dtn_disk_spectrum_radial,
};

use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Hard cap on the angular mode index; together with `bR² ≤ 4000` it keeps
/// every internal quantity within f64 range.
pub const MODE_CAP: i64 = 2100;
/// Flux overflow guard.
pub const FLUX_CAP: f64 = 4000.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiskError {
    #[error("angular mode |m|={0} exceeds the supported cap {MODE_CAP}")]
    ModeOverflow(i64),
    #[error("invalid radial problem: {0}")]
    InvalidProblem(String),
    #[error("radial integration failed: {0}")]
    NonConvergence(String),
    #[error("no decaying exterior seed: {0}")]
    SeedFailure(String),
    #[error("mode window too small: {0}")]
    WindowTooSmall(String),
}

pub type Result<T> = std::result::Result<T, DiskError>;

/// Which side of the circle `r = R` the problem lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Interior,
    Exterior,
}

/// Radial magnetic field profile. The vector potential is the azimuthal
/// `A_θ(r) = (1/r) ∫_0^r β(ρ) ρ dρ`, which preserves mode separation.
#[derive(Clone)]
pub enum FieldProfile {
    /// `β ≡ 1`, i.e. `A_θ = r/2`.
    Constant,
    /// Smooth `β(r)` with its exact azimuthal potential supplied alongside.
    Radial {
        beta: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        a_theta: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    },
}

impl FieldProfile {
    /// Polynomial profile `β(r) = Σ c_k r^k` with the potential integrated
    /// term by term.
    pub fn radial_polynomial(coeffs: &[f64]) -> Self {
        let c: Vec<f64> = coeffs.to_vec();
        let c2 = c.clone();
        FieldProfile::Radial {
            beta: Arc::new(move |r| c.iter().enumerate().map(|(k, &a)| a * r.powi(k as i32)).sum()),
            a_theta: Arc::new(move |r| {
                c2.iter()
                    .enumerate()
                    .map(|(k, &a)| a * r.powi(k as i32 + 1) / (k as f64 + 2.0))
                    .sum()
            }),
        }
    }

    pub(crate) fn beta0(&self) -> f64 {
        match self {
            FieldProfile::Constant => 1.0,
            FieldProfile::Radial { beta, .. } => beta(0.0),
        }
    }

    /// `b · A_θ(r)` for field strength `b`.
    pub(crate) fn a(&self, b: f64, r: f64) -> f64 {
        match self {
            FieldProfile::Constant => 0.5 * b * r,
            FieldProfile::Radial { a_theta, .. } => b * a_theta(r),
        }
    }
}

impl fmt::Debug for FieldProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldProfile::Constant => write!(f, "Constant"),
            FieldProfile::Radial { .. } => write!(f, "Radial(..)"),
        }
    }
}

/// One radial mode problem on the disk of radius `R`.
#[derive(Debug, Clone)]
pub struct RadialProblem {
    pub radius: f64,
    pub b: f64,
    pub mode: i64,
    pub side: Side,
    pub field: FieldProfile,
}

impl RadialProblem {
    pub fn interior(radius: f64, b: f64, mode: i64) -> Self {
        RadialProblem { radius, b, mode, side: Side::Interior, field: FieldProfile::Constant }
    }

    pub fn exterior(radius: f64, b: f64, mode: i64) -> Self {
        RadialProblem { radius, b, mode, side: Side::Exterior, field: FieldProfile::Constant }
    }

    pub fn with_field(mut self, field: FieldProfile) -> Self {
        self.field = field;
        self
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0) || !self.radius.is_finite() || !self.b.is_finite() {
            return Err(DiskError::InvalidProblem(format!(
                "radius must be positive and finite, got R={}, b={}",
                self.radius, self.b
            )));
        }
        if self.mode.abs() > MODE_CAP {
            return Err(DiskError::ModeOverflow(self.mode));
        }
        if self.b.abs() * self.radius * self.radius > FLUX_CAP {
            return Err(DiskError::InvalidProblem(format!(
                "bR² = {} exceeds the overflow guard {FLUX_CAP}",
                self.b.abs() * self.radius * self.radius
            )));
        }
        Ok(())
    }
}

/// How a spectrum was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodTag {
    RadialInterior,
    RadialExterior,
    SchurGrid,
}

impl fmt::Display for MethodTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MethodTag::RadialInterior => write!(f, "radial-interior"),
            MethodTag::RadialExterior => write!(f, "radial-exterior"),
            MethodTag::SchurGrid => write!(f, "schur-grid"),
        }
    }
}

/// Sweep-level metadata attached to a computed spectrum.
#[derive(Debug, Clone)]
pub struct SpectrumMeta {
    pub b: f64,
    pub radius: f64,
    pub method: MethodTag,
    pub tolerance: f64,
    pub mode_window: i64,
}

/// Sorted D-to-N eigenvalues with per-eigenvalue mode labels.
#[derive(Debug, Clone)]
pub struct DtNSpectrum {
    pub eigenvalues: Vec<f64>,
    pub labels: Vec<i64>,
    pub meta: SpectrumMeta,
}

impl DtNSpectrum {
    pub fn lambda1(&self) -> f64 {
        self.eigenvalues[0]
    }
}
