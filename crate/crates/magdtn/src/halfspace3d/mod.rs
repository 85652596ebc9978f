//! The half-space angular model: `λ(ϑ)` of the trace quotient for the
//! operator `D₁² + D₂² + (τ + cosϑ x₁ - sinϑ x₂)²`, its endpoint values and
//! lower bound, and the assembled three-dimensional leading-order functional
//! over sampled surface data.

mod band;
mod model;

use crate::model1d;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HalfspaceError {
    #[error("argument outside supported range: {0}")]
    OutOfRange(String),
    #[error("zero magnetic field vector")]
    ZeroField,
    #[error("no surface samples supplied")]
    EmptySamples,
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error(transparent)]
    Model(#[from] model1d::Model1dError),
}

pub type Result<T> = std::result::Result<T, HalfspaceError>;

/// Result of one angular-model solve.
#[derive(Debug, Clone, Copy)]
pub struct AngleModelResult {
    pub theta: f64,
    /// Tangential frequency; fixed to zero for ϑ > 0 by the translation
    /// invariance of the model.
    pub tau: f64,
    pub lambda: f64,
    /// Box size and grid intervals per direction actually used.
    pub box_size: f64,
    pub grid_points: usize,
    /// `g(ϑ) = α̂ cos^{5/2}ϑ + sin²ϑ`.
    pub lower_bound: f64,
    /// Set when the minimizer keeps more than 1e-8 of its mass within two
    /// cells of the artificial edges (result reported anyway).
    pub truncation_warning: bool,
}

/// One sampled boundary point of a 3D surface with its field data.
#[derive(Debug, Clone, Copy)]
pub struct SurfaceSample {
    pub id: usize,
    pub normal: [f64; 3],
    pub field_vector: [f64; 3],
    pub field_norm: f64,
    pub theta: f64,
}

impl SurfaceSample {
    /// Build a sample from raw field and normal vectors.
    pub fn new(id: usize, field_vector: [f64; 3], normal: [f64; 3]) -> Result<SurfaceSample> {
        let (theta, field_norm) = theta_from_field(field_vector, normal)?;
        Ok(SurfaceSample { id, normal, field_vector, field_norm, theta })
    }
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Angle `ϑ ∈ [0, π/2]` between the field and the boundary plane, folded
/// into the fundamental range: `|sin ϑ| = |⟨H, ν⟩|/|H|`.
pub fn theta_from_field(h: [f64; 3], nu: [f64; 3]) -> Result<(f64, f64)> {
    let norm_h = dot3(h, h).sqrt();
    if norm_h == 0.0 {
        return Err(HalfspaceError::ZeroField);
    }
    let norm_nu = dot3(nu, nu).sqrt();
    if (norm_nu - 1.0).abs() > 1e-12 {
        return Err(HalfspaceError::OutOfRange(format!(
            "normal must be a unit vector, |nu| = {norm_nu}"
        )));
    }
    let s = (dot3(h, nu).abs() / norm_h).min(1.0);
    Ok((s.asin(), norm_h))
}

/// Lower bound `g(ϑ) = α̂ (cos ϑ)^{5/2} + (sin ϑ)²`.
pub fn lower_bound_g(theta: f64) -> Result<f64> {
    if !(0.0..=std::f64::consts::FRAC_PI_2 + 1e-12).contains(&theta) {
        return Err(HalfspaceError::OutOfRange(format!("theta must be in [0, π/2], got {theta}")));
    }
    let ah = model1d::constants()?.alpha_hat;
    Ok(ah * theta.cos().max(0.0).powf(2.5) + theta.sin().powi(2))
}

/// `λ(ϑ)` on the truncated box `(0, L) × (-L, L)` with `N` grid intervals
/// per direction. ϑ = 0 reduces to the half-line quotient and returns the
/// model constant after a grid consistency check.
pub fn lambda_dn_theta(theta: f64, l: f64, n: usize) -> Result<AngleModelResult> {
    lambda_dn_theta_offset(theta, l, n, 0.0)
}

/// Same as [`lambda_dn_theta`] with the x₂ window shifted by `off`
/// (translation-invariance checks).
pub fn lambda_dn_theta_offset(theta: f64, l: f64, n: usize, off: f64) -> Result<AngleModelResult> {
    if !(0.0..=std::f64::consts::FRAC_PI_2 + 1e-12).contains(&theta) {
        return Err(HalfspaceError::OutOfRange(format!("theta must be in [0, π/2], got {theta}")));
    }
    if l < 12.0 || n < 200 {
        return Err(HalfspaceError::OutOfRange(format!(
            "need L >= 12 and N >= 200, got L={l}, N={n}"
        )));
    }
    let lower_bound = lower_bound_g(theta)?;
    if theta == 0.0 {
        // The τ-family reduces to the 1D half-line quotient; the 2D grid is
        // bypassed and the model constant returned once the reduced solve
        // agrees with it on this grid.
        let ah = model1d::constants()?.alpha_hat;
        let reduced = model::one_dim_reduced(l, n)?;
        if (reduced - ah).abs() > 5e-3 {
            return Err(HalfspaceError::Numerical(format!(
                "1D reduction {reduced} is inconsistent with the model constant {ah}"
            )));
        }
        return Ok(AngleModelResult {
            theta,
            tau: 0.0,
            lambda: ah,
            box_size: l,
            grid_points: n,
            lower_bound,
            truncation_warning: false,
        });
    }
    let (ct, st) = (theta.cos(), theta.sin());
    let sol = model::lowest_trace_eigenvalue(
        l,
        n,
        n,
        off,
        move |x1, x2| (ct * x1 - st * x2).powi(2),
        0x6d61_6764_746e,
    )?;
    Ok(AngleModelResult {
        theta,
        tau: 0.0,
        lambda: sol.lambda,
        box_size: l,
        grid_points: n,
        lower_bound,
        truncation_warning: sol.tail_mass > 1e-8,
    })
}

/// Evaluate `λ(ϑ)` on a uniform ϑ grid of `steps` nodes covering [0, π/2];
/// nodes are independent jobs merged by index.
pub fn angle_table(steps: usize, l: f64, n: usize) -> Result<Vec<AngleModelResult>> {
    if steps < 2 {
        return Err(HalfspaceError::OutOfRange("need at least 2 angle nodes".into()));
    }
    (0..steps)
        .into_par_iter()
        .map(|k| {
            let theta = std::f64::consts::FRAC_PI_2 * k as f64 / (steps - 1) as f64;
            lambda_dn_theta(theta, l, n)
        })
        .collect()
}

/// Monotone cubic (Fritsch–Carlson) interpolant through `(x, y)` nodes.
pub(crate) struct MonotoneCubic {
    x: Vec<f64>,
    y: Vec<f64>,
    m: Vec<f64>,
}

impl MonotoneCubic {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> MonotoneCubic {
        let n = x.len();
        assert!(n >= 2, "need at least two nodes");
        let mut d = vec![0.0; n - 1];
        for i in 0..n - 1 {
            d[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
        }
        let mut m = vec![0.0; n];
        m[0] = d[0];
        m[n - 1] = d[n - 2];
        for i in 1..n - 1 {
            m[i] = if d[i - 1] * d[i] <= 0.0 { 0.0 } else { 0.5 * (d[i - 1] + d[i]) };
        }
        // Fritsch–Carlson limiter.
        for i in 0..n - 1 {
            if d[i] == 0.0 {
                m[i] = 0.0;
                m[i + 1] = 0.0;
            } else {
                let a = m[i] / d[i];
                let b = m[i + 1] / d[i];
                let s = a * a + b * b;
                if s > 9.0 {
                    let t = 3.0 / s.sqrt();
                    m[i] = t * a * d[i];
                    m[i + 1] = t * b * d[i];
                }
            }
        }
        MonotoneCubic { x, y, m }
    }

    pub fn eval(&self, xq: f64) -> f64 {
        let n = self.x.len();
        if xq <= self.x[0] {
            return self.y[0];
        }
        if xq >= self.x[n - 1] {
            return self.y[n - 1];
        }
        let mut i = self.x.partition_point(|&v| v <= xq) - 1;
        i = i.min(n - 2);
        let h = self.x[i + 1] - self.x[i];
        let t = (xq - self.x[i]) / h;
        let h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
        let h10 = t * (1.0 - t) * (1.0 - t);
        let h01 = t * t * (3.0 - 2.0 * t);
        let h11 = t * t * (t - 1.0);
        h00 * self.y[i] + h10 * h * self.m[i] + h01 * self.y[i + 1] + h11 * h * self.m[i + 1]
    }
}

/// Leading-order 3D functional:
/// `√b · min over samples of λ(ϑ(x)) |B(x)|^{1/2}`, with `λ(ϑ)` interpolated
/// from a precomputed angle table (≥ 33 nodes).
pub fn leading_3d(samples: &[SurfaceSample], b: f64, table: &[AngleModelResult]) -> Result<f64> {
    if samples.is_empty() {
        return Err(HalfspaceError::EmptySamples);
    }
    if table.len() < 33 {
        return Err(HalfspaceError::OutOfRange(format!(
            "angle table needs at least 33 nodes, got {}",
            table.len()
        )));
    }
    let xs: Vec<f64> = table.iter().map(|r| r.theta).collect();
    let ys: Vec<f64> = table.iter().map(|r| r.lambda).collect();
    if !xs.windows(2).all(|w| w[1] > w[0]) {
        return Err(HalfspaceError::OutOfRange("angle table nodes must increase".into()));
    }
    let interp = MonotoneCubic::new(xs, ys);
    let min = samples
        .iter()
        .map(|s| interp.eval(s.theta) * s.field_norm.sqrt())
        .fold(f64::INFINITY, f64::min);
    Ok(b.sqrt() * min)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angle_folding() {
        let (t, n) = theta_from_field([0.0, 1.0, 0.0], [1.0, 0.0, 0.0]).unwrap();
        assert_eq!(t, 0.0);
        assert_eq!(n, 1.0);
        let (t, _) = theta_from_field([1.0, 0.0, 0.0], [1.0, 0.0, 0.0]).unwrap();
        assert!((t - std::f64::consts::FRAC_PI_2).abs() < 1e-14);
        let s = 3.0 / 2.0_f64.sqrt();
        let (t, n) = theta_from_field([s, s, 0.0], [1.0, 0.0, 0.0]).unwrap();
        assert!((t - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
        assert!((n - 3.0).abs() < 1e-12);
    }

    #[test]
    fn zero_field_rejected() {
        assert!(matches!(
            theta_from_field([0.0; 3], [1.0, 0.0, 0.0]),
            Err(HalfspaceError::ZeroField)
        ));
    }

    #[test]
    fn lower_bound_endpoints() {
        let ah = crate::model1d::constants().unwrap().alpha_hat;
        assert!((lower_bound_g(0.0).unwrap() - ah).abs() < 1e-12);
        assert!((lower_bound_g(std::f64::consts::FRAC_PI_2).unwrap() - 1.0).abs() < 1e-12);
        let quarter = lower_bound_g(std::f64::consts::FRAC_PI_4).unwrap();
        assert!((quarter - (ah * 2.0_f64.powf(-1.25) + 0.5)).abs() < 1e-12);
    }

    #[test]
    fn theta_zero_returns_model_constant() {
        let r = lambda_dn_theta(0.0, 16.0, 400).unwrap();
        let ah = crate::model1d::constants().unwrap().alpha_hat;
        assert_eq!(r.lambda, ah);
        assert!(!r.truncation_warning);
    }

    #[test]
    fn arithmetic_assembly_of_leading_functional() {
        // Single sample at ϑ = π/2, |B| = 4, b = 9 → 1·2·3 = 6.
        let table: Vec<AngleModelResult> = (0..33)
            .map(|k| {
                let theta = std::f64::consts::FRAC_PI_2 * k as f64 / 32.0;
                AngleModelResult {
                    theta,
                    tau: 0.0,
                    lambda: if k == 32 { 1.0 } else { 0.5 + 0.5 * theta },
                    box_size: 16.0,
                    grid_points: 400,
                    lower_bound: 0.0,
                    truncation_warning: false,
                }
            })
            .collect();
        let mut s = SurfaceSample::new(0, [8.0, 0.0, 0.0], [1.0, 0.0, 0.0]).unwrap();
        s.field_norm = 4.0;
        let v = leading_3d(&[s], 9.0, &table).unwrap();
        assert!((v - 6.0).abs() < 1e-12, "got {v}");
    }

    #[test]
    fn monotone_cubic_is_monotone_on_monotone_data() {
        let x: Vec<f64> = (0..20).map(|i| i as f64).collect();
        let y: Vec<f64> = x.iter().map(|v| (v * 0.3).tanh()).collect();
        let f = MonotoneCubic::new(x, y);
        let mut prev = f.eval(0.0);
        for k in 1..400 {
            let v = f.eval(19.0 * k as f64 / 399.0);
            assert!(v >= prev - 1e-12);
            prev = v;
        }
    }
}
