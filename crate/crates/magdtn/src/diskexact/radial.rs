//! Adaptive Riccati integration of the radial mode equation.
//!
//! The mode equation is `-v'' - v'/r + ((m/r - a(r))² - μ) v = 0` with
//! `a(r) = b A_θ(r)`. Interior solves track the deviation
//! `z = v'/v - |m|/r` of the log-derivative from its Frobenius singular part
//! (so nothing blows up at the origin); exterior solves track `w = v'/v + a`
//! (so the Gaussian drift is removed).

use super::{DiskError, RadialProblem, Result, Side};

const BLOWUP: f64 = 1e10;
const MAX_STEPS: usize = 400_000;

/// Outcome of a Riccati sweep: either the final value or the radius at which
/// the log-derivative left the trust region, meaning `v` crossed zero.
pub(crate) enum Sweep {
    Value(f64),
    PoleAt(f64),
}

/// Dormand–Prince 5(4) for a scalar ODE `y' = f(r, y)`, integrating from
/// `r0` to `r1` in either direction. Deterministic for fixed inputs.
fn dopri5<F: Fn(f64, f64) -> f64>(f: &F, r0: f64, r1: f64, y0: f64, rtol: f64) -> Result<Sweep> {
    let dir = (r1 - r0).signum();
    let span = (r1 - r0).abs();
    if span == 0.0 {
        return Ok(Sweep::Value(y0));
    }
    let mut r = r0;
    let mut y = y0;
    let mut k1 = f(r, y);
    let mut h = dir * (span / 100.0).min(1e-3 * span.max(1.0));
    let atol = 1e-14;

    for _ in 0..MAX_STEPS {
        if !y.is_finite() || y.abs() > BLOWUP {
            return Ok(Sweep::PoleAt(r));
        }
        if (r1 - r) * dir <= 0.0 {
            return Ok(Sweep::Value(y));
        }
        if (r + h - r1) * dir > 0.0 {
            h = r1 - r;
        }

        let k2 = f(r + 0.2 * h, y + h * 0.2 * k1);
        let k3 = f(r + 0.3 * h, y + h * (3.0 / 40.0 * k1 + 9.0 / 40.0 * k2));
        let k4 = f(r + 0.8 * h, y + h * (44.0 / 45.0 * k1 - 56.0 / 15.0 * k2 + 32.0 / 9.0 * k3));
        let k5 = f(
            r + 8.0 / 9.0 * h,
            y + h * (19372.0 / 6561.0 * k1 - 25360.0 / 2187.0 * k2 + 64448.0 / 6561.0 * k3
                - 212.0 / 729.0 * k4),
        );
        let k6 = f(
            r + h,
            y + h * (9017.0 / 3168.0 * k1 - 355.0 / 33.0 * k2 + 46732.0 / 5247.0 * k3
                + 49.0 / 176.0 * k4
                - 5103.0 / 18656.0 * k5),
        );
        let y_new = y
            + h * (35.0 / 384.0 * k1 + 500.0 / 1113.0 * k3 + 125.0 / 192.0 * k4
                - 2187.0 / 6784.0 * k5
                + 11.0 / 84.0 * k6);
        let k7 = f(r + h, y_new);
        let err_est = h
            * (71.0 / 57600.0 * k1 - 71.0 / 16695.0 * k3 + 71.0 / 1920.0 * k4
                - 17253.0 / 339200.0 * k5
                + 22.0 / 525.0 * k6
                - 1.0 / 40.0 * k7);
        let scale = atol + rtol * y.abs().max(y_new.abs());
        let err = (err_est / scale).abs();

        if err <= 1.0 {
            r += h;
            y = y_new;
            k1 = k7;
        }
        let factor = if err > 0.0 { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) } else { 5.0 };
        h *= factor;
        if h.abs() < 1e-15 * span {
            return Err(DiskError::NonConvergence(format!("step underflow at r={r}")));
        }
    }
    Err(DiskError::NonConvergence(format!("step cap exceeded near r={r}")))
}

/// Log-derivative `v'(R)/v(R)` of the regular interior solution, with the
/// spectral shift `μ` (zero for the D-to-N extension).
pub(crate) fn interior_log_derivative(p: &RadialProblem, mu: f64, rtol: f64) -> Result<Sweep> {
    debug_assert_eq!(p.side, Side::Interior);
    let m = p.mode as f64;
    let m_abs = m.abs();
    let b = p.b;
    let field = p.field.clone();
    // z' = -z² - (2|m|+1) z / r + a² - 2 m a / r - μ
    let rhs = move |r: f64, z: f64| {
        let a = field.a(b, r);
        -z * z - (2.0 * m_abs + 1.0) * z / r + a * a - 2.0 * m * a / r - mu
    };
    let r0 = (1e-8_f64).max(p.radius * 1e-6);
    let z0 = (-m * b * p.field.beta0() - mu) / (2.0 * m_abs + 2.0) * r0;
    match dopri5(&rhs, r0, p.radius, z0, rtol)? {
        Sweep::Value(z) => Ok(Sweep::Value(z + m_abs / p.radius)),
        pole => Ok(pole),
    }
}

/// Log-derivative `v'(R)/v(R)` of the decaying exterior solution, integrated
/// inward from `r_max = R + 12/√b` with the Gaussian-decay seed.
pub(crate) fn exterior_log_derivative(p: &RadialProblem, mu: f64, rtol: f64) -> Result<Sweep> {
    debug_assert_eq!(p.side, Side::Exterior);
    if p.b.abs() <= 0.0 {
        return Err(DiskError::SeedFailure(
            "exterior problems need b != 0 for a decaying solution".into(),
        ));
    }
    let m = p.mode as f64;
    let b = p.b;
    let field = p.field.clone();
    let r_max = p.radius + 12.0 / p.b.abs().sqrt();
    // w = v'/v + a removes the leading drift; w(r_max) = (m-1)/r_max + O(tail).
    let rhs = move |r: f64, w: f64| {
        let a = field.a(b, r);
        let da = if r > 0.0 {
            // a'(r) = b β(r) - a(r)/r from the defining integral.
            b * match &field {
                super::FieldProfile::Constant => 1.0,
                super::FieldProfile::Radial { beta, .. } => beta(r),
            } - a / r
        } else {
            0.0
        };
        let y = w - a;
        let v_pot = (m / r - a) * (m / r - a);
        da + v_pot - mu - y / r - y * y
    };
    let w0 = (m - 1.0) / r_max;
    match dopri5(&rhs, r_max, p.radius, w0, rtol)? {
        Sweep::Value(w) => Ok(Sweep::Value(w - p.field.a(p.b, p.radius))),
        pole => Ok(pole),
    }
}
