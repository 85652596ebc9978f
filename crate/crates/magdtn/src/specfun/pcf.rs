//! Parabolic cylinder function `D_ν(z)` and its derivative.
//!
//! `D_ν` is the solution of `w'' + (ν + 1/2 - z²/4) w = 0` that decays like
//! `e^{-z²/4} z^ν` as `z → +∞`. Two evaluation branches cover the audited box
//! `ν ∈ [-5, 5]`, `z ∈ [-30, 30]`:
//!
//! - the confluent-hypergeometric connection formula (power series about the
//!   origin), used for `|z| ≤ 3.5` and for `z < -3.5` with `ν ≤ 0`, where the
//!   two Kummer terms carry the same sign or cancel by at most `e^{z²/4}`;
//! - the Laplace-type integral for base orders in `[-3, -1)` (positive
//!   integrand, no cancellation) combined with the upward recurrence
//!   `D_{μ+1}(z) = z D_μ(z) - μ D_{μ-1}(z)`, used everywhere else. The
//!   recurrence runs toward the dominant solution, so seed errors stay at
//!   the scale of the recessive seeds and never amplify relatively.
//!
//! Both branches carry the standard normalization, so they agree on the
//! overlap; property tests pin the ODE residual and the recurrence.

use super::gamma::recip_gamma;
use super::quad;
use super::{Result, SpecfunError};

const NU_MAX: f64 = 5.0;
const Z_MAX: f64 = 30.0;
const Z_SWITCH: f64 = 3.5;
const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Value and `z`-derivative of `D_ν` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PcfEval {
    pub nu: f64,
    pub z: f64,
    pub value: f64,
    pub derivative: f64,
}

/// `D_ν(z)` on the audited box.
pub fn pcf_d(nu: f64, z: f64) -> Result<f64> {
    Ok(pcf_eval(nu, z)?.value)
}

/// `d/dz D_ν(z)` on the audited box.
pub fn pcf_d_prime(nu: f64, z: f64) -> Result<f64> {
    Ok(pcf_eval(nu, z)?.derivative)
}

/// Evaluate `D_ν(z)` together with its derivative.
pub fn pcf_eval(nu: f64, z: f64) -> Result<PcfEval> {
    check_box(nu, z)?;
    let use_series = z <= Z_SWITCH;
    let (value, derivative) =
        if use_series { series_eval(nu, z)? } else { integral_eval(nu, z)? };
    Ok(PcfEval { nu, z, value, derivative })
}

fn check_box(nu: f64, z: f64) -> Result<()> {
    if !nu.is_finite() || !z.is_finite() || nu.abs() > NU_MAX + 1e-12 || z.abs() > Z_MAX + 1e-12 {
        return Err(SpecfunError::OutOfRange(format!(
            "pcf_d requires nu in [-5, 5] and z in [-30, 30], got nu={nu}, z={z}"
        )));
    }
    Ok(())
}

/// Kummer series `M(a, b, x)` for `x ≥ 0`.
fn kummer_m(a: f64, b: f64, x: f64) -> Result<f64> {
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    for k in 0..20_000 {
        let kf = k as f64;
        term *= (a + kf) * x / ((b + kf) * (kf + 1.0));
        sum += term;
        if term.abs() <= f64::EPSILON * sum.abs() && kf > a.abs() {
            return Ok(sum);
        }
    }
    Err(SpecfunError::NonConvergence(format!(
        "Kummer series M({a}, {b}, {x}) did not converge"
    )))
}

/// Connection-formula branch:
/// `D_ν(z) = 2^{ν/2} √π e^{-z²/4} [ M(-ν/2, 1/2, z²/2)/Γ((1-ν)/2)
///                                 - √2 z M((1-ν)/2, 3/2, z²/2)/Γ(-ν/2) ]`.
fn series_eval(nu: f64, z: f64) -> Result<(f64, f64)> {
    let x = 0.5 * z * z;
    let c = 2.0_f64.powf(0.5 * nu) * SQRT_PI;
    let p = recip_gamma(0.5 * (1.0 - nu));
    let q = std::f64::consts::SQRT_2 * recip_gamma(-0.5 * nu);

    let m1 = kummer_m(-0.5 * nu, 0.5, x)?;
    let m2 = kummer_m(0.5 * (1.0 - nu), 1.5, x)?;
    let gauss = (-0.25 * z * z).exp();
    let value = c * gauss * (p * m1 - q * z * m2);

    // d/dx M(a,b,x) = (a/b) M(a+1, b+1, x), applied with x = z²/2.
    let dm1 = -nu * kummer_m(1.0 - 0.5 * nu, 1.5, x)?;
    let dm2 = (1.0 - nu) / 3.0 * kummer_m(0.5 * (3.0 - nu), 2.5, x)?;
    let bracket_prime = p * dm1 * z - q * m2 - q * z * dm2 * z;
    let derivative = -0.5 * z * value + c * gauss * bracket_prime;

    Ok((value, derivative))
}

/// Laplace integral `D_ν(z) = e^{-z²/4}/Γ(-ν) ∫_0^∞ t^{-ν-1} e^{-t²/2 - zt} dt`
/// for `ν < 0`, evaluated after `t = u²` to soften the endpoint.
fn laplace_d(nu: f64, z: f64) -> Result<f64> {
    debug_assert!(nu < 0.0);
    let beta = -nu - 1.0;
    // t²/2 + zt = 760 bounds the integrand below e^-760.
    let t_max = -z + (z * z + 1520.0).sqrt();
    let u_max = t_max.sqrt();
    let f = |u: f64| {
        let t = u * u;
        2.0 * t.powf(beta) * u * (-0.5 * t * t - z * t).exp()
    };
    let coarse = quad::integrate(&f, 0.0, u_max, 1e-8)?;
    let integral = quad::integrate(&f, 0.0, u_max, 1e-14 * (1.0 + coarse.abs()))?;
    Ok((-0.25 * z * z).exp() * recip_gamma(-nu) * integral)
}

/// Large-`z` branch: integral representation at base orders in `[-3, -1)`,
/// then the three-term recurrence upward in ν.
fn integral_eval(nu: f64, z: f64) -> Result<(f64, f64)> {
    if nu < -1.0 {
        let d = laplace_d(nu, z)?;
        let d_down = laplace_d(nu - 1.0, z)?;
        return Ok((d, -0.5 * z * d + nu * d_down));
    }
    // Steps down to a base order nu - k in [-2, -1).
    let k = (nu.floor() as i64 + 2).max(1);
    let nu0 = nu - k as f64;
    let mut d_prev = laplace_d(nu0 - 1.0, z)?;
    let mut d_cur = laplace_d(nu0, z)?;
    for i in 0..k {
        let mu = nu0 + i as f64;
        let d_next = z * d_cur - mu * d_prev;
        d_prev = d_cur;
        d_cur = d_next;
    }
    Ok((d_cur, -0.5 * z * d_cur + nu * d_prev))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma::gamma;
    use approx::assert_relative_eq;

    #[test]
    fn d0_is_gaussian() {
        // ν = 0 solves the defining equation with D_0(z) = e^{-z²/4}.
        for &z in &[-8.0f64, -1.0, 0.0, 0.5, 3.0, 6.0, 10.0, 20.0] {
            let want = (-0.25 * z * z).exp();
            assert_relative_eq!(pcf_d(0.0, z).unwrap(), want, max_relative = 1e-12);
        }
    }

    #[test]
    fn d1_is_z_times_gaussian() {
        for &z in &[-4.0f64, -0.3, 1.0, 5.0, 9.0, 14.0] {
            let want = z * (-0.25 * z * z).exp();
            let got = pcf_d(1.0, z).unwrap();
            assert!((got - want).abs() <= 1e-12 * (1.0 + want.abs()), "z={z}: {got} vs {want}");
        }
    }

    #[test]
    fn branches_agree_on_overlap() {
        // The series and integral branches carry the same normalization.
        // Cancellation caps the series branch near z = 4, hence the scale.
        for &nu in &[-4.5, -2.0, -0.5, 0.3, 1.7, 3.2, 5.0] {
            for &z in &[2.8, 3.4, 4.0] {
                let (vs, ds) = series_eval(nu, z).unwrap();
                let (vi, di) = integral_eval(nu, z).unwrap();
                let scale = 1.0 + vs.abs();
                assert!((vs - vi).abs() < 2e-11 * scale, "nu={nu} z={z}: {vs} vs {vi}");
                assert!((ds - di).abs() < 2e-10 * (1.0 + ds.abs()), "nu={nu} z={z}: {ds} vs {di}");
            }
        }
    }

    #[test]
    fn recessive_normalization_at_large_z() {
        // D_ν(z) e^{z²/4} z^{-ν} → 1 with an O(1/z²) correction.
        for &nu in &[-3.0, -0.5, 0.5, 2.5, 5.0] {
            for &z in &[15.0, 20.0, 28.0] {
                let ratio = pcf_d(nu, z).unwrap() * (0.25 * z * z).exp() / z.powf(nu);
                assert!(
                    (ratio - 1.0).abs() < 40.0 / (z * z),
                    "nu={nu}, z={z}: ratio {ratio}"
                );
            }
        }
    }

    #[test]
    fn rejects_out_of_box() {
        assert!(matches!(pcf_d(5.5, 0.0), Err(SpecfunError::OutOfRange(_))));
        assert!(matches!(pcf_d(0.0, 31.0), Err(SpecfunError::OutOfRange(_))));
    }

    #[test]
    fn gamma_prefactors_match_known_special_values() {
        // D_ν(0) = 2^{ν/2} √π / Γ((1-ν)/2).
        for &nu in &[-2.3, -0.5, 0.7, 2.1] {
            let want = 2.0_f64.powf(0.5 * nu) * SQRT_PI / gamma(0.5 * (1.0 - nu));
            assert_relative_eq!(pcf_d(nu, 0.0).unwrap(), want, max_relative = 1e-13);
        }
    }
}
