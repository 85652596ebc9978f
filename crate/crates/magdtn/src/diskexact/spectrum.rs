//! Per-mode D-to-N values and spectrum assembly over a mode window.

use super::radial::{exterior_log_derivative, interior_log_derivative, Sweep};
use super::{
    DiskError, DtNSpectrum, FieldProfile, MethodTag, RadialProblem, Result, Side, SpectrumMeta,
};
use rayon::prelude::*;

const RTOL: f64 = 1e-13;

/// The single D-to-N eigenvalue carried by angular mode `p.mode`.
pub fn dtn_disk_mode(p: &RadialProblem) -> Result<f64> {
    p.validate()?;
    let sweep = match p.side {
        Side::Interior => interior_log_derivative(p, 0.0, RTOL)?,
        Side::Exterior => exterior_log_derivative(p, 0.0, RTOL)?,
    };
    match sweep {
        Sweep::Value(y) => Ok(match p.side {
            Side::Interior => y,
            Side::Exterior => -y,
        }),
        Sweep::PoleAt(r) => Err(DiskError::NonConvergence(format!(
            "harmonic radial solution crossed zero at r={r} (mode {})",
            p.mode
        ))),
    }
}

/// Window half-width used when the caller does not pick one.
pub fn default_mode_window(b: f64) -> i64 {
    (3.0 * b.abs().sqrt()).ceil() as i64 + 10
}

/// Modes are centered on the flux drift `b A_θ(R) R` (`bR²/2` for a constant
/// field), where the minimizer lives.
fn window_modes(radius: f64, b: f64, window: i64, field: &FieldProfile) -> Vec<i64> {
    let center = (field.a(b, radius) * radius).round() as i64;
    (center - window..=center + window).collect()
}

fn assemble(
    radius: f64,
    b: f64,
    count: usize,
    window: i64,
    side: Side,
    field: FieldProfile,
) -> Result<DtNSpectrum> {
    if count == 0 {
        return Err(DiskError::InvalidProblem("count must be at least 1".into()));
    }
    let modes = window_modes(radius, b, window, &field);
    let mut per_mode: Vec<(i64, f64)> = modes
        .par_iter()
        .map(|&m| {
            let p = RadialProblem { radius, b, mode: m, side, field: field.clone() };
            dtn_disk_mode(&p).map(|v| (m, v))
        })
        .collect::<Result<Vec<_>>>()?;
    // Deterministic order: by value, ties by mode index.
    per_mode.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
    if per_mode.len() < count {
        return Err(DiskError::WindowTooSmall(format!(
            "window {window} provides {} modes < count {count}",
            per_mode.len()
        )));
    }
    // A posteriori: both window edges must exceed the count-th value.
    let kth = per_mode[count - 1].1;
    let lo_edge = per_mode.iter().find(|(m, _)| *m == modes[0]).unwrap().1;
    let hi_edge = per_mode.iter().find(|(m, _)| *m == *modes.last().unwrap()).unwrap().1;
    if lo_edge <= kth || hi_edge <= kth {
        return Err(DiskError::WindowTooSmall(format!(
            "edge values ({lo_edge:.6}, {hi_edge:.6}) do not exceed the {count}-th smallest {kth:.6}"
        )));
    }
    let (labels, eigenvalues): (Vec<i64>, Vec<f64>) = per_mode.into_iter().take(count).unzip();
    Ok(DtNSpectrum {
        eigenvalues,
        labels,
        meta: SpectrumMeta {
            b,
            radius,
            method: match side {
                Side::Interior => MethodTag::RadialInterior,
                Side::Exterior => MethodTag::RadialExterior,
            },
            tolerance: RTOL,
            mode_window: window,
        },
    })
}

/// The `count` smallest interior D-to-N eigenvalues over the mode window.
pub fn dtn_disk_spectrum(radius: f64, b: f64, count: usize, window: i64) -> Result<DtNSpectrum> {
    assemble(radius, b, count, window, Side::Interior, FieldProfile::Constant)
}

/// Interior spectrum under a radial field profile.
pub fn dtn_disk_spectrum_radial(
    radius: f64,
    b: f64,
    count: usize,
    window: i64,
    field: FieldProfile,
) -> Result<DtNSpectrum> {
    assemble(radius, b, count, window, Side::Interior, field)
}

/// The `count` smallest exterior D-to-N eigenvalues over the mode window.
pub fn dtn_disk_exterior(radius: f64, b: f64, count: usize, window: i64) -> Result<DtNSpectrum> {
    assemble(radius, b, count, window, Side::Exterior, FieldProfile::Constant)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn steklov_modes_are_m_over_r() {
        // b = 0 reduces to the Steklov problem: v = r^{|m|}, value |m|/R.
        for &(radius, m) in &[(1.0, 3i64), (1.0, -3), (2.0, 5), (0.7, 0), (1.0, 1)] {
            let v = dtn_disk_mode(&RadialProblem::interior(radius, 0.0, m)).unwrap();
            assert!(
                (v - m.abs() as f64 / radius).abs() < 1e-10,
                "R={radius} m={m}: {v}"
            );
        }
    }

    #[test]
    fn steklov_spectrum_of_unit_disk() {
        let s = dtn_disk_spectrum(1.0, 0.0, 5, 10).unwrap();
        let want = [0.0, 1.0, 1.0, 2.0, 2.0];
        for (got, want) in s.eigenvalues.iter().zip(want) {
            assert!((got - want).abs() < 1e-10, "{:?}", s.eigenvalues);
        }
    }

    #[test]
    fn window_too_small_is_detected() {
        assert!(matches!(
            dtn_disk_spectrum(1.0, 0.0, 8, 3),
            Err(DiskError::WindowTooSmall(_))
        ));
    }

    #[test]
    fn field_sign_is_a_relabeling() {
        let plus = dtn_disk_spectrum(1.0, 12.0, 4, 21).unwrap();
        let minus = dtn_disk_spectrum(1.0, -12.0, 4, 21).unwrap();
        for (a, b) in plus.eigenvalues.iter().zip(&minus.eigenvalues) {
            assert!((a - b).abs() < 1e-9, "{plus:?} vs {minus:?}");
        }
        for (a, b) in plus.labels.iter().zip(&minus.labels) {
            assert_eq!(*a, -*b);
        }
    }

    #[test]
    fn rejects_oversized_mode() {
        let p = RadialProblem::interior(1.0, 0.0, 2101);
        assert!(matches!(dtn_disk_mode(&p), Err(DiskError::ModeOverflow(_))));
    }
}
