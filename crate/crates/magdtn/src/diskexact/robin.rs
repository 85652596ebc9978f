//! Robin eigenvalues on the disk and the D-to-N duality crossing.
//!
//! The mode-`m` Robin problem asks for the lowest `μ` with
//! `-v'' - v'/r + (m/r - br/2)² v = μ v` and `v'(R) = -√b γ v(R)`. It is
//! solved by shooting in `μ`: the boundary log-derivative of the regular
//! solution is strictly decreasing in `μ` below the first Dirichlet
//! eigenvalue, so the shooting function has a unique bracketed root.

use super::radial::{interior_log_derivative, Sweep};
use super::spectrum::{default_mode_window, dtn_disk_mode};
use super::{DiskError, RadialProblem, Result, Side};
use rayon::prelude::*;

const RTOL: f64 = 1e-12;

/// Shooting function `G(μ) = v'(R)/v(R) + √b γ`; `None` means the solution
/// crossed zero before `R`, i.e. `μ` is already past the first Dirichlet
/// eigenvalue of the mode.
fn shoot(p: &RadialProblem, gamma: f64, mu: f64) -> Result<Option<f64>> {
    match interior_log_derivative(p, mu, RTOL)? {
        Sweep::Value(y) => Ok(Some(y + p.b.abs().sqrt() * gamma)),
        Sweep::PoleAt(_) => Ok(None),
    }
}

/// Lowest Robin eigenvalue of one angular mode.
pub fn robin_disk_mode(p: &RadialProblem, gamma: f64) -> Result<f64> {
    p.validate()?;
    if p.side != Side::Interior {
        return Err(DiskError::InvalidProblem("Robin modes are interior problems".into()));
    }
    let sb = p.b.abs().sqrt();
    // μ > -(√b γ⁻)² for a nonnegative potential; padded below.
    let mut lo = -(sb * gamma.min(0.0)).powi(2) - 2.0 * sb * gamma.abs() - 2.0;
    let mut g_lo = shoot(p, gamma, lo)?
        .ok_or_else(|| DiskError::NonConvergence("scan floor is above a Dirichlet value".into()))?;
    if g_lo <= 0.0 {
        // Extend downward until the shooting function is positive.
        for _ in 0..60 {
            lo = 2.0 * lo - 1.0;
            g_lo = match shoot(p, gamma, lo)? {
                Some(g) => g,
                None => return Err(DiskError::NonConvergence("no positive floor found".into())),
            };
            if g_lo > 0.0 {
                break;
            }
        }
        if g_lo <= 0.0 {
            return Err(DiskError::NonConvergence("shooting floor search failed".into()));
        }
    }
    // Walk up until G turns negative or the solution develops a zero.
    let mut hi = lo;
    let mut step = 1.0_f64.max(0.5 * sb);
    let mut g_hi = g_lo;
    for _ in 0..200 {
        hi += step;
        match shoot(p, gamma, hi)? {
            Some(g) if g > 0.0 => {
                g_hi = g;
                step *= 1.6;
                continue;
            }
            _ => break,
        }
    }
    let _ = g_hi;
    // Bisection on [lo, hi]; pole counts as the negative side.
    let mut a = lo;
    let mut b_end = hi;
    for _ in 0..200 {
        if (b_end - a).abs() <= 1e-12 * (1.0 + a.abs().max(b_end.abs())) {
            break;
        }
        let mid = 0.5 * (a + b_end);
        match shoot(p, gamma, mid)? {
            Some(g) if g > 0.0 => a = mid,
            _ => b_end = mid,
        }
    }
    Ok(0.5 * (a + b_end))
}

/// j-th smallest Robin eigenvalue over the mode window at one `γ`.
fn robin_level(radius: f64, b: f64, gamma: f64, modes: &[i64], j: usize) -> Result<f64> {
    let mut values: Vec<f64> = modes
        .par_iter()
        .map(|&m| robin_disk_mode(&RadialProblem::interior(radius, b, m), gamma))
        .collect::<Result<Vec<_>>>()?;
    values.sort_by(f64::total_cmp);
    values.get(j - 1).copied().ok_or_else(|| {
        DiskError::WindowTooSmall(format!("window holds {} modes < j = {j}", values.len()))
    })
}

/// The unique `γ_j(b) < 0` where the j-th Robin level crosses zero; the
/// duality `λ_j = -√b γ_j(b)` connects it to the D-to-N spectrum.
pub fn gamma_crossing(radius: f64, b: f64, j: usize) -> Result<f64> {
    if !(b > 0.0) {
        return Err(DiskError::InvalidProblem(format!("gamma_crossing needs b > 0, got {b}")));
    }
    if j == 0 {
        return Err(DiskError::InvalidProblem("levels are 1-based".into()));
    }
    let window = default_mode_window(b);
    let center = (0.5 * b * radius * radius).round() as i64;
    let all_modes: Vec<i64> = (center - window..=center + window).collect();

    // Restrict the window to modes that can reach the lowest j levels: the
    // D-to-N per-mode values rank the modes near the crossing.
    let mut ranked: Vec<(i64, f64)> = all_modes
        .par_iter()
        .map(|&m| dtn_disk_mode(&RadialProblem::interior(radius, b, m)).map(|v| (m, v)))
        .collect::<Result<Vec<_>>>()?;
    ranked.sort_by(|x, y| x.1.total_cmp(&y.1).then(x.0.cmp(&y.0)));
    let keep = (j + 8).min(ranked.len());
    let mut modes: Vec<i64> = ranked[..keep].iter().map(|(m, _)| *m).collect();
    modes.sort_unstable();

    let sb = b.sqrt();
    let mut lo = -(ranked.last().unwrap().1 / sb) - 1.0;
    let mut hi = 0.0_f64;
    let f_hi = robin_level(radius, b, hi, &modes, j)?;
    if f_hi <= 0.0 {
        return Err(DiskError::NonConvergence(
            "Robin level at gamma = 0 is not positive".into(),
        ));
    }
    let mut f_lo = robin_level(radius, b, lo, &modes, j)?;
    for _ in 0..20 {
        if f_lo < 0.0 {
            break;
        }
        lo -= 1.0;
        f_lo = robin_level(radius, b, lo, &modes, j)?;
    }
    if f_lo >= 0.0 {
        return Err(DiskError::NonConvergence("no negative bracket end for gamma".into()));
    }
    // Bisection/secant to residual 1e-10 on the level itself.
    let mut a = lo;
    let mut c = hi;
    let mut fa = f_lo;
    let mut fc = f_hi;
    for i in 0..300 {
        let mid = if i % 2 == 0 && (fc - fa).abs() > 1e-300 {
            let s = c - fc * (c - a) / (fc - fa);
            if s > a && s < c {
                s
            } else {
                0.5 * (a + c)
            }
        } else {
            0.5 * (a + c)
        };
        let fm = robin_level(radius, b, mid, &modes, j)?;
        if fm.abs() <= 1e-10 {
            return Ok(mid);
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            c = mid;
            fc = fm;
        }
        if (c - a).abs() < 1e-15 * (1.0 + a.abs()) {
            break;
        }
    }
    Err(DiskError::NonConvergence(format!(
        "gamma crossing stalled for j={j}, b={b} on [{a}, {c}]"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumann_constant_mode_is_zero() {
        // b = 0, γ = 0, m = 0: the constant is a Neumann eigenfunction.
        let v = robin_disk_mode(&RadialProblem::interior(1.0, 0.0, 0), 0.0).unwrap();
        assert!(v.abs() < 1e-9, "got {v}");
    }

    #[test]
    fn robin_level_increases_in_gamma() {
        let p = RadialProblem::interior(1.0, 20.0, 10);
        let a = robin_disk_mode(&p, -0.6).unwrap();
        let b = robin_disk_mode(&p, -0.4).unwrap();
        assert!(b > a, "{a} vs {b}");
    }

    #[test]
    fn crossing_is_negative_and_ordered() {
        let g1 = gamma_crossing(1.0, 20.0, 1).unwrap();
        let g2 = gamma_crossing(1.0, 20.0, 2).unwrap();
        assert!(g1 < 0.0);
        assert!(g2 <= g1 + 1e-9, "g2={g2} g1={g1}");
    }
}
