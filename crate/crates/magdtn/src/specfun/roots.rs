//! Bracketed scalar root-finding and 1D minimization.

use super::{Result, SpecfunError};

const MAX_ITER: usize = 200;

/// A root located inside a sign-changing bracket.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BracketedRoot {
    /// Final enclosing interval, strictly containing `root`.
    pub lo: f64,
    pub hi: f64,
    pub root: f64,
    /// `|f(root)|` at the returned point; at most the requested tolerance.
    pub residual: f64,
}

fn enclose(root: f64, other: f64, residual: f64) -> BracketedRoot {
    let w = (other - root).abs().max(4.0 * f64::EPSILON * (1.0 + root.abs()));
    BracketedRoot { lo: root - w, hi: root + w, root, residual }
}

/// Brent's method on `[lo, hi]`; requires a sign change and stops once
/// `|f(root)| ≤ tol`. Deterministic for fixed inputs.
pub fn find_root<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<BracketedRoot> {
    if !(lo < hi) || !tol.is_finite() || tol <= 0.0 {
        return Err(SpecfunError::OutOfRange(format!(
            "find_root requires lo < hi and tol > 0, got [{lo}, {hi}], tol={tol}"
        )));
    }
    let mut a = lo;
    let mut b = hi;
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(enclose(a, b, 0.0));
    }
    if fb == 0.0 {
        return Ok(enclose(b, a, 0.0));
    }
    if fa.signum() == fb.signum() {
        return Err(SpecfunError::NoSignChange { lo, hi, flo: fa, fhi: fb });
    }

    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = b - a;

    for _ in 0..MAX_ITER {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let xtol = 2.0 * f64::EPSILON * b.abs() + f64::EPSILON;
        let xm = 0.5 * (c - b);
        if fb.abs() <= tol {
            return Ok(enclose(b, c, fb.abs()));
        }
        if xm.abs() <= xtol {
            break;
        }
        if e.abs() >= xtol && fa.abs() > fb.abs() {
            // Inverse quadratic interpolation / secant step.
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * xm * s, 1.0 - s)
            } else {
                let q = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0)),
                    (q - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            if 2.0 * p < (3.0 * xm * q - (xtol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > xtol { d } else { xtol.copysign(xm) };
        fb = f(b);
    }

    if fb.abs() <= tol {
        return Ok(enclose(b, c, fb.abs()));
    }
    Err(SpecfunError::NonConvergence(format!(
        "find_root stalled at x={b} with |f|={:e} > tol={tol:e}",
        fb.abs()
    )))
}

/// Bisection/secant hybrid driven by an `x`-tolerance instead of a residual
/// tolerance. Requires a sign change on `[lo, hi]`.
pub(crate) fn find_root_xtol<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    xtol: f64,
) -> Result<f64> {
    let mut a = lo;
    let mut b = hi;
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(SpecfunError::NoSignChange { lo, hi, flo: fa, fhi: fb });
    }
    for i in 0..400 {
        if (b - a).abs() <= xtol * (1.0 + a.abs().max(b.abs())) {
            break;
        }
        // Alternate secant and bisection steps; always keep the bracket.
        let mid = 0.5 * (a + b);
        let x = if i % 2 == 0 && (fb - fa).abs() > 0.0 {
            let s = b - fb * (b - a) / (fb - fa);
            if s > a.min(b) && s < a.max(b) {
                s
            } else {
                mid
            }
        } else {
            mid
        };
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
    }
    Ok(if fa.abs() < fb.abs() { a } else { b })
}

/// Brent 1D minimization on `[a, b]`; returns `(argmin, min)`.
pub(crate) fn brent_min<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, xtol: f64) -> (f64, f64) {
    const GOLD: f64 = 0.381_966_011_250_105;
    let (mut a, mut b) = if a < b { (a, b) } else { (b, a) };
    let mut x = a + GOLD * (b - a);
    let mut w = x;
    let mut v = x;
    let mut fx = f(x);
    let mut fw = fx;
    let mut fv = fx;
    let mut d: f64 = 0.0;
    let mut e: f64 = 0.0;

    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let tol1 = xtol * x.abs() + 1e-15;
        let tol2 = 2.0 * tol1;
        if (x - m).abs() <= tol2 - 0.5 * (b - a) {
            break;
        }
        let mut take_golden = true;
        if e.abs() > tol1 {
            // Parabolic fit through (v, w, x).
            let r = (x - w) * (fx - fv);
            let q0 = (x - v) * (fx - fw);
            let mut p = (x - v) * q0 - (x - w) * r;
            let mut q = 2.0 * (q0 - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            let etemp = e;
            e = d;
            if p.abs() < (0.5 * q * etemp).abs() && p > q * (a - x) && p < q * (b - x) {
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = tol1.copysign(m - x);
                }
                take_golden = false;
            }
        }
        if take_golden {
            e = if x < m { b - x } else { a - x };
            d = GOLD * e;
        }
        let u = if d.abs() >= tol1 { x + d } else { x + tol1.copysign(d) };
        let fu = f(u);
        if fu <= fx {
            if u < x {
                b = x;
            } else {
                a = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    (x, fx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two() {
        let r = find_root(|z| z * z - 2.0, 1.0, 2.0, 1e-12).unwrap();
        assert!((r.root - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!(r.residual <= 1e-12);
        assert!(r.lo < r.root && r.root < r.hi);
    }

    #[test]
    fn cosine_half_pi() {
        let r = find_root(|z: f64| z.cos(), 1.0, 2.0, 1e-12).unwrap();
        assert!((r.root - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn rejects_invalid_bracket() {
        assert!(matches!(
            find_root(|z| z * z + 1.0, -1.0, 1.0, 1e-10),
            Err(SpecfunError::NoSignChange { .. })
        ));
    }

    #[test]
    fn minimizer_quartic() {
        let (x, fx) = brent_min(|t: f64| (t - 0.3).powi(4) + 1.0, -2.0, 2.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-3);
        assert!((fx - 1.0).abs() < 1e-12);
    }
}
