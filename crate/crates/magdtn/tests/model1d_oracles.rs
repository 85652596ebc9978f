//! Independent oracles for the half-line model: a dense finite-difference
//! discretization with Sturm bisection, a direct quotient-family
//! minimization, the secular identities, and the moment closed forms.

use magdtn::model1d;
use magdtn::specfun::{integrate, pcf_d, pcf_eval};

/// Smallest generalized eigenvalue of the half-line Robin oscillator by a
/// dense finite-difference form and Sturm bisection on its tridiagonal.
/// Completely independent of the secular-equation solver.
fn fd_robin_eigenvalue(gamma: f64, xi: f64, t_max: f64, h: f64) -> f64 {
    let n = (t_max / h).round() as usize + 1;
    // Form matrices: stiffness + potential (lumped), Robin term at t = 0.
    let mut diag = vec![0.0_f64; n];
    let mut off = vec![0.0_f64; n - 1];
    let mut mass = vec![0.0_f64; n];
    for i in 0..n {
        let t = i as f64 * h;
        let w = if i == 0 || i == n - 1 { 0.5 * h } else { h };
        mass[i] = w;
        diag[i] += (t - xi) * (t - xi) * w;
        if i + 1 < n {
            diag[i] += 1.0 / h;
            diag[i + 1] += 1.0 / h;
            off[i] = -1.0 / h;
        }
    }
    diag[0] += gamma;
    // Symmetrize the pencil: T = M^{-1/2} A M^{-1/2} stays tridiagonal.
    let mut d = vec![0.0_f64; n];
    let mut e = vec![0.0_f64; n - 1];
    for i in 0..n {
        d[i] = diag[i] / mass[i];
        if i + 1 < n {
            e[i] = off[i] / (mass[i] * mass[i + 1]).sqrt();
        }
    }
    // Sturm count: eigenvalues below lambda = negative pivots of T - lambda.
    let count_below = |lambda: f64| -> usize {
        let mut count = 0;
        let mut q = d[0] - lambda;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..n {
            let qs = if q.abs() < 1e-300 { 1e-300_f64.copysign(q) } else { q };
            q = (d[i] - lambda) - e[i - 1] * e[i - 1] / qs;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    };
    let mut lo = -gamma * gamma - 2.0;
    let mut hi = 6.0;
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if count_below(mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Golden-section minimization over ξ of the dense oracle.
fn fd_theta(gamma: f64) -> f64 {
    let f = |xi: f64| fd_robin_eigenvalue(gamma, xi, 12.0, 1e-3);
    let (mut a, mut b) = (-0.5_f64, 3.5_f64);
    let phi = 0.618_033_988_749_894_9_f64;
    let mut x1 = b - phi * (b - a);
    let mut x2 = a + phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..40 {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        }
    }
    f1.min(f2)
}

#[test]
fn theta_matches_dense_discretization_oracle() {
    let oracle = fd_theta(1.0);
    let spectral = model1d::theta(1.0).unwrap();
    assert!(
        (oracle - spectral).abs() < 1e-5,
        "dense {oracle} vs secular {spectral}"
    );
}

#[test]
fn xi_at_one_consistent_with_theta_oracle() {
    let th = model1d::theta(1.0).unwrap();
    let xi = model1d::xi_of_gamma(1.0).unwrap();
    assert!((xi - (th + 1.0).sqrt()).abs() < 1e-6);
}

#[test]
fn boundary_value_cross_checked_against_dense_ground_state() {
    // |u_γ(0)|² from the dense generalized eigenproblem by inverse-power
    // iteration at γ = 1, versus the spectral path.
    let gamma = 1.0;
    let xi = model1d::xi_of_gamma(gamma).unwrap();
    let h = 2e-3_f64;
    let t_max = 14.0_f64;
    let n = (t_max / h).round() as usize + 1;
    let mut diag = vec![0.0_f64; n];
    let mut off = vec![0.0_f64; n - 1];
    let mut mass = vec![0.0_f64; n];
    for i in 0..n {
        let t = i as f64 * h;
        let w = if i == 0 || i == n - 1 { 0.5 * h } else { h };
        mass[i] = w;
        diag[i] += (t - xi) * (t - xi) * w;
        if i + 1 < n {
            diag[i] += 1.0 / h;
            diag[i + 1] += 1.0 / h;
            off[i] = -1.0 / h;
        }
    }
    diag[0] += gamma;
    // Shifted inverse iteration via the Thomas algorithm.
    let shift = model1d::theta(gamma).unwrap() - 0.05;
    let mut v = vec![1.0_f64; n];
    for _ in 0..60 {
        // Solve (A - shift M) w = M v.
        let mut dd: Vec<f64> = (0..n).map(|i| diag[i] - shift * mass[i]).collect();
        let mut rhs: Vec<f64> = (0..n).map(|i| mass[i] * v[i]).collect();
        for i in 1..n {
            let m = off[i - 1] / dd[i - 1];
            dd[i] -= m * off[i - 1];
            rhs[i] -= m * rhs[i - 1];
        }
        v[n - 1] = rhs[n - 1] / dd[n - 1];
        for i in (0..n - 1).rev() {
            v[i] = (rhs[i] - off[i] * v[i + 1]) / dd[i];
        }
        let nrm = (0..n).map(|i| mass[i] * v[i] * v[i]).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= nrm);
    }
    let dense = v[0] * v[0];
    let spectral = model1d::theta_prime(gamma).unwrap();
    assert!((dense - spectral).abs() < 1e-4, "dense {dense} vs spectral {spectral}");
}

#[test]
fn quotient_family_minimum_approaches_alpha_hat_from_above() {
    // Direct minimization of ∫(f'² + (t-ξ)²f²)/f(0)² over a discretized f
    // family and ξ: bounded below by α̂ and converging to it from above.
    let ah = model1d::constants().unwrap().alpha_hat;
    let quotient_min = |h: f64| -> f64 {
        let t_max = 14.0_f64;
        let n = (t_max / h).round() as usize + 1;
        let best = |xi: f64| -> f64 {
            let mut diag = vec![0.0_f64; n];
            let mut off = vec![0.0_f64; n - 1];
            for i in 0..n {
                let t = i as f64 * h;
                let w = if i == 0 || i == n - 1 { 0.5 * h } else { h };
                diag[i] += (t - xi) * (t - xi) * w;
                if i + 1 < n {
                    diag[i] += 1.0 / h;
                    diag[i + 1] += 1.0 / h;
                    off[i] = -1.0 / h;
                }
            }
            // min q(f)/f(0)² = 1/(e₀ᵀ K⁻¹ e₀) by the Thomas algorithm.
            let mut dd = diag.clone();
            let mut rhs = vec![0.0_f64; n];
            rhs[0] = 1.0;
            for i in 1..n {
                let m = off[i - 1] / dd[i - 1];
                dd[i] -= m * off[i - 1];
                rhs[i] -= m * rhs[i - 1];
            }
            let mut y = vec![0.0_f64; n];
            y[n - 1] = rhs[n - 1] / dd[n - 1];
            for i in (0..n - 1).rev() {
                y[i] = (rhs[i] - off[i] * y[i + 1]) / dd[i];
            }
            1.0 / y[0]
        };
        let mut min = f64::INFINITY;
        let mut xi = 0.3;
        while xi <= 0.9 {
            min = min.min(best(xi));
            xi += 0.005;
        }
        min
    };
    let coarse = quotient_min(0.02);
    let fine = quotient_min(0.005);
    assert!(coarse > ah - 1e-4, "coarse {coarse} vs {ah}");
    assert!(fine > ah - 1e-4);
    assert!(fine < coarse, "refinement must move down toward the infimum");
    assert!(fine - ah < 5e-4, "fine {fine} should approach {ah}");
}

#[test]
fn theta_is_increasing_and_below_one_on_grid() {
    let mut prev = f64::NEG_INFINITY;
    for k in 0..50 {
        let g = -2.0 + 3.0 * k as f64 / 49.0;
        let th = model1d::theta(g).unwrap();
        assert!(th > prev, "theta must increase: theta({g}) = {th} after {prev}");
        assert!(th < 1.0, "theta({g}) = {th} must stay below 1");
        prev = th;
    }
}

#[test]
fn minimizer_relation_and_derivative_identity_on_grid() {
    for k in 0..13 {
        let g = -2.0 + 3.0 * k as f64 / 12.0;
        let th = model1d::theta(g).unwrap();
        let xi = model1d::xi_of_gamma(g).unwrap();
        assert!((xi - (th + g * g).sqrt()).abs() < 1e-5, "gamma={g}");
        let h = 1e-4;
        let fd = (model1d::theta(g + h).unwrap() - model1d::theta(g - h).unwrap()) / (2.0 * h);
        let tp = model1d::theta_prime(g).unwrap();
        assert!((tp - fd).abs() < 1e-5, "gamma={g}: {tp} vs {fd}");
    }
}

#[test]
fn secular_identities_hold_at_the_minimizer() {
    use std::f64::consts::SQRT_2;
    for k in 0..13 {
        let g = -2.0 + 3.0 * k as f64 / 12.0;
        let th = model1d::theta(g).unwrap();
        let xi = model1d::xi_of_gamma(g).unwrap();
        let z = -SQRT_2 * xi;
        let lower = pcf_eval(0.5 * (th - 1.0), z).unwrap();
        // √2 D'_{(Θ-1)/2}(-√2ξ) = γ D_{(Θ-1)/2}(-√2ξ)
        let r1 = SQRT_2 * lower.derivative - g * lower.value;
        assert!(
            r1.abs() < 1e-7 * (1.0 + lower.value.abs()),
            "first identity fails at gamma={g}: {r1:e}"
        );
        // -√2 D_{(Θ+1)/2}(-√2ξ) = (γ+ξ) D_{(Θ-1)/2}(-√2ξ)
        let upper = pcf_d(0.5 * (th + 1.0), z).unwrap();
        let r2 = -SQRT_2 * upper - (g + xi) * lower.value;
        assert!(
            r2.abs() < 1e-7 * (1.0 + upper.abs() + lower.value.abs()),
            "second identity fails at gamma={g}: {r2:e}"
        );
    }
}

#[test]
fn mu_increases_toward_one_for_large_xi() {
    // μ(γ, ξ) approaches its essential threshold from below as ξ grows.
    let r5 = model1d::mu(0.7, 5.0).unwrap();
    let r3 = model1d::mu(0.7, 3.0).unwrap();
    assert!(r3.mu < r5.mu && r5.mu < 1.0, "mu(3) = {}, mu(5) = {}", r3.mu, r5.mu);
}

#[test]
fn f_star_matches_initial_value_integration() {
    // -f'' + (t-α̂)² f = 0 from (f, f')(0) = (1, -α̂), classic RK4; forward
    // integration is reliable this close to the boundary.
    let ah = model1d::constants().unwrap().alpha_hat;
    let rhs = |t: f64, y: [f64; 2]| [y[1], (t - ah) * (t - ah) * y[0]];
    let mut y = [1.0, -ah];
    let h = 1e-5;
    let mut t = 0.0;
    while t < 1.0 - 0.5 * h {
        let k1 = rhs(t, y);
        let k2 = rhs(t + 0.5 * h, [y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]]);
        let k3 = rhs(t + 0.5 * h, [y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]]);
        let k4 = rhs(t + h, [y[0] + h * k3[0], y[1] + h * k3[1]]);
        y[0] += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
        y[1] += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
        t += h;
    }
    let got = model1d::f_star(1.0).unwrap();
    assert!((got - y[0]).abs() < 1e-9, "pcf {got} vs ivp {}", y[0]);
}

#[test]
fn moment_suite_closed_forms() {
    let c = model1d::constants().unwrap();
    let ah = c.alpha_hat;
    let m = model1d::f_star_moments().unwrap();
    assert!(m.c1.abs() < 1e-8, "c1 = {}", m.c1);
    assert!((m.c2 - ah / 4.0).abs() < 1e-8, "c2 = {}", m.c2);
    assert!((m.ff + 0.5).abs() < 1e-8, "ff = {}", m.ff);
    assert!((m.tfp - (1.0 / 3.0 + ah * ah / 12.0)).abs() < 1e-8, "tfp = {}", m.tfp);
    assert!((m.energy - ah).abs() < 1e-8, "energy = {}", m.energy);
    // Third moment with the squared weight reproduces (1-2α̂²)/6; the
    // cubed-weight variant does not, settling the exponent question.
    assert!(
        (m.c3 - (1.0 - 2.0 * ah * ah) / 6.0).abs() < 1e-8,
        "squared-weight third moment = {}",
        m.c3
    );
    let cubed = integrate(
        &|t: f64| (t - ah).powi(3) * model1d::f_star(t.min(20.0)).unwrap().powi(3),
        0.0,
        20.0,
        1e-10,
    )
    .unwrap();
    assert!(
        (cubed - (1.0 - 2.0 * ah * ah) / 6.0).abs() > 1e-4,
        "cubed-weight moment {cubed} should not match the displayed value"
    );
}

#[test]
fn norm_constant_against_independent_quadrature_grid() {
    // Riemann-midpoint evaluation at two resolutions brackets the adaptive
    // value of ∫ f_*².
    let m0 = model1d::f_star_moments().unwrap().m0;
    let midpoint = |n: usize| -> f64 {
        let h = 20.0 / n as f64;
        let mut acc = 0.0;
        for i in 0..n {
            let t = (i as f64 + 0.5) * h;
            let f = model1d::f_star(t).unwrap();
            acc += f * f * h;
        }
        acc
    };
    let coarse = midpoint(20_000);
    let fine = midpoint(40_000);
    assert!((fine - m0).abs() < (coarse - m0).abs(), "midpoint must converge toward m0");
    // One Richardson level removes the O(h²) midpoint error.
    let extrap = fine + (fine - coarse) / 3.0;
    assert!((extrap - m0).abs() < 1e-9, "extrapolated {extrap} vs adaptive {m0}");
    assert!((m0 - 0.6861813849005662).abs() < 1e-9, "m0 = {m0}");
}

#[test]
fn c1_assembly_against_dense_boundary_value() {
    // C₁(1) via the spectral path vs the dense |u_γ(0)|² computed above.
    let g = 1.0;
    let xi = model1d::xi_of_gamma(g).unwrap();
    let c1 = model1d::c1(g).unwrap();
    let tp = model1d::theta_prime(g).unwrap();
    assert!((c1 - (1.0 - g * xi) * tp / 3.0).abs() < 1e-12);
    // And the derived constant at the zero of Θ matches its closed form.
    let c = model1d::constants().unwrap();
    let want = (c.alpha_hat * c.alpha_hat + 1.0) / 3.0 * model1d::theta_prime(-c.alpha_hat).unwrap();
    assert!((c.c1_at_gamma0 - want).abs() < 1e-6, "{} vs {want}", c.c1_at_gamma0);
}

#[test]
fn d2mu_step_halving_agreement() {
    for &g in &[0.0, -0.5409019456058304] {
        let a = model1d::d2mu_dxi2_with_step(g, 1e-3).unwrap();
        let b = model1d::d2mu_dxi2_with_step(g, 5e-4).unwrap();
        assert!((a - b).abs() < 1e-4, "gamma={g}: {a} vs {b}");
    }
}
