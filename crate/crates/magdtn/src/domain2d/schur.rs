//! Boundary Schur complement and its generalized eigensolver.
//!
//! Eliminating the interior unknowns of the discretized form leaves the
//! boundary matrix `S = A_bb - A_bi A_ii⁻¹ A_ib`; the discrete D-to-N
//! eigenvalues solve `S v = λ W v` with the lumped arc-length mass `W`.
//! The smallest eigenvalues are extracted by shift-invert Lanczos with a
//! deterministic seeded start vector and full reorthogonalization.

use super::assemble::GridOperator;
use super::solver::{BlockVec, InteriorFactor};
use super::{DomainError, Result};
use crate::diskexact::{DtNSpectrum, MethodTag, SpectrumMeta};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const RESIDUAL_TOL: f64 = 1e-10;

/// Dense boundary Schur complement of the assembled operator.
pub(crate) fn schur_complement(op: &GridOperator) -> Result<DMatrix<C64>> {
    let factor = InteriorFactor::new(op)?;
    let m = op.mesh.n_angular;
    let k = op.mesh.n_rings;

    let mut s = DMatrix::<C64>::zeros(m, m);
    for j in 0..m {
        s[(j, j)] = C64::new(op.bb_diag[j], 0.0);
        let jn = (j + 1) % m;
        s[(j, jn)] += op.bb_off[j];
        s[(jn, j)] += op.bb_off[j].conj();
    }

    // S -= A_bi A_ii^{-1} A_ib in column chunks.
    let chunk = 48;
    let mut j0 = 0;
    while j0 < m {
        let ncols = chunk.min(m - j0);
        let mut x = BlockVec::zeros(op, ncols);
        for c in 0..ncols {
            let j = j0 + c;
            let jp = (j + m - 1) % m;
            let jn = (j + 1) % m;
            x.add(op, jp, k - 1, c, op.ib_prev[j]);
            x.add(op, j, k - 1, c, op.ib_self[j]);
            x.add(op, jn, k - 1, c, op.ib_next[j]);
        }
        factor.solve(&mut x);
        for c in 0..ncols {
            let j = j0 + c;
            for r in 0..m {
                let rp = (r + m - 1) % m;
                let rn = (r + 1) % m;
                let acc = op.ib_prev[r].conj() * x.get(op, rp, k - 1, c)
                    + op.ib_self[r].conj() * x.get(op, r, k - 1, c)
                    + op.ib_next[r].conj() * x.get(op, rn, k - 1, c);
                s[(r, j)] -= acc;
            }
        }
        j0 += ncols;
    }

    // Symmetrize away the roundoff skew.
    let adj = s.adjoint();
    s = (s + adj) * C64::new(0.5, 0.0);
    Ok(s)
}

/// The `count` smallest eigenvalues of `S v = λ W v`.
pub fn dtn_schur_eigs(op: &GridOperator, count: usize, seed: u64) -> Result<DtNSpectrum> {
    let s = schur_complement(op)?;
    let w = &op.boundary_weights;
    let m = s.nrows();
    if count == 0 || count > m / 2 {
        return Err(DomainError::ConvergenceFailure(format!(
            "count {count} out of range for {m} boundary unknowns"
        )));
    }

    // Shift below the spectrum: S is positive semidefinite, so any σ < 0
    // makes S - σW definite. The shift must sit near the low cluster (which
    // scales like √b), not near the diagonal mean that the high-frequency
    // boundary modes dominate, or shift-invert loses its resolving power.
    let bottom_scale = (0.541 * op.b.abs().sqrt()).max(1.0);
    let sigma = -0.2 * bottom_scale;
    let mut shifted = s.clone();
    for j in 0..m {
        shifted[(j, j)] -= C64::new(sigma * w[j], 0.0);
    }
    let chol = shifted.cholesky().ok_or_else(|| {
        DomainError::FactorizationFailure("shifted Schur complement is not definite".into())
    })?;

    // W-inner-product Lanczos for T = (S - σW)^{-1} W.
    let w_dot = |a: &DVector<C64>, b: &DVector<C64>| -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for j in 0..m {
            acc += a[j].conj() * b[j] * w[j];
        }
        acc
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = DVector::<C64>::from_fn(m, |_, _| {
        C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
    });
    let nrm = w_dot(&v, &v).re.sqrt();
    v /= C64::new(nrm, 0.0);

    let k_max = m.min(400.max(8 * count + 60));
    let mut basis: Vec<DVector<C64>> = vec![v];
    let mut alpha: Vec<f64> = vec![];
    let mut beta: Vec<f64> = vec![];
    let mut converged: Option<(Vec<f64>, Vec<DVector<C64>>)> = None;

    for it in 0..k_max {
        let vk = basis[it].clone();
        let mut t = DVector::<C64>::from_fn(m, |j, _| vk[j] * C64::new(w[j], 0.0));
        t = chol.solve(&t);
        let a = w_dot(&vk, &t).re;
        alpha.push(a);
        t -= vk * C64::new(a, 0.0);
        if it > 0 {
            let b_prev = beta[it - 1];
            t -= &basis[it - 1] * C64::new(b_prev, 0.0);
        }
        // Full reorthogonalization in the W product.
        for u in &basis {
            let c = w_dot(u, &t);
            t -= u * c;
        }
        let mut b = w_dot(&t, &t).re.max(0.0).sqrt();

        let mut breakdown = b < 1e-13;
        if breakdown && it + 1 < k_max {
            // Invariant subspace found (degenerate levels hide their
            // partners from a single Krylov sequence): restart with a fresh
            // seeded direction deflated against the current basis.
            for _ in 0..4 {
                t = DVector::<C64>::from_fn(m, |_, _| {
                    C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
                });
                for u in &basis {
                    let c = w_dot(u, &t);
                    t -= u * c;
                }
                b = w_dot(&t, &t).re.max(0.0).sqrt();
                if b > 1e-10 {
                    breakdown = false;
                    // β = 0 decouples the restarted block in the tridiagonal.
                    b = 0.0;
                    break;
                }
            }
        }

        let exhausted = breakdown || it + 1 == k_max;
        let check_now =
            exhausted || b == 0.0 || (it >= 2 * count + 10 && it % 8 == 0);
        if check_now {
            if let Some(pairs) = ritz_pairs(&alpha, &beta, &basis, &s, w, sigma, count)? {
                converged = Some(pairs);
                break;
            }
            if exhausted {
                return Err(DomainError::ConvergenceFailure(format!(
                    "Lanczos exhausted {it} iterations without meeting the \
                     residual tolerance {RESIDUAL_TOL:e}"
                )));
            }
        }
        beta.push(b);
        let nrm = if b > 0.0 { b } else { w_dot(&t, &t).re.max(1e-300).sqrt() };
        basis.push(t / C64::new(nrm, 0.0));
    }

    let (eigenvalues, vectors) = converged.ok_or_else(|| {
        DomainError::ConvergenceFailure("Lanczos terminated without Ritz pairs".into())
    })?;
    let labels: Vec<i64> = vectors.iter().map(dominant_fourier_mode).collect();

    // Deterministic final order.
    let mut idx: Vec<usize> = (0..count).collect();
    idx.sort_by(|&a, &b| eigenvalues[a].total_cmp(&eigenvalues[b]).then(labels[a].cmp(&labels[b])));
    let eigenvalues: Vec<f64> = idx.iter().map(|&i| eigenvalues[i]).collect();
    let labels: Vec<i64> = idx.iter().map(|&i| labels[i]).collect();

    Ok(DtNSpectrum {
        eigenvalues,
        labels,
        meta: SpectrumMeta {
            b: op.b,
            radius: f64::NAN,
            method: MethodTag::SchurGrid,
            tolerance: RESIDUAL_TOL,
            mode_window: 0,
        },
    })
}

/// Ritz pairs of the current Lanczos tridiagonal; `Some` once the `count`
/// smallest eigenvalue estimates all meet the residual tolerance.
#[allow(clippy::type_complexity)]
fn ritz_pairs(
    alpha: &[f64],
    beta: &[f64],
    basis: &[DVector<C64>],
    s: &DMatrix<C64>,
    w: &[f64],
    sigma: f64,
    count: usize,
) -> Result<Option<(Vec<f64>, Vec<DVector<C64>>)>> {
    let nk = alpha.len();
    if nk < count {
        return Ok(None);
    }
    let m = s.nrows();
    let mut tri = DMatrix::<f64>::zeros(nk, nk);
    for i in 0..nk {
        tri[(i, i)] = alpha[i];
        if i + 1 < nk {
            tri[(i, i + 1)] = beta[i];
            tri[(i + 1, i)] = beta[i];
        }
    }
    let eig = nalgebra::SymmetricEigen::new(tri);
    // θ largest ↔ λ smallest; λ = σ + 1/θ.
    let mut order: Vec<usize> = (0..nk).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

    let mut values = Vec::with_capacity(count);
    let mut vectors = Vec::with_capacity(count);
    for &idx in order.iter().take(count) {
        let theta = eig.eigenvalues[idx];
        if theta <= 0.0 {
            return Ok(None);
        }
        let lambda = sigma + 1.0 / theta;
        let mut x = DVector::<C64>::zeros(m);
        for (k_i, u) in basis.iter().enumerate().take(nk) {
            x += u * C64::new(eig.eigenvectors[(k_i, idx)], 0.0);
        }
        let sx = s * &x;
        let mut resid = sx.clone();
        for j in 0..m {
            resid[j] -= C64::new(lambda * w[j], 0.0) * x[j];
        }
        // Fixed spectral scale: |Sx| itself vanishes on a zero mode.
        let scale = (0..m).map(|j| s[(j, j)].norm()).fold(1.0_f64, f64::max);
        if resid.norm() > RESIDUAL_TOL * scale * x.norm() {
            return Ok(None);
        }
        values.push(lambda);
        vectors.push(x);
    }
    Ok(Some((values, vectors)))
}

/// Fourier index with the largest coefficient magnitude over the boundary
/// ring; the disk oracle labels its eigenvalues the same way.
fn dominant_fourier_mode(x: &DVector<C64>) -> i64 {
    let m = x.len();
    let half = (m / 2) as i64;
    let mut best = (0i64, -1.0_f64);
    for mode in -half..half {
        let mut acc = C64::new(0.0, 0.0);
        for (j, xj) in x.iter().enumerate() {
            let ang = -2.0 * std::f64::consts::PI * (mode as f64) * (j as f64) / (m as f64);
            acc += xj * C64::from_polar(1.0, ang);
        }
        let mag = acc.norm_sqr();
        if mag > best.1 {
            best = (mode, mag);
        }
    }
    best.0
}
