//! Isoparametric bilinear assembly of the magnetic sesquilinear form on the
//! polar-type grid, organized into cyclic line blocks for the solver.
//!
//! Unknown layout: interior angular lines `j = 0..M-1`, each holding the
//! ring nodes `i = 1..=K` of that ray; one shared origin node; `M` boundary
//! nodes on the outermost ring. The matrix is Hermitian and the quadratic
//! form nonnegative because every cell contributes a Gram matrix of discrete
//! covariant derivatives.

use super::field::FieldSpec;
use super::mesh::PolarMesh;
use super::{DomainError, DomainSpec, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

/// 5-point Gauss–Legendre rule on [0, 1] for the segment integrals.
const GL5_X: [f64; 5] = [
    0.046_910_077_030_668,
    0.230_765_344_947_158_4,
    0.5,
    0.769_234_655_052_841_6,
    0.953_089_922_969_332,
];
const GL5_W: [f64; 5] = [
    0.118_463_442_528_094_54,
    0.239_314_335_249_683_23,
    0.284_444_444_444_444_44,
    0.239_314_335_249_683_23,
    0.118_463_442_528_094_54,
];

/// Discretized magnetic form with labeled interior/boundary unknowns.
pub struct GridOperator {
    pub mesh: PolarMesh,
    pub b: f64,
    /// Lumped arc-length weights of the boundary nodes.
    pub boundary_weights: Vec<f64>,
    pub(crate) a_diag: Vec<DMatrix<C64>>,
    /// Coupling line j -> line j+1 (mod M).
    pub(crate) a_off: Vec<DMatrix<C64>>,
    pub(crate) orig_col: Vec<DVector<C64>>,
    pub(crate) orig_diag: f64,
    pub(crate) bb_diag: Vec<f64>,
    /// Coupling boundary j -> boundary j+1 (mod M).
    pub(crate) bb_off: Vec<C64>,
    /// A(interior(K, j-1), boundary j), A(interior(K, j), boundary j),
    /// A(interior(K, j+1), boundary j).
    pub(crate) ib_prev: Vec<C64>,
    pub(crate) ib_self: Vec<C64>,
    pub(crate) ib_next: Vec<C64>,
    /// ∫ N_a dx per unknown, for source problems.
    pub(crate) load_lines: Vec<DVector<f64>>,
    pub(crate) load_origin: f64,
}

impl GridOperator {
    /// Dev aid: total load = discrete area (boundary shapes excluded).
    pub fn debug_load_sum(&self) -> f64 {
        self.load_lines.iter().map(|l| l.sum()).sum::<f64>() + self.load_origin
    }

    /// Dev aid: Poisson value at the origin.
    pub fn debug_poisson_origin(&self) -> super::Result<f64> {
        use super::solver::{BlockVec, InteriorFactor};
        use num_complex::Complex64 as C64;
        let factor = InteriorFactor::new(self)?;
        let m = self.mesh.n_angular;
        let k = self.mesh.n_rings;
        let mut rhs = BlockVec::zeros(self, 1);
        for j in 0..m - 1 {
            for i in 0..k {
                rhs.lines[j][(i, 0)] = C64::new(-self.load_lines[j][i], 0.0);
            }
        }
        for i in 0..k {
            rhs.border[(i, 0)] = C64::new(-self.load_lines[m - 1][i], 0.0);
        }
        rhs.border[(k, 0)] = C64::new(-self.load_origin, 0.0);
        factor.solve(&mut rhs);
        Ok(rhs.border[(k, 0)].re)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum NodeRef {
    Origin,
    Interior { ring: usize, line: usize },
    Boundary { line: usize },
}

/// Line integral `∫_c^p A · dl` along the straight segment.
fn segment_potential(field: &FieldSpec, c: [f64; 2], p: [f64; 2]) -> f64 {
    let d = [p[0] - c[0], p[1] - c[1]];
    let mut acc = 0.0;
    for (x, w) in GL5_X.iter().zip(GL5_W) {
        let q = [c[0] + x * d[0], c[1] + x * d[1]];
        let a = field.potential(q);
        acc += w * (a[0] * d[0] + a[1] * d[1]);
    }
    acc
}

/// Local rotational potential at `x` for the gauge centered at `c`:
/// `(∫₀¹ s B(c + s(x-c)) ds) · (-(x-c)₂, (x-c)₁)`. Depends only on the
/// field, never on the gauge of the supplied potential.
fn local_potential(field: &FieldSpec, c: [f64; 2], x: [f64; 2]) -> [f64; 2] {
    let d = [x[0] - c[0], x[1] - c[1]];
    let mut avg = 0.0;
    for (s, w) in GL5_X.iter().zip(GL5_W) {
        avg += w * s * field.field([c[0] + s * d[0], c[1] + s * d[1]]);
    }
    [-avg * d[1], avg * d[0]]
}

/// Cell matrix (4x4 Hermitian) and load (4) of one bilinear quad with
/// corners `p` in reference order (00, 10, 11, 01).
fn cell_matrix(field: &FieldSpec, b: f64, p: &[[f64; 2]; 4]) -> ([[C64; 4]; 4], [f64; 4]) {
    let center =
        [(p[0][0] + p[1][0] + p[2][0] + p[3][0]) / 4.0, (p[0][1] + p[1][1] + p[2][1] + p[3][1]) / 4.0];
    // Nodal phases of the local gauge transform v = e^{-i b φ_c} u.
    let mut phase = [0.0_f64; 4];
    for (k, pk) in p.iter().enumerate() {
        phase[k] = b * segment_potential(field, center, *pk);
    }

    let g = 0.5_f64 - 0.5 / 3.0_f64.sqrt();
    let gauss = [g, 1.0 - g];
    let mut k_v = [[C64::new(0.0, 0.0); 4]; 4];
    let mut load = [0.0_f64; 4];

    for &xi in &gauss {
        for &eta in &gauss {
            let n = [(1.0 - xi) * (1.0 - eta), xi * (1.0 - eta), xi * eta, (1.0 - xi) * eta];
            let dn_dxi = [-(1.0 - eta), 1.0 - eta, eta, -eta];
            let dn_deta = [-(1.0 - xi), -xi, xi, 1.0 - xi];
            let mut jac = [[0.0_f64; 2]; 2];
            let mut x_g = [0.0_f64; 2];
            for k in 0..4 {
                x_g[0] += n[k] * p[k][0];
                x_g[1] += n[k] * p[k][1];
                jac[0][0] += dn_dxi[k] * p[k][0];
                jac[0][1] += dn_dxi[k] * p[k][1];
                jac[1][0] += dn_deta[k] * p[k][0];
                jac[1][1] += dn_deta[k] * p[k][1];
            }
            let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
            let w = 0.25 * det;
            // jac rows are (∂/∂ξ, ∂/∂η) of (x, y): physical gradients need
            // its true inverse, ∇N = jac⁻¹ ∇̂N.
            let inv = [
                [jac[1][1] / det, -jac[0][1] / det],
                [-jac[1][0] / det, jac[0][0] / det],
            ];
            // Physical gradients: ∇N = J^{-T} ∇̂N.
            let mut gx = [0.0_f64; 4];
            let mut gy = [0.0_f64; 4];
            for k in 0..4 {
                gx[k] = inv[0][0] * dn_dxi[k] + inv[0][1] * dn_deta[k];
                gy[k] = inv[1][0] * dn_dxi[k] + inv[1][1] * dn_deta[k];
            }
            let a_loc = local_potential(field, center, x_g);
            let ax = b * a_loc[0];
            let ay = b * a_loc[1];
            // d_k = (-i∇ - bA_loc) N_k as a complex 2-vector.
            let mut dx = [C64::new(0.0, 0.0); 4];
            let mut dy = [C64::new(0.0, 0.0); 4];
            for k in 0..4 {
                dx[k] = C64::new(-ax * n[k], -gx[k]);
                dy[k] = C64::new(-ay * n[k], -gy[k]);
            }
            for a in 0..4 {
                for bidx in 0..4 {
                    k_v[a][bidx] += (dx[bidx] * dx[a].conj() + dy[bidx] * dy[a].conj()) * w;
                }
                load[a] += w * n[a];
            }
        }
    }

    // Conjugate back to the physical unknowns: v = e^{-i b φ_c} u, so
    // K_u[a][b] = e^{+i ph_a} K_v[a][b] e^{-i ph_b}.
    let mut k_u = [[C64::new(0.0, 0.0); 4]; 4];
    for a in 0..4 {
        for bidx in 0..4 {
            let rot = C64::from_polar(1.0, phase[a] - phase[bidx]);
            k_u[a][bidx] = k_v[a][bidx] * rot;
        }
    }
    (k_u, load)
}

/// Assemble the discretized magnetic form for `(-i∇ - bA)²` on the domain.
pub fn assemble(domain: &DomainSpec, field: &FieldSpec, b: f64, h: f64) -> Result<GridOperator> {
    let mesh = PolarMesh::build(domain, b, h)?;
    let m = mesh.n_angular;
    let k = mesh.n_rings;
    if 2 * k < 8 {
        return Err(DomainError::MeshFailure("fewer than 8 cells across the diameter".into()));
    }

    let zero_mat = DMatrix::<C64>::zeros(k, k);
    let zero_vec = DVector::<C64>::zeros(k);
    let mut op = GridOperator {
        mesh: mesh.clone(),
        b,
        boundary_weights: vec![0.0; m],
        a_diag: vec![zero_mat.clone(); m],
        a_off: vec![zero_mat; m],
        orig_col: vec![zero_vec; m],
        orig_diag: 0.0,
        bb_diag: vec![0.0; m],
        bb_off: vec![C64::new(0.0, 0.0); m],
        ib_prev: vec![C64::new(0.0, 0.0); m],
        ib_self: vec![C64::new(0.0, 0.0); m],
        ib_next: vec![C64::new(0.0, 0.0); m],
        load_lines: vec![DVector::zeros(k); m],
        load_origin: 0.0,
    };

    let node_ref = |ring: usize, j: usize| -> NodeRef {
        let j = j % m;
        if ring == 0 {
            NodeRef::Origin
        } else if ring == k + 1 {
            NodeRef::Boundary { line: j }
        } else {
            NodeRef::Interior { ring, line: j }
        }
    };

    for j in 0..m {
        for i in 0..=k {
            // Cell between rings i and i+1, lines j and j+1.
            let refs = [
                node_ref(i, j),
                node_ref(i + 1, j),
                node_ref(i + 1, j + 1),
                node_ref(i, j + 1),
            ];
            let pts = [
                mesh.node(domain, i, j),
                mesh.node(domain, i + 1, j),
                mesh.node(domain, i + 1, j + 1),
                mesh.node(domain, i, j + 1),
            ];
            let (kc, load) = cell_matrix(field, b, &pts);
            for a in 0..4 {
                match refs[a] {
                    NodeRef::Origin => op.load_origin += load[a],
                    NodeRef::Interior { ring, line } => op.load_lines[line][ring - 1] += load[a],
                    NodeRef::Boundary { .. } => {}
                }
                for c in 0..4 {
                    scatter(&mut op, refs[a], refs[c], kc[a][c], m);
                }
            }
        }
    }

    // Lumped arc-length boundary mass from the polygon edges.
    for j in 0..m {
        let p0 = mesh.node(domain, k + 1, j);
        let p1 = mesh.node(domain, k + 1, (j + 1) % m);
        let len = ((p1[0] - p0[0]).powi(2) + (p1[1] - p0[1]).powi(2)).sqrt();
        op.boundary_weights[j] += 0.5 * len;
        op.boundary_weights[(j + 1) % m] += 0.5 * len;
    }
    Ok(op)
}

fn scatter(op: &mut GridOperator, ra: NodeRef, rb: NodeRef, val: C64, m: usize) {
    use NodeRef::*;
    match (ra, rb) {
        (Interior { ring: ia, line: ja }, Interior { ring: ib, line: jb }) => {
            if ja == jb {
                op.a_diag[ja][(ia - 1, ib - 1)] += val;
            } else if jb == (ja + 1) % m {
                op.a_off[ja][(ia - 1, ib - 1)] += val;
            }
            // The reverse orientation is the Hermitian image; skipped.
        }
        (Interior { ring, line }, Origin) => op.orig_col[line][ring - 1] += val,
        (Origin, Origin) => op.orig_diag += val.re,
        (Boundary { line: ja }, Boundary { line: jb }) => {
            if ja == jb {
                op.bb_diag[ja] += val.re;
            } else if jb == (ja + 1) % m {
                op.bb_off[ja] += val;
            }
        }
        (Interior { ring, line: ja }, Boundary { line: jb }) => {
            debug_assert_eq!(ring, op.mesh.n_rings);
            if ja == jb {
                op.ib_self[jb] += val;
            } else if ja == (jb + 1) % m {
                op.ib_next[jb] += val;
            } else if jb == (ja + 1) % m {
                op.ib_prev[jb] += val;
            }
        }
        // Conjugate orientations and the empty origin-boundary pairing.
        _ => {}
    }
}
