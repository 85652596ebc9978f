//! Block factorization of the interior operator.
//!
//! The interior unknowns form a block-cyclic-tridiagonal matrix over angular
//! lines, plus one origin unknown coupled to every line. Lines `0..M-2` are
//! eliminated in sequence; the last line and the origin form a border group
//! that absorbs the cyclic wrap fill-in.

use super::assemble::GridOperator;
use super::{DomainError, Result};
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

/// Interior right-hand side / solution container: one column block per
/// sequential line plus the border block (last line + origin).
pub(crate) struct BlockVec {
    /// K × ncols blocks for lines 0..M-2.
    pub lines: Vec<DMatrix<C64>>,
    /// (K+1) × ncols border block.
    pub border: DMatrix<C64>,
}

impl BlockVec {
    pub fn zeros(op: &GridOperator, ncols: usize) -> Self {
        let k = op.mesh.n_rings;
        let m = op.mesh.n_angular;
        BlockVec {
            lines: (0..m - 1).map(|_| DMatrix::zeros(k, ncols)).collect(),
            border: DMatrix::zeros(k + 1, ncols),
        }
    }

    /// Entry accessor mapping (line, ring slot) to the right block.
    pub fn add(&mut self, op: &GridOperator, line: usize, slot: usize, col: usize, v: C64) {
        let m = op.mesh.n_angular;
        if line == m - 1 {
            self.border[(slot, col)] += v;
        } else {
            self.lines[line][(slot, col)] += v;
        }
    }

    pub fn get(&self, op: &GridOperator, line: usize, slot: usize, col: usize) -> C64 {
        let m = op.mesh.n_angular;
        if line == m - 1 {
            self.border[(slot, col)]
        } else {
            self.lines[line][(slot, col)]
        }
    }
}

pub(crate) struct InteriorFactor {
    /// Cholesky factors of the eliminated line blocks.
    l: Vec<DMatrix<C64>>,
    /// `U_j = L_j^{-1} E_j` toward the next line (absent for the last
    /// sequential line).
    u: Vec<Option<DMatrix<C64>>>,
    /// `V_j = L_j^{-1} C_j` toward the border.
    v: Vec<DMatrix<C64>>,
    /// Border Cholesky factor.
    lb: DMatrix<C64>,
}

impl InteriorFactor {
    pub fn new(op: &GridOperator) -> Result<InteriorFactor> {
        let m = op.mesh.n_angular;
        let k = op.mesh.n_rings;
        if m < 8 {
            return Err(DomainError::MeshFailure("need at least 8 angular lines".into()));
        }
        let nb = k + 1;

        // Border diagonal block: last line + origin.
        let mut d_b = DMatrix::<C64>::zeros(nb, nb);
        d_b.view_mut((0, 0), (k, k)).copy_from(&op.a_diag[m - 1]);
        for i in 0..k {
            d_b[(i, k)] = op.orig_col[m - 1][i];
            d_b[(k, i)] = op.orig_col[m - 1][i].conj();
        }
        d_b[(k, k)] = C64::new(op.orig_diag, 0.0);

        let mut l = Vec::with_capacity(m - 1);
        let mut u: Vec<Option<DMatrix<C64>>> = Vec::with_capacity(m - 1);
        let mut v = Vec::with_capacity(m - 1);

        let mut s_j = op.a_diag[0].clone();
        // Border coupling of the current line.
        let mut c_j = DMatrix::<C64>::zeros(k, nb);
        c_j.view_mut((0, 0), (k, k)).copy_from(&op.a_off[m - 1].adjoint());
        for i in 0..k {
            c_j[(i, k)] = op.orig_col[0][i];
        }

        for j in 0..m - 1 {
            let chol = s_j.clone().cholesky().ok_or_else(|| {
                DomainError::FactorizationFailure(format!("line {j} block is not positive definite"))
            })?;
            let l_j = chol.l();
            let u_j = if j < m - 2 {
                let mut e = op.a_off[j].clone();
                l_j.solve_lower_triangular_mut(&mut e);
                Some(e)
            } else {
                None
            };
            let mut v_j = c_j.clone();
            l_j.solve_lower_triangular_mut(&mut v_j);

            // Schur updates.
            d_b -= v_j.adjoint() * &v_j;
            if let Some(ref u_j) = u_j {
                s_j = &op.a_diag[j + 1] - u_j.adjoint() * u_j;
                let mut c_next = DMatrix::<C64>::zeros(k, nb);
                for i in 0..k {
                    c_next[(i, k)] = op.orig_col[j + 1][i];
                }
                if j + 1 == m - 2 {
                    c_next.view_mut((0, 0), (k, k)).add_assign_from(&op.a_off[m - 2]);
                }
                c_next -= u_j.adjoint() * &v_j;
                c_j = c_next;
            }
            l.push(l_j);
            u.push(u_j);
            v.push(v_j);
        }

        let lb = d_b
            .cholesky()
            .ok_or_else(|| {
                DomainError::FactorizationFailure("border block is not positive definite".into())
            })?
            .l();
        Ok(InteriorFactor { l, u, v, lb })
    }

    /// In-place solve of the interior system for a block of right-hand sides.
    pub fn solve(&self, x: &mut BlockVec) {
        let mseq = self.l.len();
        // Forward sweep: L y = r.
        for j in 0..mseq {
            if j > 0 {
                if let Some(ref u_prev) = self.u[j - 1] {
                    let update = u_prev.adjoint() * &x.lines[j - 1];
                    x.lines[j] -= update;
                }
            }
            self.l[j].solve_lower_triangular_mut(&mut x.lines[j]);
            let update = self.v[j].adjoint() * &x.lines[j];
            x.border -= update;
        }
        self.lb.solve_lower_triangular_mut(&mut x.border);

        // Backward sweep: L^H x = y.
        self.lb.adjoint().solve_upper_triangular_mut(&mut x.border);
        for j in (0..mseq).rev() {
            let update = &self.v[j] * &x.border;
            x.lines[j] -= update;
            if let Some(ref u_j) = self.u[j] {
                let update = u_j * &x.lines[j + 1];
                x.lines[j] -= update;
            }
            self.l[j].adjoint().solve_upper_triangular_mut(&mut x.lines[j]);
        }
    }
}

trait AddAssignFrom {
    fn add_assign_from(&mut self, other: &DMatrix<C64>);
}

impl AddAssignFrom for nalgebra::DMatrixViewMut<'_, C64> {
    fn add_assign_from(&mut self, other: &DMatrix<C64>) {
        for c in 0..other.ncols() {
            for r in 0..other.nrows() {
                self[(r, c)] += other[(r, c)];
            }
        }
    }
}

/// Dense application of the interior operator to a block vector (test aid
/// and residual checks): y = A_ii x.
pub(crate) fn apply_interior(op: &GridOperator, x: &BlockVec) -> BlockVec {
    let m = op.mesh.n_angular;
    let k = op.mesh.n_rings;
    let ncols = x.border.ncols();
    let mut y = BlockVec::zeros(op, ncols);

    let line_of = |j: usize| -> DMatrix<C64> {
        if j == m - 1 {
            x.border.rows(0, k).into()
        } else {
            x.lines[j].clone()
        }
    };
    let origin_row: DMatrix<C64> = x.border.rows(k, 1).into();

    for j in 0..m {
        let jn = (j + 1) % m;
        let jp = (j + m - 1) % m;
        let mut acc = &op.a_diag[j] * line_of(j)
            + &op.a_off[j] * line_of(jn)
            + op.a_off[jp].adjoint() * line_of(jp)
            + &op.orig_col[j] * &origin_row;
        if j == m - 1 {
            for c in 0..ncols {
                for r in 0..k {
                    y.border[(r, c)] += acc[(r, c)];
                }
            }
        } else {
            y.lines[j].copy_from(&acc);
        }
        acc.fill(C64::new(0.0, 0.0));
    }
    // Origin row.
    for c in 0..ncols {
        let mut acc = C64::new(op.orig_diag, 0.0) * origin_row[(0, c)];
        for j in 0..m {
            let lj = line_of(j);
            for r in 0..k {
                acc += op.orig_col[j][r].conj() * lj[(r, c)];
            }
        }
        y.border[(k, c)] = acc;
    }
    y
}
