//! Symmetric positive definite banded Cholesky (lower band storage).
//!
//! Column `j` stores `A[j..=j+bw, j]` contiguously, so the update and solve
//! inner loops are unit-stride slices.

pub(crate) struct BandMatrix {
    pub n: usize,
    pub bw: usize,
    /// Flat column-major band: column j occupies `j*(bw+1) .. (j+1)*(bw+1)`.
    pub data: Vec<f64>,
}

impl BandMatrix {
    pub fn zeros(n: usize, bw: usize) -> Self {
        BandMatrix { n, bw, data: vec![0.0; n * (bw + 1)] }
    }

    #[inline]
    pub fn add(&mut self, row: usize, col: usize, v: f64) {
        let (r, c) = if row >= col { (row, col) } else { (col, row) };
        debug_assert!(r - c <= self.bw);
        self.data[c * (self.bw + 1) + (r - c)] += v;
    }

    /// In-place Cholesky; fails on loss of positive definiteness.
    pub fn cholesky(&mut self) -> Result<(), String> {
        let s = self.bw + 1;
        for j in 0..self.n {
            let reach = self.bw.min(self.n - 1 - j);
            let djj = self.data[j * s];
            if djj <= 0.0 || !djj.is_finite() {
                return Err(format!("pivot {djj} at column {j}"));
            }
            let l = djj.sqrt();
            self.data[j * s] = l;
            let inv = 1.0 / l;
            for d in 1..=reach {
                self.data[j * s + d] *= inv;
            }
            for k in 1..=reach {
                let ljk = self.data[j * s + k];
                if ljk == 0.0 {
                    continue;
                }
                let (head, tail) = self.data.split_at_mut((j + k) * s);
                let src = &head[j * s + k..j * s + reach + 1];
                let dst = &mut tail[..reach + 1 - k];
                for (d, &sv) in dst.iter_mut().zip(src) {
                    *d -= ljk * sv;
                }
            }
        }
        Ok(())
    }

    /// Solve `L L^T x = b` in place using the factored band.
    pub fn solve(&self, x: &mut [f64]) {
        let s = self.bw + 1;
        for j in 0..self.n {
            let reach = self.bw.min(self.n - 1 - j);
            let xj = x[j] / self.data[j * s];
            x[j] = xj;
            let col = &self.data[j * s + 1..j * s + reach + 1];
            let xs = &mut x[j + 1..j + reach + 1];
            for (xv, &lv) in xs.iter_mut().zip(col) {
                *xv -= lv * xj;
            }
        }
        for j in (0..self.n).rev() {
            let reach = self.bw.min(self.n - 1 - j);
            let col = &self.data[j * s + 1..j * s + reach + 1];
            let mut acc = x[j];
            for (d, &lv) in col.iter().enumerate() {
                acc -= lv * x[j + 1 + d];
            }
            x[j] = acc / self.data[j * s];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_solve_small_poisson() {
        // 1D Laplacian with Dirichlet ends: tridiagonal band.
        let n = 50;
        let mut a = BandMatrix::zeros(n, 1);
        for i in 0..n {
            a.add(i, i, 2.0);
            if i + 1 < n {
                a.add(i + 1, i, -1.0);
            }
        }
        a.cholesky().unwrap();
        let mut x = vec![1.0; n];
        a.solve(&mut x);
        // Exact solution of (Ax)_i = 1: x_i = (i+1)(n-i)/2.
        for i in 0..n {
            let want = 0.5 * (i as f64 + 1.0) * (n - i) as f64;
            assert!((x[i] - want).abs() < 1e-9 * want, "i={i}: {} vs {}", x[i], want);
        }
    }

    #[test]
    fn rejects_indefinite() {
        let mut a = BandMatrix::zeros(3, 1);
        a.add(0, 0, 1.0);
        a.add(1, 1, -1.0);
        a.add(2, 2, 1.0);
        assert!(a.cholesky().is_err());
    }
}
