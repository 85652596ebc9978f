//! Boundary-fitted polar-type grid for star-shaped domains.
//!
//! Nodes sit at `x(i, j) = ρ_i · r(φ_j) · (cos φ_j, sin φ_j)` with uniform
//! angles and radial levels graded toward the boundary: step `h_eff` inside a
//! collar of width `10 b^{-1/2}` (the boundary-layer scale), geometric
//! coarsening further in. The origin is a single shared node.

use super::{DomainError, DomainSpec, Result};
use std::f64::consts::PI;

#[derive(Debug, Clone)]
pub struct PolarMesh {
    /// Angular line count.
    pub n_angular: usize,
    /// Interior ring count (rings 1..=n_rings); ring `n_rings + 1` is the
    /// boundary, ring 0 is the origin point.
    pub n_rings: usize,
    /// Normalized radial levels for rings 1..=n_rings+1 (last entry 1.0).
    pub rho: Vec<f64>,
    /// Effective target spacing used for the grading.
    pub h_eff: f64,
}

impl PolarMesh {
    pub fn build(domain: &DomainSpec, b: f64, h: f64) -> Result<PolarMesh> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(DomainError::MeshFailure(format!("mesh size must be positive, got {h}")));
        }
        // Boundary-layer cap: the profile scale is b^{-1/2}.
        let h_eff = h.min(0.2 / b.abs().max(1.0).sqrt());
        let r_max = domain.max_radius();
        let r_min = domain.min_radius();

        let n_angular = ((domain.perimeter() / h_eff).ceil() as usize).max(16);
        if n_angular > 5000 {
            return Err(DomainError::MeshFailure(format!(
                "angular resolution {n_angular} exceeds the desk-scale cap; increase h or reduce b"
            )));
        }

        // Radial levels from the boundary inward, in normalized ρ.
        let collar_phys = (10.0 / b.abs().max(1.0).sqrt()).min(0.45 * r_min);
        let step_fine = h_eff / r_max;
        let step_cap = 4.0 * step_fine;
        let collar = collar_phys / r_max;
        let mut levels = vec![1.0_f64];
        let mut rho = 1.0;
        let mut step = step_fine;
        while rho > 0.0 {
            if 1.0 - rho > collar {
                step = (step * 1.3).min(step_cap);
            }
            rho -= step;
            if rho < 0.6 * step {
                break;
            }
            levels.push(rho);
        }
        levels.reverse();
        let n_rings = levels.len() - 1;
        if n_rings < 4 {
            return Err(DomainError::MeshFailure(format!(
                "only {n_rings} interior rings; h={h} too coarse for this domain"
            )));
        }
        Ok(PolarMesh { n_angular, n_rings, rho: levels, h_eff })
    }

    pub fn angle(&self, j: usize) -> f64 {
        2.0 * PI * j as f64 / self.n_angular as f64
    }

    /// Physical node position; ring 0 is the origin, ring `n_rings+1` the
    /// boundary.
    pub fn node(&self, domain: &DomainSpec, ring: usize, j: usize) -> [f64; 2] {
        if ring == 0 {
            return [0.0, 0.0];
        }
        let phi = self.angle(j % self.n_angular);
        let r = self.rho[ring - 1] * domain.radius(phi);
        [r * phi.cos(), r * phi.sin()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grading_reaches_origin_and_boundary() {
        let d = DomainSpec::unit_circle();
        let m = PolarMesh::build(&d, 50.0, 0.05).unwrap();
        assert_eq!(*m.rho.last().unwrap(), 1.0);
        assert!(m.rho[0] > 0.0);
        assert!(m.n_rings >= 4);
        // Fine steps near the boundary obey the collar cap.
        let last_step = m.rho[m.n_rings] - m.rho[m.n_rings - 1];
        assert!(last_step <= 0.2 / 50.0_f64.sqrt() / d.max_radius() + 1e-12);
        // Monotone levels.
        for w in m.rho.windows(2) {
            assert!(w[1] > w[0]);
        }
    }

    #[test]
    fn rejects_hopeless_resolution() {
        let d = DomainSpec::unit_circle();
        assert!(PolarMesh::build(&d, 1.0, 0.0).is_err());
        assert!(PolarMesh::build(&d, 1.0, 2.0).is_err());
    }
}
