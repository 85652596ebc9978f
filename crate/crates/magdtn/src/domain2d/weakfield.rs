//! Weak-field coefficient `(1/|∂Ω|) ∫_Ω |A_Ω|² dx`.
//!
//! `A_Ω = (-∂₂ψ, ∂₁ψ)` with `Δψ = 1`, `ψ|∂Ω = 0` satisfies `curl A_Ω = 1`,
//! `div A_Ω = 0` and `ν·A_Ω = 0`, and `∫|A_Ω|² = ∫|∇ψ|² = -∫ψ`, so one
//! Dirichlet Poisson solve on the grid yields the coefficient without any
//! gradient reconstruction.

use super::assemble::assemble;
use super::solver::{BlockVec, InteriorFactor};
use super::{DomainSpec, FieldSpec, Result};
use num_complex::Complex64 as C64;

/// Coefficient of `b²` in the weak-field expansion of the lowest D-to-N
/// eigenvalue, computed on a grid of target spacing `h`.
pub fn weak_field_coefficient(domain: &DomainSpec, h: f64) -> Result<f64> {
    // b = 0 assembly is the plain Laplace form; phases vanish identically.
    let op = assemble(domain, &FieldSpec::constant(), 0.0, h)?;
    let factor = InteriorFactor::new(&op)?;
    let m = op.mesh.n_angular;
    let k = op.mesh.n_rings;

    // Weak form of Δψ = 1 with zero boundary data: A_ii ψ = -load.
    let mut rhs = BlockVec::zeros(&op, 1);
    for j in 0..m - 1 {
        for i in 0..k {
            rhs.lines[j][(i, 0)] = C64::new(-op.load_lines[j][i], 0.0);
        }
    }
    for i in 0..k {
        rhs.border[(i, 0)] = C64::new(-op.load_lines[m - 1][i], 0.0);
    }
    rhs.border[(k, 0)] = C64::new(-op.load_origin, 0.0);
    factor.solve(&mut rhs);

    // ∫|∇ψ|² = ψᵀ A ψ = -ψᵀ f = -∫ψ.
    let mut integral_psi = 0.0;
    for j in 0..m - 1 {
        for i in 0..k {
            integral_psi += rhs.lines[j][(i, 0)].re * op.load_lines[j][i];
        }
    }
    for i in 0..k {
        integral_psi += rhs.border[(i, 0)].re * op.load_lines[m - 1][i];
    }
    integral_psi += rhs.border[(k, 0)].re * op.load_origin;

    Ok(-integral_psi / domain.perimeter())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_disk_is_one_sixteenth() {
        let d = DomainSpec::unit_circle();
        let c = weak_field_coefficient(&d, 0.05).unwrap();
        assert!((c - 1.0 / 16.0).abs() < 2e-4, "got {c}");
    }

    #[test]
    fn scaling_is_cubic_in_the_dilation() {
        // A_Ω scales linearly with length, the area element quadratically,
        // the perimeter linearly: coefficient ~ ρ³.
        let rho: f64 = 1.7;
        let d1 = DomainSpec::unit_circle();
        let d2 = super::super::build_domain(&[rho], &[]).unwrap();
        let c1 = weak_field_coefficient(&d1, 0.04).unwrap();
        let c2 = weak_field_coefficient(&d2, 0.04 * rho).unwrap();
        let ratio = c2 / c1;
        assert!(
            (ratio - rho.powi(3)).abs() < 1e-2 * rho.powi(3),
            "ratio {ratio} vs {}",
            rho.powi(3)
        );
    }
}
