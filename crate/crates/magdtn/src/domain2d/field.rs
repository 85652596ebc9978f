//! Magnetic field specifications: a vector potential and its curl.

use std::fmt;
use std::sync::Arc;

type VecFn = Arc<dyn Fn([f64; 2]) -> [f64; 2] + Send + Sync>;
type ScalarFn = Arc<dyn Fn([f64; 2]) -> f64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    Constant,
    Radial,
    Custom,
}

/// A unit-strength vector potential `A` with its field `B = curl A`; the
/// sweep strength `b` multiplies both at assembly time.
#[derive(Clone)]
pub struct FieldSpec {
    pub kind: FieldKind,
    potential: VecFn,
    field: ScalarFn,
}

impl FieldSpec {
    /// Constant field `B ≡ 1` in the symmetric gauge `A₀ = ½(-y, x)`.
    pub fn constant() -> Self {
        FieldSpec {
            kind: FieldKind::Constant,
            potential: Arc::new(|p| [-0.5 * p[1], 0.5 * p[0]]),
            field: Arc::new(|_| 1.0),
        }
    }

    /// Radial profile `B(x) = β(|x|)` with `A = A_θ(|x|) θ̂`,
    /// `A_θ(r) = (1/r)∫₀^r β(ρ)ρ dρ` supplied alongside `β`.
    pub fn radial(
        beta: impl Fn(f64) -> f64 + Send + Sync + 'static,
        a_theta: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        let beta = Arc::new(beta);
        let a_theta = Arc::new(a_theta);
        FieldSpec {
            kind: FieldKind::Radial,
            potential: Arc::new(move |p| {
                let r = (p[0] * p[0] + p[1] * p[1]).sqrt();
                if r < 1e-300 {
                    return [0.0, 0.0];
                }
                let at = a_theta(r);
                [-at * p[1] / r, at * p[0] / r]
            }),
            field: Arc::new(move |p| beta((p[0] * p[0] + p[1] * p[1]).sqrt())),
        }
    }

    /// Radial polynomial profile `β(r) = Σ c_k r^k`.
    pub fn radial_polynomial(coeffs: &[f64]) -> Self {
        let c: Vec<f64> = coeffs.to_vec();
        let c2 = c.clone();
        Self::radial(
            move |r| c.iter().enumerate().map(|(k, &a)| a * r.powi(k as i32)).sum(),
            move |r| {
                c2.iter()
                    .enumerate()
                    .map(|(k, &a)| a * r.powi(k as i32 + 1) / (k as f64 + 2.0))
                    .sum()
            },
        )
    }

    /// Arbitrary potential with caller-supplied curl.
    pub fn custom(
        potential: impl Fn([f64; 2]) -> [f64; 2] + Send + Sync + 'static,
        field: impl Fn([f64; 2]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        FieldSpec { kind: FieldKind::Custom, potential: Arc::new(potential), field: Arc::new(field) }
    }

    /// Gauge-shift this potential by `∇ψ`; the field is unchanged.
    pub fn gauge_shifted(
        &self,
        grad_psi: impl Fn([f64; 2]) -> [f64; 2] + Send + Sync + 'static,
    ) -> Self {
        let base = self.potential.clone();
        let field = self.field.clone();
        FieldSpec {
            kind: FieldKind::Custom,
            potential: Arc::new(move |p| {
                let a = base(p);
                let g = grad_psi(p);
                [a[0] + g[0], a[1] + g[1]]
            }),
            field: Arc::new(move |p| field(p)),
        }
    }

    pub fn potential(&self, p: [f64; 2]) -> [f64; 2] {
        (self.potential)(p)
    }

    pub fn field(&self, p: [f64; 2]) -> f64 {
        (self.field)(p)
    }

    /// Smallest |B| on a dense boundary sample of the given domain.
    pub fn min_boundary_field(&self, domain: &super::DomainSpec) -> f64 {
        let n = 2048;
        let mut best = f64::INFINITY;
        for i in 0..n {
            let phi = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
            best = best.min(self.field(domain.point(phi)).abs());
        }
        best
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec({:?})", self.kind)
    }
}
