// Dev scratch: Rayleigh quotients of pure windings through the Schur matrix.
use magdtn::domain2d::*;
use num_complex::Complex64 as C64;

fn main() {
    let d = DomainSpec::unit_circle();
    let f = FieldSpec::constant();
    let b = 10.0;
    let op = assemble(&d, &f, b, 0.05).unwrap();
    let s = debug_schur(&op).unwrap();
    let m = s.nrows();
    for mode in [-4i64, -3, 3, 4] {
        let x = nalgebra::DVector::<C64>::from_fn(m, |j, _| {
            C64::from_polar(1.0, 2.0 * std::f64::consts::PI * mode as f64 * j as f64 / m as f64)
        });
        let num = (x.adjoint() * &s * &x)[(0, 0)].re;
        let den: f64 = op.boundary_weights.iter().map(|w| w).sum();
        println!("mode {mode}: rayleigh = {}", num / den);
    }
}
