// Dev scratch: Poisson solve sanity on the unit disk.
use magdtn::domain2d::*;

fn main() {
    let d = DomainSpec::unit_circle();
    for h in [0.1, 0.05] {
        let c = weak_field_coefficient(&d, h).unwrap();
        println!("h={h}: coeff={c} want 0.0625");
    }
    let op = assemble(&d, &FieldSpec::constant(), 0.0, 0.1).unwrap();
    println!("mesh: M={} K={}", op.mesh.n_angular, op.mesh.n_rings);
    println!("sum of boundary weights = {} vs 2pi = {}", op.boundary_weights.iter().sum::<f64>(), std::f64::consts::TAU);
    println!("load sum = {} vs area pi = {}", op.debug_load_sum(), std::f64::consts::PI);
    println!("psi(origin) = {} want -0.25", op.debug_poisson_origin().unwrap());
}
