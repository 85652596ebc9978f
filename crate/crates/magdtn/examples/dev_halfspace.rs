// Dev scratch: half-space angle model at (16,400).
use magdtn::halfspace3d::*;
use std::time::Instant;

fn main() {
    let ah = 0.5409019456058304_f64;
    for &(th, name, want) in &[
        (std::f64::consts::FRAC_PI_2, "pi/2", 1.0),
        (std::f64::consts::FRAC_PI_4, "pi/4", f64::NAN),
        (std::f64::consts::FRAC_PI_2 / 8.0, "pi/16", f64::NAN),
    ] {
        let t0 = Instant::now();
        match lambda_dn_theta(th, 16.0, 400) {
            Ok(r) => println!(
                "theta={name}: lambda={:.8} g={:.8} warn={} ({:?}) want~{want}",
                r.lambda, r.lower_bound, r.truncation_warning, t0.elapsed()
            ),
            Err(e) => println!("theta={name}: ERR {e}"),
        }
    }
    let t0 = Instant::now();
    let r0 = lambda_dn_theta(0.0, 16.0, 400).unwrap();
    println!("theta=0: lambda={:.10} (= alpha_hat {:.10}) ({:?})", r0.lambda, ah, t0.elapsed());
    // tau-invariance spot check at pi/4
    let t0 = Instant::now();
    let a = lambda_dn_theta_offset(std::f64::consts::FRAC_PI_4, 16.0, 400, 0.0).unwrap();
    let b = lambda_dn_theta_offset(std::f64::consts::FRAC_PI_4, 16.0, 400, 2.0).unwrap();
    println!("tau-invariance: {} vs {} diff={:.2e} ({:?})", a.lambda, b.lambda, (a.lambda - b.lambda).abs(), t0.elapsed());
}
