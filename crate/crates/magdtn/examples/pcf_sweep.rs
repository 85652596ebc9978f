// Dev scratch: dump D_nu(z) and derivative over the audited box.
use magdtn::specfun::pcf_eval;

fn main() {
    let mut nus = vec![];
    let mut k = -5.0f64;
    while k <= 5.0 + 1e-9 {
        nus.push(k);
        k += 0.37;
    }
    // stress lines: near integers and half-integers
    for m in -5..=4 {
        nus.push(m as f64 + 1e-5);
        nus.push(m as f64 + 0.5);
        nus.push(m as f64 + 0.4999);
    }
    let mut zs = vec![];
    let mut z = -30.0f64;
    while z <= 30.0 + 1e-9 {
        zs.push(z);
        z += 0.61;
    }
    for &extra in &[-4.69, -4.2, -3.9, -3.51, -3.49, 3.49, 3.51, 6.5, 11.9, 12.1] {
        zs.push(extra);
    }
    for &nu in &nus {
        for &z in &zs {
            let e = pcf_eval(nu, z).unwrap();
            println!("{:.17e} {:.17e} {:.17e} {:.17e}", nu, z, e.value, e.derivative);
        }
    }
}
