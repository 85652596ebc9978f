// Dev scratch: disk exact solver cross-checks.
use magdtn::diskexact::*;
use magdtn::specfun::bessel_i;
use std::time::Instant;

fn main() {
    let ah = 0.5409019456058304_f64;
    // m=0 closed form: (b/2) I1(b/4) / I0(b/4) for R=1
    for &b in &[0.05, 0.1, 0.2, 5.0, 20.0] {
        let v = dtn_disk_mode(&RadialProblem::interior(1.0, b, 0)).unwrap();
        let want = 0.5 * b * bessel_i(1, 0.25 * b).unwrap() / bessel_i(0, 0.25 * b).unwrap();
        println!("b={b:>6}: riccati={v:.14e} bessel={want:.14e} rel={:.2e}", (v - want).abs() / want);
    }
    // two-term: lambda1 ~ ah*sqrt(b) - (ah^2+1)/3/R
    for &radius in &[1.0, 2.0] {
        for &b in &[50.0f64, 100.0, 200.0, 400.0] {
            let t0 = Instant::now();
            let w = (3.0 * b.sqrt()).ceil() as i64 + 10;
            let s = dtn_disk_spectrum(radius, b, 3, w).unwrap();
            let l1 = s.lambda1();
            let resid = l1 - ah * b.sqrt() + (ah * ah + 1.0) / 3.0 / radius;
            println!("R={radius} b={b:>5}: l1={l1:.8} resid={resid:+.5e} scaled={:+.4} modes={:?} ({:?})",
                resid * b.sqrt(), &s.labels[..3.min(s.labels.len())], t0.elapsed());
        }
    }
    // exterior
    for &b in &[100.0f64, 400.0] {
        let s = dtn_disk_exterior(1.0, b, 1, (3.0*b.sqrt()).ceil() as i64 + 10).unwrap();
        let resid = s.lambda1() - ah * b.sqrt() - (ah * ah + 1.0) / 3.0;
        println!("ext R=1 b={b}: l1={:.8} resid={resid:+.5e} scaled={:+.4}", s.lambda1(), resid * b.sqrt());
    }
    // duality
    for &b in &[5.0f64, 20.0, 80.0] {
        let t0 = Instant::now();
        let g1 = gamma_crossing(1.0, b, 1).unwrap();
        let s = dtn_disk_spectrum(1.0, b, 1, (3.0*b.sqrt()).ceil() as i64 + 10).unwrap();
        println!("b={b}: -sqrt(b)g1={:.12} l1={:.12} diff={:.2e} ({:?})",
            -b.sqrt()*g1, s.lambda1(), (-b.sqrt()*g1 - s.lambda1()).abs(), t0.elapsed());
    }
    // radial field: beta = 1 + r^2/2, b=400: expect within 10% of ah*sqrt(1.5*400)
    let t0 = Instant::now();
    let f = FieldProfile::radial_polynomial(&[1.0, 0.0, 0.5]);
    // window centered by flux: a(1)*R = b*A_theta(1) = 400*(1/2+1/8)= 250
    let mut best = f64::INFINITY;
    let mut bm = 0i64;
    for m in 180..=320 {
        let p = RadialProblem::interior(1.0, 400.0, m).with_field(f.clone());
        let v = dtn_disk_mode(&p).unwrap();
        if v < best { best = v; bm = m; }
    }
    println!("radial field b=400: l1={best:.6} at m={bm}, target={:.6} ratio={:.4} ({:?})",
        ah * (1.5_f64 * 400.0).sqrt(), best / (ah * (1.5_f64*400.0).sqrt()), t0.elapsed());
}
