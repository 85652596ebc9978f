// Dev scratch: print model constants and moments with timings.
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let c = magdtn::model1d::constants().unwrap();
    println!("constants ({:?}):\n{c:#?}", t0.elapsed());
    let t1 = Instant::now();
    let m = magdtn::model1d::f_star_moments().unwrap();
    println!("moments ({:?}):\n{m:#?}", t1.elapsed());
    let ah = c.alpha_hat;
    println!("expected: c2={} tfp={} energy={} c3(sq-weight)={}", ah / 4.0, 1.0/3.0 + ah*ah/12.0, ah, (1.0 - 2.0*ah*ah)/6.0);
    let t2 = Instant::now();
    let th = magdtn::model1d::theta(1.0).unwrap();
    println!("theta(1.0) = {th} ({:?})", t2.elapsed());
    let t3 = Instant::now();
    let tp = magdtn::model1d::theta_prime(-c.alpha_hat).unwrap();
    println!("theta_prime(-ah) = {tp} ({:?})", t3.elapsed());
    let t4 = Instant::now();
    let cs = magdtn::model1d::splitting_c_star(1.0).unwrap();
    println!("c_star(1) = {cs} ({:?})", t4.elapsed());
    println!("c1(-ah) = {} vs (ah^2+1)/3*tp = {}", c.c1_at_gamma0, (ah*ah+1.0)/3.0*tp);
}
