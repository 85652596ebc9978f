// Dev scratch: gauge invariance + ellipse b=400 curvature term.
use magdtn::domain2d::*;
use std::time::Instant;

fn main() {
    let ah = 0.5409019456058304_f64;
    // gauge invariance on the disk, b=10
    let d = DomainSpec::unit_circle();
    let f = FieldSpec::constant();
    let s1 = dtn_spectrum(&d, &f, 10.0, 0.05, 3, 7).unwrap();
    let shifted = f.gauge_shifted(|p| {
        // psi = x^2 y - 0.3 y^3 + 0.5 x y: grad
        [2.0 * p[0] * p[1] + 0.5 * p[1], p[0] * p[0] - 0.9 * p[1] * p[1] + 0.5 * p[0]]
    });
    let s2 = dtn_spectrum(&d, &shifted, 10.0, 0.05, 3, 7).unwrap();
    for (a, b) in s1.eigenvalues.iter().zip(&s2.eigenvalues) {
        println!("gauge: {a:.14} vs {b:.14} diff={:.2e}", (a - b).abs());
    }
    // ellipse criterion 7
    let e = DomainSpec::ellipse(1.0, 0.6).unwrap();
    println!("kappa_max={} k2_local={:?}", e.max_curvature(), e.curvature_k2_local());
    let t0 = Instant::now();
    let b = 400.0;
    let s = match dtn_spectrum(&e, &f, b, 0.01, 2, 7) { Ok(s) => s, Err(er) => { println!("ERR: {er}"); return; } };
    let curv_term = -(ah * ah + 1.0) / 3.0 * e.max_curvature();
    let measured = s.eigenvalues[0] - ah * b.sqrt();
    println!("ellipse b=400: l1={:.6} l2={:.6} ({:?})", s.eigenvalues[0], s.eigenvalues[1], t0.elapsed());
    println!("  l1 - ah*sqrt(b) = {measured:.4} vs curvature term {curv_term:.4}; ratio {:.3}", measured / curv_term);
}
