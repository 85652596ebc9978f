// Dev scratch: ellipse b=400 refinement study.
use magdtn::domain2d::*;
use std::time::Instant;

fn main() {
    let ah = 0.5409019456058304_f64;
    let e = DomainSpec::ellipse(1.0, 0.6).unwrap();
    let f = FieldSpec::constant();
    let b = 400.0f64;
    let curv = -(ah * ah + 1.0) / 3.0 * e.max_curvature();
    for h in [0.012, 0.009, 0.006] {
        let t0 = Instant::now();
        match dtn_spectrum(&e, &f, b, h, 1, 7) {
            Ok(s) => {
                let term = s.eigenvalues[0] - ah * b.sqrt();
                println!("h={h}: l1={:.7} term={term:.5} ratio={:.4} ({:?})",
                    s.eigenvalues[0], term / curv, t0.elapsed());
            }
            Err(er) => println!("h={h}: ERR {er}"),
        }
    }
}
