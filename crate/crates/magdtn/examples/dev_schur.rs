// Dev scratch: Schur solver vs disk exact oracle.
use magdtn::diskexact;
use magdtn::domain2d::*;
use std::time::Instant;

fn main() {
    let d = DomainSpec::unit_circle();
    let f = FieldSpec::constant();
    // Steklov b=0
    for b in [0.0, 1.0, 10.0, 50.0] {
        for h in [0.8 * 0.2 / (b as f64).max(1.0).sqrt(), 0.4 * 0.2 / (b as f64).max(1.0).sqrt()] {
            let t0 = Instant::now();
            let s = dtn_spectrum(&d, &f, b, h, 5, 12345).unwrap();
            let w = (3.0 * b.max(1.0).sqrt()).ceil() as i64 + 10;
            let exact = diskexact::dtn_disk_spectrum(1.0, b, 5, w).unwrap();
            let errs: Vec<f64> = s.eigenvalues.iter().zip(&exact.eigenvalues).map(|(a, e)| (a - e).abs()).collect();
            println!("b={b:>4} h={h}: grid={:?}", s.eigenvalues.iter().map(|v| format!("{v:.6}")).collect::<Vec<_>>());
            println!("            exact={:?}", exact.eigenvalues.iter().map(|v| format!("{v:.6}")).collect::<Vec<_>>());
            println!("            errs={errs:?} labels={:?} ({:?})", s.labels, t0.elapsed());
        }
    }
}
