//! Forward/inverse Jacobi transform round trip with and without discrete
//! spectrum, the Plancherel balance, and CSV export of a profile.

use hyperq::io::write_profile_csv;
use hyperq::jacobi::*;
use hyperq::specfun::JacobiParams;
use num_complex::Complex64;

fn main() {
    let bump = RadialProfile::poly_bump(2.0, 8);
    for (alpha, beta) in [(1.0, 2.0), (1.0, 5.0)] {
        let p = JacobiParams::new(alpha, beta).unwrap();
        let ds = discrete_spectrum(&p);
        println!(
            "(alpha, beta) = ({alpha}, {beta}): {} discrete terms",
            ds.len()
        );
        let spectrum = |lam: Complex64| jacobi_forward(&p, &bump, lam);
        for &t in &[0.0, 0.9, 1.7] {
            let with = jacobi_inverse(&p, &spectrum, &ds, t, 40.0).unwrap();
            let without =
                jacobi_inverse(&p, &spectrum, &DiscreteSpectrum::empty(), t, 40.0).unwrap();
            println!(
                "  t={t:>3.1}: f={:+.6e}  recon={:+.6e}  (continuous part only: {:+.6e})",
                bump.eval(t).re,
                with.re,
                without.re
            );
        }
        let defect = plancherel_defect(&p, &bump, 40.0).unwrap();
        println!("  Plancherel defect: {defect:.3e}");
    }

    let ts: Vec<f64> = (0..=100).map(|i| 0.02 * i as f64).collect();
    let mut out = Vec::new();
    write_profile_csv(&mut out, &bump, &ts).unwrap();
    println!(
        "\nprofile CSV ({} bytes), first lines:\n{}",
        out.len(),
        String::from_utf8_lossy(&out[..60.min(out.len())])
    );
}
