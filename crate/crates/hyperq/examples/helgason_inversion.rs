//! Helgason-Fourier analysis of tau-radial sections: Plancherel balance
//! with the measured constant, and reconstruction from the slices.

use hyperq::fourier::{tau_radial_inversion, tau_radial_plancherel};
use hyperq::group::GroupContext;
use hyperq::jacobi::RadialProfile;
use hyperq::reps::BundleWeight;

fn main() {
    let ctx = GroupContext::new(1);
    let bump = RadialProfile::poly_bump(2.0, 8);
    for nu in [0usize, 4] {
        let nu_b = BundleWeight(nu);
        let report = tau_radial_plancherel(&ctx, nu_b, &bump, 40.0).unwrap();
        println!("nu = {nu}:");
        println!(
            "  geometric  int ||F||^2             = {:.10e}",
            report.geometric
        );
        println!(
            "  continuous (1/2pi) int |H|^2/|c|^2 = {:.10e}",
            report.spectral_integral / (2.0 * std::f64::consts::PI)
        );
        println!(
            "  discrete   sum 4^nu (d_j/2)|H|^2   = {:.10e}",
            report.discrete
        );
        println!("  defect {:.2e}", report.defect);
        println!(
            "  measured Plancherel constant = {:.8} (1/2pi = {:.8}, 1/pi = {:.8})",
            report.measured_constant,
            1.0 / (2.0 * std::f64::consts::PI),
            1.0 / std::f64::consts::PI
        );
        let rows = tau_radial_inversion(&ctx, nu_b, &bump, 40.0, &[0.4, 1.0, 1.6]).unwrap();
        for (t, recon, truth) in rows {
            println!(
                "  inversion at t={t:.1}: reconstructed {:+.8e}, true {:+.8e}",
                recon.re, truth.re
            );
        }
    }
}
