//! Generalized spectral projections on the tau-radial family: the closed
//! pipeline at a flow point and the lambda-integrated ball aggregate.

use hyperq::fourier::{spectral_aggregate_radial, spectral_projection_radial};
use hyperq::group::GroupContext;
use hyperq::jacobi::RadialProfile;
use hyperq::reps::BundleWeight;

fn main() {
    let ctx = GroupContext::new(1);
    let nu = BundleWeight(0);
    let bump = RadialProfile::poly_bump(2.0, 8);

    println!("Q_lambda F(a_t) scalar factor, nu = 0:");
    for lam in [0.5, 1.0, 2.0] {
        for t in [0.4, 1.0] {
            let q = spectral_projection_radial(&ctx, nu, &bump, lam, t).unwrap();
            println!("  lambda={lam:>4}, t={t:.1}: {:+.6e} {:+.6e}i", q.re, q.im);
        }
    }

    let radii = [5.0, 10.0, 20.0, 40.0];
    let (aggregates, cont_norm_sq) =
        spectral_aggregate_radial(&ctx, nu, &bump, 20.0, &radii).unwrap();
    println!(
        "\nlambda-integrated aggregate vs 2 ||F||^2 = {:.6e}:",
        2.0 * cont_norm_sq
    );
    for (r, a) in radii.iter().zip(&aggregates) {
        println!(
            "  R={r:>4}: aggregate = {:.6e} (ratio {:.4})",
            a,
            a / (2.0 * cont_norm_sq)
        );
    }
}
