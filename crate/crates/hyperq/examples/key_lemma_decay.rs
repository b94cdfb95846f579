//! Decay of the ball-averaged defect between a translated spherical
//! function and its two-term boundary profile.

use hyperq::group::{haar_k, make_at, point_norm, GroupContext, GroupElement};
use hyperq::numerics::{MCConfig, SampleStream};
use hyperq::poisson::key_lemma_defect;
use hyperq::reps::{BundleWeight, RepVector};
use hyperq::specfun::c_nu;
use num_complex::Complex64;

fn main() {
    let ctx = GroupContext::new(1);
    let nu = BundleWeight(1);
    let lam = 1.0;
    let radii = [5.0, 10.0, 20.0, 40.0];
    let v = RepVector::basis(nu, 0);
    let e2 = 2.0 * c_nu(&ctx, nu, Complex64::new(lam, 0.0)).unwrap().norm_sqr();

    let mc_exact = MCConfig {
        ball_samples_per_panel: 64,
        ..MCConfig::default()
    };
    let report = key_lemma_defect(
        &ctx,
        nu,
        lam,
        &GroupElement::identity(ctx),
        &v,
        &radii,
        &mc_exact,
    )
    .unwrap();
    println!("base point e (scalar remainder), nu=1, lambda=1:");
    for (r, val) in report.radii.iter().zip(&report.values) {
        println!("  R={r:>4}: defect/E2 = {:.3e}", val / e2);
    }

    let st = (SampleStream::new(11, 0), SampleStream::new(11, 1));
    let g = haar_k(ctx, &st, 0)
        .embed(ctx)
        .mul(&make_at(ctx, 0.6))
        .mul(&haar_k(ctx, &st, 1).embed(ctx));
    println!(
        "\ntranslated base point with |g.0| = {:.3}:",
        point_norm(&g.dot_zero())
    );
    let mc = MCConfig {
        ball_samples_per_panel: 16_000,
        ..MCConfig::default()
    };
    let report = key_lemma_defect(&ctx, nu, lam, &g, &v, &radii, &mc).unwrap();
    for ((r, val), se) in report.radii.iter().zip(&report.values).zip(&report.stderrs) {
        println!(
            "  R={r:>4}: defect/E2 = {:.3e} (stderr {:.1e})",
            val / e2,
            se / e2
        );
    }
}
