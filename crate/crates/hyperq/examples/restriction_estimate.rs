//! Uniformity of the Fourier restriction ratio across the spectral
//! parameter for a fixed compactly supported section.

use hyperq::fourier::{helgason_fourier, restriction_ratio, CompactSection};
use hyperq::group::{haar_k, GroupContext};
use hyperq::io::write_slice_csv;
use hyperq::jacobi::RadialProfile;
use hyperq::numerics::{MCConfig, SampleStream};
use hyperq::reps::{BundleWeight, RepVector};
use num_complex::Complex64;

fn main() {
    let ctx = GroupContext::new(1);
    let bump = RadialProfile::poly_bump(2.0, 8);
    let mc = MCConfig {
        ball_samples_per_panel: 32_000,
        ..MCConfig::default()
    };
    for nu in [0usize, 2] {
        let nu_b = BundleWeight(nu);
        let v = RepVector::basis(nu_b, 0);
        let f = CompactSection::tau_radial(&ctx, nu_b, bump.clone(), v);
        println!("nu = {nu}, section supported in B(2):");
        let mut ratios = Vec::new();
        for lam in [0.25, 0.5, 1.0, 2.0, 4.0, 8.0] {
            let r = restriction_ratio(&ctx, nu_b, &f, lam, &mc, 8).unwrap();
            println!("  lambda = {lam:>5}: ratio = {r:.6}");
            ratios.push(r);
        }
        ratios.sort_by(|a, b| a.partial_cmp(b).unwrap());
        println!(
            "  max/median = {:.3}\n",
            ratios.last().unwrap() / ratios[ratios.len() / 2]
        );
    }

    // export one slice at sampled K-points with its JSON sidecar
    let nu_b = BundleWeight(2);
    let v = RepVector::basis(nu_b, 0);
    let f = CompactSection::tau_radial(&ctx, nu_b, bump, v);
    let st = (
        SampleStream::new(mc.seed, 90),
        SampleStream::new(mc.seed, 91),
    );
    let ks: Vec<_> = (0..4).map(|i| haar_k(ctx, &st, i)).collect();
    let lam = 1.0;
    let values: Vec<_> = ks
        .iter()
        .map(|k| helgason_fourier(&ctx, nu_b, &f, Complex64::new(lam, 0.0), k, &mc))
        .collect();
    let mut csv = Vec::new();
    let mut sidecar = Vec::new();
    write_slice_csv(&mut csv, &mut sidecar, lam, mc.seed, &ks, &values).unwrap();
    println!(
        "slice export: {} CSV bytes + {} sidecar bytes; first rows:\n{}",
        csv.len(),
        sidecar.len(),
        String::from_utf8_lossy(&csv[..120.min(csv.len())])
    );
}
