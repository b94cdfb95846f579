//! The discrete spectra D_(alpha,beta) and D_nu, their closed-form
//! coefficients, and the contour-residue cross-check.

use hyperq::group::GroupContext;
use hyperq::jacobi::{bundle_params, discrete_dnu, discrete_spectrum};
use hyperq::reps::BundleWeight;
use hyperq::specfun::JacobiParams;
use hyperq::verify::residue_oracle;

fn main() {
    let p = JacobiParams::new(1.0, 5.0).unwrap();
    println!("(alpha, beta) = (1, 5):");
    for term in &discrete_spectrum(&p).entries {
        let res = residue_oracle(&p, term.lambda, 0.2);
        println!(
            "  lambda_k = {}i: d_k = {:.12e}, contour residue = {:.12e}, Plancherel weight d_k/2 = {:.6e}",
            term.lambda.im, term.coefficient, res.re, term.plancherel_weight()
        );
    }

    let ctx = GroupContext::new(1);
    println!("\nbundle spectra at n = 1 (empty through nu = rho - 2 = 1):");
    for nu in 0..=6usize {
        let ds = discrete_dnu(&ctx, BundleWeight(nu));
        let pts: Vec<String> = ds
            .entries
            .iter()
            .map(|t| format!("{}i", t.lambda.im))
            .collect();
        let check = discrete_spectrum(&bundle_params(&ctx, BundleWeight(nu)));
        let agree = ds
            .entries
            .iter()
            .zip(&check.entries)
            .all(|(a, b)| (a.coefficient - b.coefficient).abs() <= 1e-10 * b.coefficient);
        println!(
            "  nu={nu}: D_nu = [{}]  (matches the (rho-2, nu+1) spectrum: {})",
            pts.join(", "),
            agree
        );
    }
}
