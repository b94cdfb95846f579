//! Jacobi functions, bundle spherical profiles and c-functions on a grid,
//! with the large-radius asymptotics made visible.

use hyperq::group::GroupContext;
use hyperq::poisson::spherical_profile;
use hyperq::reps::BundleWeight;
use hyperq::specfun::{c_nu, jacobi_phi, jacobi_psi, JacobiParams};
use num_complex::Complex64;

fn main() {
    let p = JacobiParams::new(1.0, 2.0).unwrap();
    let lam = Complex64::new(1.0, 0.0);
    println!("phi and Psi at (alpha, beta) = (1, 2), lambda = 1:");
    println!("{:>5} {:>22} {:>22}", "t", "phi", "e^((rho-il)t) Psi");
    for i in 0..=8 {
        let t = 0.5 + 1.5 * i as f64;
        let phi = jacobi_phi(&p, lam, t).unwrap();
        let psi = jacobi_psi(&p, lam, t).unwrap();
        let scaled =
            ((Complex64::new(p.rho(), 0.0) - Complex64::new(0.0, 1.0) * lam) * t).exp() * psi;
        println!("{t:>5.1} {:>22.3e} {:>22.6}", phi.re, scaled.re);
    }

    let ctx = GroupContext::new(1);
    println!("\nbundle spherical profile phi_(nu,lambda) and its asymptotic");
    println!("coefficient c_nu(lambda), n = 1:");
    for nu in [0usize, 1, 2] {
        let nu_b = BundleWeight(nu);
        let c = c_nu(&ctx, nu_b, lam).unwrap();
        let t = 12.0;
        let phi = spherical_profile(&ctx, nu_b, lam, t).unwrap();
        let recovered =
            ((Complex64::new(ctx.rho(), 0.0) - Complex64::new(0.0, 1.0) * lam) * t).exp() * phi;
        println!(
            "  nu={nu}: c_nu(1) = {:.6} {:+.6}i, e^((rho-il)t) phi_nu(t=12) = {:.6} {:+.6}i",
            c.re, c.im, recovered.re, recovered.im
        );
    }
    println!("\n(the scaled profile approaches c_nu(lambda) up to the oscillating");
    println!(" conjugate branch, which dies off like e^(-2 Im(lambda) t))");
}
