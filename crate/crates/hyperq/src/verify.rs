//! Named verification suites over the whole stack, producing deterministic
//! JSON reports: every check carries the identity it verifies, the measured
//! value and its threshold. Reports are byte-reproducible for a fixed
//! configuration (seeded sampling, order-stable summation).

use crate::group::{
    cartan, gap, haar_k, haar_m, iwasawa, make_at, GroupContext, GroupElement, KElement,
};
use crate::jacobi::{
    bundle_params, discrete_dnu, discrete_spectrum, h_nu, jacobi_forward, jacobi_inverse,
    plancherel_defect, RadialProfile,
};
use crate::numerics::{gauss_panel, MCConfig, SampleStream};
use crate::poisson::{
    asymptotic_profile, ball_average, boundary_generator, boundary_norm_sq_mc, key_lemma_defect,
    poisson_generator, poisson_quadrature, spherical_apply, spherical_profile, Section,
};
use crate::quat::Quaternion;
use crate::reps::{BundleWeight, RepVector};
use crate::specfun::{b_nu, b_nu_epsilon, c_ab, c_nu, jacobi_phi, log_gamma, JacobiParams};
use num_complex::Complex64;

pub const SCHEMA_VERSION: u32 = 1;

/// Configuration echoed into every report.
#[derive(Debug, Clone, serde::Serialize)]
pub struct VerifyConfig {
    pub n: usize,
    pub nus: Vec<usize>,
    pub lambdas: Vec<f64>,
    pub radii: Vec<f64>,
    pub lambda_max: f64,
    pub seed: u64,
    pub k_samples: usize,
    pub ball_samples_per_panel: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            n: 1,
            nus: vec![0, 1, 2],
            lambdas: vec![0.5, 1.0, 2.0],
            radii: vec![5.0, 10.0, 20.0, 40.0],
            lambda_max: 40.0,
            seed: 42,
            k_samples: 200_000,
            ball_samples_per_panel: 32_000,
        }
    }
}

impl VerifyConfig {
    pub fn ctx(&self) -> GroupContext {
        GroupContext::new(self.n)
    }

    pub fn mc(&self) -> MCConfig {
        MCConfig {
            seed: self.seed,
            k_samples: self.k_samples,
            ball_samples_per_panel: self.ball_samples_per_panel,
            ..MCConfig::default()
        }
    }

    /// Cheap variant for integrands that are exactly K-invariant.
    fn mc_exact_k(&self) -> MCConfig {
        MCConfig {
            seed: self.seed,
            k_samples: self.k_samples,
            ball_samples_per_panel: 64,
            ..MCConfig::default()
        }
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub suite: String,
    pub config: VerifyConfig,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl SuiteReport {
    fn new(suite: &str, config: &VerifyConfig) -> Self {
        SuiteReport {
            schema: SCHEMA_VERSION,
            suite: suite.to_string(),
            config: config.clone(),
            checks: Vec::new(),
            pass: true,
        }
    }

    /// Record a check that passes when `measured <= tolerance`.
    fn le(&mut self, id: &str, anchor: &str, measured: f64, tolerance: f64) {
        let pass = measured.is_finite() && measured <= tolerance;
        self.pass &= pass;
        self.checks.push(Check {
            id: id.to_string(),
            anchor: anchor.to_string(),
            measured,
            tolerance,
            pass,
        });
    }

    /// Record a check that passes when `measured >= tolerance` (used for
    /// decisiveness margins).
    fn ge(&mut self, id: &str, anchor: &str, measured: f64, tolerance: f64) {
        let pass = measured.is_finite() && measured >= tolerance;
        self.pass &= pass;
        self.checks.push(Check {
            id: id.to_string(),
            anchor: anchor.to_string(),
            measured,
            tolerance,
            pass,
        });
    }

    fn absorb(&mut self, other: SuiteReport) {
        self.pass &= other.pass;
        self.checks.extend(other.checks);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn human_summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "[{}] {:<42} measured {:>13.6e}  tol {:>9.2e}   {}\n",
                if c.pass { " ok " } else { "FAIL" },
                c.id,
                c.measured,
                c.tolerance,
                c.anchor
            ));
        }
        out.push_str(&format!(
            "suite {}: {}\n",
            self.suite,
            if self.pass { "PASS" } else { "FAIL" }
        ));
        out
    }
}

pub const SUITE_NAMES: [&str; 7] = [
    "group", "specfun", "jacobi", "poisson", "fourier", "keylemma", "all",
];

/// Run a named suite; `None` for an unknown name.
pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Option<SuiteReport> {
    match name {
        "group" => Some(group_suite(cfg)),
        "specfun" => Some(specfun_suite(cfg)),
        "jacobi" => Some(jacobi_suite(cfg)),
        "poisson" => Some(poisson_suite(cfg)),
        "fourier" => Some(fourier_suite(cfg)),
        "keylemma" => Some(keylemma_suite(cfg)),
        "all" => {
            let mut report = SuiteReport::new("all", cfg);
            for suite in &SUITE_NAMES[..6] {
                report.absorb(run_suite(suite, cfg).unwrap());
            }
            Some(report)
        }
        _ => None,
    }
}

fn streams(seed: u64, tag: u64) -> (SampleStream, SampleStream) {
    (
        SampleStream::new(seed, 1000 + tag),
        SampleStream::new(seed, 2000 + tag),
    )
}

fn random_element(
    ctx: GroupContext,
    st: &(SampleStream, SampleStream),
    i: u64,
    smax: f64,
) -> GroupElement {
    let k1 = haar_k(ctx, st, 2 * i);
    let k2 = haar_k(ctx, st, 2 * i + 1);
    let s = smax * st.1.uniform(7_000_000 + i);
    k1.embed(ctx).mul(&make_at(ctx, s)).mul(&k2.embed(ctx))
}

fn random_vector(nu: BundleWeight, st: &SampleStream, i: u64) -> RepVector {
    let coords = (0..nu.dim())
        .map(|j| {
            Complex64::new(
                st.uniform(4_000_000 + 2 * (i * 16 + j as u64)) - 0.5,
                st.uniform(4_000_000 + 2 * (i * 16 + j as u64) + 1) - 0.5,
            )
        })
        .collect();
    RepVector::new(nu, coords)
}

// ---------------------------------------------------------------------------
// group

fn group_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut rep = SuiteReport::new("group", cfg);
    let ctx = cfg.ctx();
    let st = streams(cfg.seed, 1);

    // form invariant under long products
    let mut worst = 0.0f64;
    for trial in 0..100u64 {
        let mut g = GroupElement::identity(ctx);
        for i in 0..20u64 {
            let idx = trial * 40 + i;
            if i % 2 == 0 {
                g = g.mul(&haar_k(ctx, &st, idx).embed(ctx));
            } else {
                g = g.mul(&make_at(ctx, 2.0 * st.1.uniform(5_000_000 + idx) - 1.0));
            }
        }
        worst = worst.max(g.form_residual());
    }
    rep.le("group.form_invariant", "g* J g = J", worst, 1e-9);

    // Iwasawa equivariance
    let mut worst = 0.0f64;
    for i in 0..1000u64 {
        let g = random_element(ctx, &st, i, 2.0);
        let k = haar_k(ctx, &st, 100_000 + i);
        let s = 2.0 * st.1.uniform(6_000_000 + i) - 0.5;
        let moved = iwasawa(&k.embed(ctx).mul(&g).mul(&make_at(ctx, s)));
        let base = iwasawa(&g);
        worst = worst
            .max((moved.h - base.h - s).abs())
            .max(moved.vkappa.dist(k.q * base.vkappa));
    }
    rep.le(
        "group.iwasawa_equivariance",
        "H(k g a_s) = H(g) + s ;  kappa(k g a_s) = q_k kappa(g)",
        worst,
        1e-10,
    );

    // Cartan decomposition round trip
    let mut worst = 0.0f64;
    for i in 0..200u64 {
        let t = 0.01 + 2.99 * st.1.uniform(6_500_000 + i);
        let k1 = haar_k(ctx, &st, 200_000 + 2 * i);
        let k2 = haar_k(ctx, &st, 200_000 + 2 * i + 1);
        let g = k1.embed(ctx).mul(&make_at(ctx, t)).mul(&k2.embed(ctx));
        let cd = cartan(&g);
        let (c1, c2) = cd.full_components().expect("t above threshold");
        let re = c1.embed(ctx).mul(&make_at(ctx, cd.t)).mul(&c2.embed(ctx));
        worst = worst.max(re.matrix().sub(g.matrix()).max_norm());
    }
    rep.le(
        "group.cartan_round_trip",
        "g = k1 a_t k2 with cosh t = |d|",
        worst,
        1e-8,
    );

    // gap inequality, both sides
    let mut violation = 0.0f64;
    for i in 0..1000u64 {
        let g = random_element(ctx, &st, 300_000 + i, 1.5);
        let k = haar_k(ctx, &st, 400_000 + i);
        let t = 8.0 * st.1.uniform(6_600_000 + i);
        let gp = gap(&g, &k, t);
        let x0 = crate::group::point_norm(&g.dot_zero());
        let bound = (1.0 + x0) / (1.0 - x0) * (-2.0 * t).exp();
        violation = violation.max(-gp).max(gp - bound);
    }
    rep.le(
        "group.gap_bounds",
        "0 <= A+(g^-1 k a_t) - H(g^-1 k a_t) <= (1+|g.0|)/(1-|g.0|) e^{-2t}",
        violation,
        1e-10,
    );

    // Cartan rotation limit toward the Iwasawa part
    let mut worst = 0.0f64;
    for i in 0..50u64 {
        let g = random_element(ctx, &st, 500_000 + i, 1.5);
        let w = cartan(&g.mul(&make_at(ctx, 20.0))).w;
        worst = worst.max(w.dist(iwasawa(&g).vkappa));
    }
    rep.le(
        "group.cartan_limit",
        "w(g a_R) -> (c e1 + d)/|c e1 + d| as R -> inf",
        worst,
        1e-8,
    );

    // normalized density mean
    let r = 50.0;
    let (nodes, weights) = gauss_panel(0.0, r, 512);
    let mean: f64 = nodes
        .iter()
        .zip(&weights)
        .map(|(&t, &w)| w * (-2.0 * ctx.rho() * t).exp() * ctx.density(t))
        .sum::<f64>()
        / r;
    rep.le(
        "group.density_mean",
        "(1/R) int_0^R e^{-2 rho t} Delta(t) dt -> 1",
        (mean - 1.0).abs(),
        0.02,
    );

    rep
}

// ---------------------------------------------------------------------------
// specfun

/// Fixed-step RK4 continuation of the radial equation, started from the
/// power-series region; an evaluation route independent of the
/// connection-formula path it is used to check.
fn phi_ode_continuation(p: &JacobiParams, lambda: Complex64, targets: &[f64]) -> Vec<Complex64> {
    let t0 = 0.5;
    let h_stencil = 1e-5;
    let phi = |t: f64| jacobi_phi(p, lambda, t).expect("series region");
    let mut y = phi(t0);
    let mut dy = (phi(t0 - 2.0 * h_stencil) - phi(t0 - h_stencil) * 8.0
        + phi(t0 + h_stencil) * 8.0
        - phi(t0 + 2.0 * h_stencil))
        / (12.0 * h_stencil);
    let rhs = |t: f64, y: Complex64, dy: Complex64| {
        let coef = (2.0 * p.alpha() + 1.0) / t.tanh() + (2.0 * p.beta() + 1.0) * t.tanh();
        (dy, -coef * dy - (lambda * lambda + p.rho() * p.rho()) * y)
    };
    let h = 1e-4f64;
    let mut t = t0;
    let mut out = Vec::with_capacity(targets.len());
    for &target in targets {
        while t < target - 1e-12 {
            let step = h.min(target - t);
            let (k1a, k1b) = rhs(t, y, dy);
            let (k2a, k2b) = rhs(t + 0.5 * step, y + 0.5 * step * k1a, dy + 0.5 * step * k1b);
            let (k3a, k3b) = rhs(t + 0.5 * step, y + 0.5 * step * k2a, dy + 0.5 * step * k2b);
            let (k4a, k4b) = rhs(t + step, y + step * k3a, dy + step * k3b);
            y += step / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
            dy += step / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
            t += step;
        }
        out.push(y);
    }
    out
}

fn specfun_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut rep = SuiteReport::new("specfun", cfg);
    let st = streams(cfg.seed, 2);
    let param_sets = [(1.0, 1.0), (1.0, 2.0), (1.0, 5.0), (3.0, 2.0)];

    // log-gamma recurrence
    let mut worst = 0.0f64;
    for i in 0..200u64 {
        let z = Complex64::new(
            6.0 * st.0.uniform(2 * i) - 2.0,
            8.0 * st.0.uniform(2 * i + 1) - 4.0,
        );
        let (a, b) = (log_gamma(z + 1.0), log_gamma(z));
        if let (Ok(a), Ok(b)) = (a, b) {
            let lhs = a.exp();
            let rhs = z * b.exp();
            worst = worst.max((lhs - rhs).norm() / rhs.norm().max(1e-30));
        }
    }
    rep.le(
        "specfun.log_gamma_recurrence",
        "Gamma(z+1) = z Gamma(z)",
        worst,
        1e-12,
    );

    // radial differential equation residual by finite differences
    let mut worst = 0.0f64;
    for i in 0..20u64 {
        let alpha = 0.1 + 2.5 * st.0.uniform(1_000 + 3 * i);
        let beta = 3.0 * st.0.uniform(1_000 + 3 * i + 1) - 0.5;
        let lam = Complex64::new(0.5 + 3.5 * st.0.uniform(1_000 + 3 * i + 2), 0.0);
        let p = JacobiParams::new(alpha, beta).unwrap();
        for &t in &[0.5, 1.1, 1.9, 3.0] {
            let h = 1e-4;
            let f = |tt: f64| jacobi_phi(&p, lam, tt).unwrap();
            let (fm2, fm1, f0, fp1, fp2) =
                (f(t - 2.0 * h), f(t - h), f(t), f(t + h), f(t + 2.0 * h));
            let d1 = (fm2 - fm1 * 8.0 + fp1 * 8.0 - fp2) / (12.0 * h);
            let d2 = (-fm2 + fm1 * 16.0 - f0 * 30.0 + fp1 * 16.0 - fp2) / (12.0 * h * h);
            let coef = (2.0 * alpha + 1.0) / t.tanh() + (2.0 * beta + 1.0) * t.tanh();
            worst = worst.max((d2 + coef * d1 + (lam * lam + p.rho() * p.rho()) * f0).norm());
        }
    }
    rep.le(
        "specfun.ode_residual",
        "phi'' + [(2a+1) coth t + (2b+1) tanh t] phi' + (lambda^2 + rho^2) phi = 0",
        worst,
        1e-6,
    );

    // connection formula against the ODE continuation
    let mut worst = 0.0f64;
    for (alpha, beta) in param_sets {
        let p = JacobiParams::new(alpha, beta).unwrap();
        for &lam in &[0.5, 1.0, 2.0, 5.0] {
            let lamc = Complex64::new(lam, 0.0);
            let targets: Vec<f64> = (1..=10).map(|k| k as f64).collect();
            let reference = phi_ode_continuation(&p, lamc, &targets);
            for (&t, refv) in targets.iter().zip(&reference) {
                let cp = c_ab(&p, lamc).unwrap();
                let cm = c_ab(&p, -lamc).unwrap();
                let conn = cp * crate::specfun::jacobi_psi(&p, lamc, t).unwrap()
                    + cm * crate::specfun::jacobi_psi(&p, -lamc, t).unwrap();
                worst = worst.max((conn - refv).norm() / refv.norm());
            }
        }
    }
    rep.le(
        "specfun.connection_formula",
        "phi_lambda = c(lambda) Psi_lambda + c(-lambda) Psi_{-lambda}",
        worst,
        1e-8,
    );

    // spherical asymptotics: e^{(rho - i lambda) t} phi -> c(lambda),
    // Im lambda = -0.5, t = 15; ODE continuation as the phi route. The
    // finite-t truncation term is |c(-lambda)/c(lambda)| e^{-t}, which
    // stays below the threshold for Re lambda >= 2 at t = 15.
    let mut worst = 0.0f64;
    for (alpha, beta) in param_sets {
        let p = JacobiParams::new(alpha, beta).unwrap();
        for &re in &[2.0, 5.0] {
            let lam = Complex64::new(re, -0.5);
            let t = 15.0;
            let phi15 = phi_ode_continuation(&p, lam, &[t])[0];
            let scaled =
                ((Complex64::new(p.rho(), 0.0) - Complex64::new(0.0, 1.0) * lam) * t).exp() * phi15;
            let c = c_ab(&p, lam).unwrap();
            worst = worst.max((scaled - c).norm() / c.norm());
        }
    }
    rep.le(
        "specfun.spherical_asymptotics",
        "e^{(rho - i lambda) t} phi_lambda(t) -> c(lambda)",
        worst,
        1e-6,
    );

    // evenness in lambda
    let mut worst = 0.0f64;
    for i in 0..100u64 {
        let alpha = 3.0 * st.0.uniform(9_000 + 4 * i);
        let beta = 4.0 * st.0.uniform(9_000 + 4 * i + 1) - 1.0;
        let lam = Complex64::new(4.0 * st.0.uniform(9_000 + 4 * i + 2) + 0.01, 0.0);
        let t = 3.0 * st.0.uniform(9_000 + 4 * i + 3);
        let p = JacobiParams::new(alpha, beta).unwrap();
        let a = jacobi_phi(&p, lam, t).unwrap();
        let b = jacobi_phi(&p, -lam, t).unwrap();
        worst = worst.max((a - b).norm() / a.norm().max(1e-12));
    }
    rep.le(
        "specfun.phi_even",
        "phi_lambda = phi_{-lambda}",
        worst,
        1e-10,
    );

    // two-sided growth of the regularized c-function
    let ctx = cfg.ctx();
    let mut worst_ratio = 0.0f64;
    for &nu in &cfg.nus {
        let nu = BundleWeight(nu);
        let expo = (2.0 * ctx.rho() - 4.0 - b_nu_epsilon(&ctx, nu)) / 4.0;
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for i in 0..=200 {
            let lam = -50.0 + 0.5 * i as f64;
            let r = b_nu(&ctx, nu, lam).norm().recip() / (1.0 + lam * lam).powf(expo);
            lo = lo.min(r);
            hi = hi.max(r);
        }
        worst_ratio = worst_ratio.max(hi / lo);
    }
    rep.le(
        "specfun.b_growth",
        "|b_nu(lambda)|^{-1} x (1+lambda^2)^{-(2rho-4-eps)/4} in [1/C, C]",
        worst_ratio,
        25.0,
    );

    // prefactor relation between the two c-function normalizations
    let mut worst = 0.0f64;
    for &nu in &cfg.nus {
        let p = bundle_params(&ctx, BundleWeight(nu));
        for i in 0..20u64 {
            let lam = Complex64::new(
                8.0 * st.0.uniform(20_000 + 2 * i) + 0.05,
                2.0 * st.0.uniform(20_000 + 2 * i + 1) - 1.0,
            );
            let lhs = c_ab(&p, lam).unwrap();
            let rhs = c_nu(&ctx, BundleWeight(nu), lam).unwrap() * (2.0f64).powi(nu as i32);
            worst = worst.max((lhs - rhs).norm() / lhs.norm());
        }
    }
    rep.le(
        "specfun.c_scaling",
        "c_{rho-2, nu+1}(lambda) = 2^nu c_nu(lambda)",
        worst,
        1e-11,
    );

    rep
}

// ---------------------------------------------------------------------------
// jacobi

/// `-i Res (c(lambda) c(-lambda))^{-1}` by a trapezoid contour around the
/// pole; geometric convergence for the analytic integrand.
pub fn residue_oracle(p: &JacobiParams, lambda0: Complex64, radius: f64) -> Complex64 {
    let m = 256;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..m {
        let th = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
        let z = lambda0 + radius * Complex64::new(th.cos(), th.sin());
        let val = 1.0 / (c_ab(p, z).unwrap() * c_ab(p, -z).unwrap());
        acc += val * (z - lambda0);
    }
    Complex64::new(0.0, -1.0) * acc / m as f64
}

fn jacobi_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut rep = SuiteReport::new("jacobi", cfg);
    let ctx = cfg.ctx();
    let bump = RadialProfile::poly_bump(2.0, 8);

    for (alpha, beta, id_rt, id_pl, tol_rt, tol_pl) in [
        (
            1.0,
            2.0,
            "jacobi.round_trip_plain",
            "jacobi.plancherel_plain",
            1e-4,
            1e-4,
        ),
        (
            1.0,
            5.0,
            "jacobi.round_trip_discrete",
            "jacobi.plancherel_discrete",
            1e-3,
            1e-3,
        ),
    ] {
        let p = JacobiParams::new(alpha, beta).unwrap();
        let ds = discrete_spectrum(&p);
        let spectrum = |lam: Complex64| jacobi_forward(&p, &bump, lam);
        let mut worst = 0.0f64;
        for &t in &[0.0, 0.3, 0.9, 1.3, 1.7] {
            let got = jacobi_inverse(&p, &spectrum, &ds, t, cfg.lambda_max).unwrap();
            worst = worst.max((got - bump.eval(t)).norm());
        }
        rep.le(
            id_rt,
            "f = (1/2pi) int Jf phi |c|^-2 dlambda + sum (d_k/2) Jf(lambda_k) phi_k",
            worst,
            tol_rt,
        );
        let defect = plancherel_defect(&p, &bump, cfg.lambda_max).unwrap();
        rep.le(
            id_pl,
            "int |f|^2 Delta = (1/2pi) int |Jf|^2 |c|^-2 + sum (d_k/2) |Jf(lambda_k)|^2",
            defect,
            tol_pl,
        );
    }

    // bundle spectrum equals the Jacobi spectrum entry-by-entry
    let mut worst = 0.0f64;
    for nu in 0..=6usize {
        let a = discrete_dnu(&ctx, BundleWeight(nu));
        let b = discrete_spectrum(&bundle_params(&ctx, BundleWeight(nu)));
        if a.len() != b.len() {
            worst = f64::INFINITY;
            continue;
        }
        for (x, y) in a.entries.iter().zip(&b.entries) {
            worst = worst
                .max((x.lambda - y.lambda).norm())
                .max((x.coefficient - y.coefficient).abs() / y.coefficient.abs());
        }
    }
    rep.le(
        "jacobi.dnu_consistency",
        "D_nu = D_{rho-2, nu+1} with equal coefficients",
        worst,
        1e-10,
    );

    // residue oracle for the discrete coefficients
    let p15 = JacobiParams::new(1.0, 5.0).unwrap();
    let mut worst = 0.0f64;
    for term in &discrete_spectrum(&p15).entries {
        let res = residue_oracle(&p15, term.lambda, 0.2);
        worst = worst.max((res.re - term.coefficient).abs() / term.coefficient);
        worst = worst.max(res.im.abs() / term.coefficient);
    }
    rep.le(
        "jacobi.residue_oracle",
        "d_k = -i Res_{lambda_k} (c(lambda) c(-lambda))^{-1}",
        worst,
        1e-6,
    );

    // measure identity
    let mut worst = 0.0f64;
    for &nu in &cfg.nus {
        let p = bundle_params(&ctx, BundleWeight(nu));
        for i in 1..=30 {
            let t = 0.1 * i as f64;
            let lhs = ctx.density(t);
            let rhs = (2.0 * t.cosh()).powi(-2 * nu as i32) * p.density(t);
            worst = worst.max((lhs - rhs).abs() / lhs);
        }
    }
    rep.le(
        "jacobi.measure_identity",
        "Delta(t) = (2 cosh t)^{-2 nu} Delta_{rho-2, nu+1}(t)",
        worst,
        1e-12,
    );

    rep
}

// ---------------------------------------------------------------------------
// poisson

fn poisson_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut rep = SuiteReport::new("poisson", cfg);
    let ctx = cfg.ctx();
    let st = streams(cfg.seed, 3);
    let mc = cfg.mc();

    // boundary norm of a generator equals the fiber norm
    {
        let nu = BundleWeight(*cfg.nus.last().unwrap_or(&1));
        let g = random_element(ctx, &st, 11, 1.2);
        let v = random_vector(nu, &st.1, 5);
        let f = boundary_generator(&ctx, nu, Complex64::new(0.8, 0.0), &g, &v);
        let (norm_sq, stderr) = boundary_norm_sq_mc(&ctx, &f, &mc);
        rep.le(
            "poisson.generator_norm",
            "int_K e^{-2 rho H(g^-1 k)} dk = 1",
            (norm_sq - v.norm_sq()).abs() / v.norm_sq(),
            0.01 + 4.0 * stderr / v.norm_sq(),
        );
    }

    // Plancherel-type limit of the Poisson transform: base point e makes
    // the K-integrand exact, so the ball average is deterministic
    for &nu in &cfg.nus {
        for &lam in &cfg.lambdas {
            let nu_b = BundleWeight(nu);
            let lamc = Complex64::new(lam, 0.0);
            let v = RepVector::basis(nu_b, 0);
            let section = poisson_generator(&ctx, nu_b, lamc, &GroupElement::identity(ctx), &v);
            let report = ball_average(&ctx, &section, &cfg.radii, &cfg.mc_exact_k());
            let e2 = 2.0 * c_nu(&ctx, nu_b, lamc).unwrap().norm_sqr();
            rep.le(
                &format!("poisson.e2_limit[nu={nu},lambda={lam}]"),
                "lim (1/R) int_B(R) ||P f||^2 = 2 |c_nu(lambda)|^2 ||f||^2",
                (report.extrapolated_limit / e2 - 1.0).abs(),
                0.03,
            );
        }
    }

    // uniform two-sided bound of the sup functional across lambda
    {
        let nu = BundleWeight(cfg.nus[cfg.nus.len() / 2]);
        let g = random_element(ctx, &st, 21, 0.7);
        let v = RepVector::basis(nu, 0);
        let mut worst = 0.0f64;
        let mut lams = cfg.lambdas.clone();
        for extra in [4.0, 8.0] {
            if !lams.contains(&extra) {
                lams.push(extra);
            }
        }
        for &lam in &lams {
            let lamc = Complex64::new(lam, 0.0);
            let section = poisson_generator(&ctx, nu, lamc, &g, &v);
            let report = ball_average(&ctx, &section, &cfg.radii, &mc);
            let scale = c_nu(&ctx, nu, lamc).unwrap().norm_sqr() * v.norm_sq();
            let sup = report.values.iter().cloned().fold(0.0, f64::max) / scale;
            worst = worst.max(sup).max(1.0 / sup);
        }
        rep.le(
            "poisson.sup_bound",
            "sup_R (1/R) int_B(R) ||P f||^2 in [1/C, C] |c_nu(lambda)|^2 ||f||^2, C <= 4",
            worst,
            4.0,
        );
    }

    // translated spherical identity through the quadrature route
    {
        let nu = BundleWeight(*cfg.nus.first().unwrap_or(&0).max(&1));
        let lamc = Complex64::new(cfg.lambdas[cfg.lambdas.len() / 2], 0.0);
        let g0 = random_element(ctx, &st, 33, 0.8);
        let x = random_element(ctx, &st, 44, 1.0);
        let v = random_vector(nu, &st.1, 7);
        let f = boundary_generator(&ctx, nu, lamc, &g0, &v);
        let (quad, stderr) = poisson_quadrature(&ctx, nu, lamc, &f, &x, &mc);
        let closed = spherical_apply(&ctx, nu, lamc, &g0.inverse().mul(&x), &v).unwrap();
        rep.le(
            "poisson.translated_spherical",
            "P f^g(x) = Phi_{nu,lambda}(g^-1 x) v",
            quad.sub(&closed).norm() / closed.norm(),
            0.01 + 5.0 * stderr / closed.norm(),
        );
    }

    // decay exponent of the spherical remainder via window maxima
    {
        let nu = BundleWeight(1);
        let lamc = Complex64::new(1.0, 0.0);
        let cp = c_nu(&ctx, nu, lamc).unwrap();
        let cm = c_nu(&ctx, nu, -lamc).unwrap();
        let i = Complex64::new(0.0, 1.0);
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for w in 1..10 {
            let mut peak = 0.0f64;
            for j in 0..50 {
                let t = w as f64 + j as f64 / 50.0;
                let d = spherical_profile(&ctx, nu, lamc, t).unwrap()
                    - cp * ((i * lamc - ctx.rho()) * t).exp()
                    - cm * ((-i * lamc - ctx.rho()) * t).exp();
                peak = peak.max(d.norm());
            }
            xs.push(w as f64 + 0.5);
            ys.push(peak.ln());
        }
        let nn = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / nn;
        let my = ys.iter().sum::<f64>() / nn;
        let slope = xs
            .iter()
            .zip(&ys)
            .map(|(x, y)| (x - mx) * (y - my))
            .sum::<f64>()
            / xs.iter().map(|x| (x - mx) * (x - mx)).sum::<f64>();
        rep.le(
            "poisson.asymp_exponent",
            "|phi_{nu,lambda}(t) - sum_s c(s lambda) e^{(is lambda - rho) t}| <= C e^{-(rho+2) t}",
            (slope + ctx.rho() + 2.0).abs(),
            0.1,
        );
    }

    rep
}

// ---------------------------------------------------------------------------
// key lemma

fn keylemma_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut rep = SuiteReport::new("keylemma", cfg);
    let ctx = cfg.ctx();
    let st = streams(cfg.seed, 4);
    let lam = cfg.lambdas[cfg.lambdas.len() / 2];

    // scalar remainder at base point e: the K-integrand is exact and the
    // defect must fall below 1% of the Plancherel-Poisson limit
    {
        let nu = BundleWeight(*cfg.nus.first().unwrap_or(&0));
        let v = RepVector::basis(nu, 0);
        let report = key_lemma_defect(
            &ctx,
            nu,
            lam,
            &GroupElement::identity(ctx),
            &v,
            &cfg.radii,
            &cfg.mc_exact_k(),
        )
        .unwrap();
        let e2 = 2.0 * c_nu(&ctx, nu, Complex64::new(lam, 0.0)).unwrap().norm_sqr();
        let mut worst_increase = 0.0f64;
        for w in report.values.windows(2) {
            worst_increase = worst_increase.max(w[1] - w[0]);
        }
        rep.le(
            "keylemma.scalar_monotone",
            "(1/R) int_0^R |phi_{nu,lambda} - sum_s c(s lambda) e^{(is lambda - rho) t}|^2 Delta dt decreasing",
            worst_increase,
            0.0,
        );
        rep.le(
            "keylemma.scalar_decay",
            "defect(R=40) <= 1% of 2 |c_nu(lambda)|^2 ||v||^2",
            report.extrapolated_limit / e2,
            0.01,
        );
    }

    // translated case: random base point with |g.0| <= 0.6
    {
        let nu = BundleWeight(cfg.nus[cfg.nus.len() / 2]);
        let mut g = random_element(ctx, &st, 3, 0.7);
        while crate::group::point_norm(&g.dot_zero()) > 0.6 {
            g = random_element(ctx, &st, 7, 0.5);
        }
        let v = RepVector::basis(nu, 0);
        let report = key_lemma_defect(&ctx, nu, lam, &g, &v, &cfg.radii, &cfg.mc()).unwrap();
        let e2 = 2.0 * c_nu(&ctx, nu, Complex64::new(lam, 0.0)).unwrap().norm_sqr();
        rep.le(
            "keylemma.translated_decay",
            "ball average of ||Phi(g^-1 x) v - S f^g(x)||^2 -> 0 (<= 5% of the limit at R=40)",
            report.extrapolated_limit / e2,
            0.05,
        );
    }

    rep
}

// ---------------------------------------------------------------------------
// fourier

fn fourier_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut rep = SuiteReport::new("fourier", cfg);
    let ctx = cfg.ctx();
    let mc = cfg.mc();
    let two_pi_inv = 1.0 / (2.0 * std::f64::consts::PI);
    let pi_inv = 1.0 / std::f64::consts::PI;
    let bump = RadialProfile::poly_bump(2.0, 8);
    let disc_nu = 2 * ctx.n() + 3; // smallest weight with two discrete terms

    for nu in [0usize, disc_nu] {
        let nu_b = BundleWeight(nu);
        let report =
            crate::fourier::tau_radial_plancherel(&ctx, nu_b, &bump, cfg.lambda_max).unwrap();
        rep.le(
            &format!("fourier.plancherel[nu={nu}]"),
            "int ||F||^2 = kappa int ||F_nu F||^2 |c_nu|^-2 dlambda + discrete",
            report.defect,
            1e-3,
        );
        rep.le(
            &format!("fourier.plancherel_kappa[nu={nu}]"),
            "kappa = 1/2pi within 10%",
            (report.measured_constant - two_pi_inv).abs() / two_pi_inv,
            0.10,
        );
        rep.ge(
            &format!("fourier.plancherel_kappa_margin[nu={nu}]"),
            "kappa differs from the 1/pi candidate by more than 10%",
            (report.measured_constant - pi_inv).abs() / pi_inv,
            0.10,
        );
        let rows = crate::fourier::tau_radial_inversion(
            &ctx,
            nu_b,
            &bump,
            cfg.lambda_max,
            &[0.4, 1.0, 1.6],
        )
        .unwrap();
        let sup = bump.sup_norm();
        let mut worst = 0.0f64;
        for (_, recon, truth) in rows {
            worst = worst.max((recon - truth).norm() / sup);
        }
        rep.le(
            &format!("fourier.inversion[nu={nu}]"),
            "F(a_t) recovered from slices plus discrete terms (<= 1% of sup ||F||)",
            worst,
            0.01,
        );
    }

    // restriction estimate: uniformity of the ratio across lambda
    for nu in [0usize, 2] {
        let nu_b = BundleWeight(nu);
        let v = RepVector::basis(nu_b, 0);
        let f = crate::fourier::CompactSection::tau_radial(&ctx, nu_b, bump.clone(), v);
        let mut ratios: Vec<f64> = Vec::new();
        for &lam in &[0.25, 0.5, 1.0, 2.0, 4.0, 8.0] {
            ratios.push(crate::fourier::restriction_ratio(&ctx, nu_b, &f, lam, &mc, 8).unwrap());
        }
        let mut sorted = ratios.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let median = sorted[sorted.len() / 2];
        let max = sorted.last().unwrap();
        rep.le(
            &format!("fourier.restriction[nu={nu}]"),
            "(int_K ||F_nu F(lambda,.)||^2)^(1/2) <= C |c_nu(lambda)| R^(1/2) ||F|| uniformly",
            max / median,
            3.0,
        );
    }

    // slice factorization on tau-radial data
    {
        let nu_b = BundleWeight(1);
        let profile = RadialProfile::smooth_bump(1.5);
        let v = RepVector::basis(nu_b, 0);
        let f = crate::fourier::CompactSection::tau_radial(&ctx, nu_b, profile.clone(), v.clone());
        let lam = Complex64::new(0.9, 0.0);
        let want_scalar = h_nu(&ctx, nu_b, &profile, lam).unwrap();
        let stf = streams(cfg.seed, 5);
        let k = haar_k(ctx, &stf, 1);
        let got = crate::fourier::helgason_fourier(&ctx, nu_b, &f, lam, &k, &mc);
        let want = crate::reps::tau_matrix(nu_b, k.q.conj())
            .unwrap()
            .apply(&v)
            .scale(want_scalar);
        rep.le(
            "fourier.slice_factorization",
            "F_nu(Phi v)(lambda, k) = H_nu(Phi)(lambda) tau_nu(k)^-1 v",
            got.sub(&want).norm() / want.norm(),
            0.03,
        );
    }

    // convolution multiplication law on the radial family
    {
        let nu_b = BundleWeight(1);
        let pf = RadialProfile::smooth_bump(1.2);
        let pk = RadialProfile::smooth_bump(1.0);
        let v = RepVector::basis(nu_b, 0);
        let f = crate::fourier::CompactSection::tau_radial(&ctx, nu_b, pf.clone(), v.clone());
        let support = 2.2;
        let nt = 23usize;
        let ts: Vec<f64> = (0..=nt).map(|i| support * i as f64 / nt as f64).collect();
        let vals: Vec<Complex64> = ts
            .iter()
            .map(|&t| {
                let val =
                    crate::fourier::convolve_radial(&ctx, nu_b, &pk, &f, &make_at(ctx, t), &mc);
                v.inner(&val) / v.norm_sq()
            })
            .collect();
        let conv_profile = RadialProfile::from_samples(ts, vals).unwrap();
        let conv = crate::fourier::CompactSection::tau_radial(&ctx, nu_b, conv_profile, v);
        let lam = Complex64::new(1.1, 0.0);
        let k = KElement::identity(ctx.n());
        let lhs = crate::fourier::helgason_fourier(&ctx, nu_b, &conv, lam, &k, &mc);
        let rhs = crate::fourier::helgason_fourier(&ctx, nu_b, &f, lam, &k, &mc)
            .scale(h_nu(&ctx, nu_b, &pk, lam).unwrap());
        rep.le(
            "fourier.multiplication",
            "F_nu(Phi * F)(lambda, k) = H_nu(Phi)(lambda) F_nu(F)(lambda, k)",
            lhs.sub(&rhs).norm() / rhs.norm(),
            0.03,
        );
    }

    // spectral projection: quadrature pipeline against the closed form
    {
        let nu_b = BundleWeight(1);
        let profile = RadialProfile::smooth_bump(1.2);
        let v = RepVector::basis(nu_b, 0);
        let f = crate::fourier::CompactSection::tau_radial(&ctx, nu_b, profile.clone(), v.clone());
        let lambda = 1.3;
        let t = 0.8;
        let closed =
            crate::fourier::spectral_projection_radial(&ctx, nu_b, &profile, lambda, t).unwrap();
        let outer = MCConfig {
            k_samples: 1024,
            ..mc.clone()
        };
        let slice_mc = MCConfig {
            ball_samples_per_panel: 10_000,
            ..mc.clone()
        };
        let lamc = Complex64::new(lambda, 0.0);
        let c = c_nu(&ctx, nu_b, lamc).unwrap();
        let slice = crate::fourier::fourier_slice(&ctx, nu_b, &f, lamc, &slice_mc);
        let (raw, stderr) = poisson_quadrature(&ctx, nu_b, lamc, &slice, &make_at(ctx, t), &outer);
        let got = raw.scale(Complex64::new(1.0 / c.norm_sqr(), 0.0));
        let want = v.scale(closed);
        rep.le(
            "fourier.projection_pipeline",
            "Q_lambda F = |c_nu(lambda)|^-2 P_lambda[F_nu F(lambda, .)]",
            got.sub(&want).norm() / want.norm(),
            0.05 + 4.0 * stderr / (c.norm_sqr() * want.norm()),
        );
    }

    // lambda-integrated aggregate of the spectral projections
    {
        let nu_b = BundleWeight(0);
        let (aggregates, cont_norm_sq) =
            crate::fourier::spectral_aggregate_radial(&ctx, nu_b, &bump, 20.0, &cfg.radii).unwrap();
        let last = *aggregates.last().unwrap();
        rep.le(
            "fourier.spectral_aggregate_limit",
            "int (1/R) int_B(R) ||Q_lambda F||^2 dlambda/2pi -> 2 ||F||^2 (10% at R = 40)",
            (last / (2.0 * cont_norm_sq) - 1.0).abs(),
            0.10,
        );
        let sup = aggregates.iter().cloned().fold(0.0, f64::max) / cont_norm_sq;
        rep.le(
            "fourier.spectral_aggregate_bound",
            "sup_R aggregate within a factor 2 of ||F||^2",
            sup.max(1.0 / sup),
            2.0,
        );
    }

    rep
}

// gauge/M-covariance spot check shared by tests
#[doc(hidden)]
pub fn gauge_invariance_worst_case(cfg: &VerifyConfig) -> f64 {
    let ctx = cfg.ctx();
    let st = streams(cfg.seed, 6);
    let nu = BundleWeight(2);
    let lam = Complex64::new(0.8, 0.0);
    let g = random_element(ctx, &st, 8, 0.9);
    let v = random_vector(nu, &st.1, 8);
    let f = boundary_generator(&ctx, nu, lam, &g, &v);
    let uf = f.u_lambda().unwrap();
    let x = random_element(ctx, &st, 21, 2.0);
    let want = asymptotic_profile(&ctx, nu, lam, &f, &uf, &x).unwrap();
    let cd = cartan(&x);
    let (k1, k2) = cd.full_components().unwrap();
    let mut worst = 0.0f64;
    for i in 0..10u64 {
        let m = haar_m(ctx, &streams(cfg.seed, 7), i);
        let k1m = k1.mul(&m);
        let m_inv_k2 = m.inverse().mul(k2);
        let i_c = Complex64::new(0.0, 1.0);
        let cp = c_nu(&ctx, nu, lam).unwrap();
        let cm = c_nu(&ctx, nu, -lam).unwrap();
        let term_p = f
            .eval(&ctx, &k1m)
            .scale(cp * ((i_c * lam - ctx.rho()) * cd.t).exp());
        let term_m = uf
            .eval(&ctx, &k1m)
            .scale(cm * ((-i_c * lam - ctx.rho()) * cd.t).exp());
        let perturbed = crate::reps::tau_matrix(nu, m_inv_k2.q.conj())
            .unwrap()
            .apply(&term_p.add(&term_m));
        worst = worst.max(perturbed.sub(&want).norm() / want.norm());
    }
    let _ = Quaternion::ONE;
    let _ = Section::zero(nu);
    worst
}
