//! Acceptance gate: the quantitative desk-scale checks of the identities,
//! asymptotics and Plancherel-type limits, printed one line per criterion.
//!
//! Every tolerance is pinned here; the named suite checks must both pass
//! and carry exactly the pinned threshold, so a later change to the suites
//! cannot silently weaken this gate.

use hyperq::fourier::{tau_radial_inversion, tau_radial_plancherel};
use hyperq::group::GroupContext;
use hyperq::jacobi::{bundle_params, discrete_dnu, discrete_spectrum, RadialProfile};
use hyperq::reps::BundleWeight;
use hyperq::verify::{run_suite, SuiteReport, VerifyConfig};
use std::time::Instant;

fn line(criterion: u32, pass: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} - {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

/// Pull a named check and insist on the pinned tolerance.
fn pinned(report: &SuiteReport, id: &str, tolerance: f64) -> (f64, bool) {
    let check = report
        .checks
        .iter()
        .find(|c| c.id == id)
        .unwrap_or_else(|| panic!("check {id} missing"));
    assert_eq!(
        check.tolerance, tolerance,
        "check {id} tolerance drifted from the pinned value"
    );
    (check.measured, check.pass)
}

#[test]
fn criterion_01_special_function_core() {
    let start = Instant::now();
    let report = run_suite("specfun", &VerifyConfig::default()).unwrap();
    let (a3, a3_ok) = pinned(&report, "specfun.connection_formula", 1e-8);
    let (a4, a4_ok) = pinned(&report, "specfun.spherical_asymptotics", 1e-6);
    let (ode, ode_ok) = pinned(&report, "specfun.ode_residual", 1e-6);
    let elapsed = start.elapsed().as_secs_f64();
    let pass = a3_ok && a4_ok && ode_ok && elapsed < 10.0;
    line(
        1,
        pass,
        &format!(
            "connection formula {a3:.2e} <= 1e-8, large-radius limit {a4:.2e} <= 1e-6 (relative), \
             radial equation residual {ode:.2e} <= 1e-6, runtime {elapsed:.1}s < 10s"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_02_jacobi_transform() {
    let start = Instant::now();
    let report = run_suite("jacobi", &VerifyConfig::default()).unwrap();
    let (rt_plain, ok1) = pinned(&report, "jacobi.round_trip_plain", 1e-4);
    let (rt_disc, ok2) = pinned(&report, "jacobi.round_trip_discrete", 1e-3);
    let (pl_plain, ok3) = pinned(&report, "jacobi.plancherel_plain", 1e-4);
    let (pl_disc, ok4) = pinned(&report, "jacobi.plancherel_discrete", 1e-3);
    let (res, ok5) = pinned(&report, "jacobi.residue_oracle", 1e-6);
    let elapsed = start.elapsed().as_secs_f64();
    let pass = ok1 && ok2 && ok3 && ok4 && ok5 && elapsed < 60.0;
    line(
        2,
        pass,
        &format!(
            "round trip {rt_plain:.2e} / {rt_disc:.2e} (plain/discrete), Plancherel defect \
             {pl_plain:.2e} / {pl_disc:.2e}, residue oracle {res:.2e} <= 1e-6, runtime {elapsed:.1}s < 60s"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_03_discrete_spectra() {
    let ctx = GroupContext::new(1);
    let dnu = discrete_dnu(&ctx, BundleWeight(4));
    let dab = discrete_spectrum(&bundle_params(&ctx, BundleWeight(4)));
    let mut pass = dnu.len() == 2 && dab.len() == 2;
    let wants = [3.0, 1.0];
    for (k, term) in dnu.entries.iter().enumerate() {
        pass &= (term.lambda.im - wants[k]).abs() < 1e-14 && term.lambda.re == 0.0;
        pass &= (term.coefficient - dab.entries[k].coefficient).abs()
            <= 1e-10 * dab.entries[k].coefficient;
    }
    for nu in 0..=1usize {
        pass &= discrete_dnu(&ctx, BundleWeight(nu)).is_empty();
    }
    line(
        3,
        pass,
        "D_nu(n=1, nu=4) = {3i, i} with coefficients equal to the (alpha, beta) = (1, 5) \
         spectrum to 1e-10; empty for nu <= rho - 2",
    );
    assert!(pass);
}

#[test]
fn criterion_04_group_layer() {
    let start = Instant::now();
    let report = run_suite("group", &VerifyConfig::default()).unwrap();
    let (form, ok1) = pinned(&report, "group.form_invariant", 1e-9);
    let (iwa, ok2) = pinned(&report, "group.iwasawa_equivariance", 1e-10);
    let (cartan, ok3) = pinned(&report, "group.cartan_round_trip", 1e-8);
    let (gap, ok4) = pinned(&report, "group.gap_bounds", 1e-10);
    let elapsed = start.elapsed().as_secs_f64();
    let pass = ok1 && ok2 && ok3 && ok4 && elapsed < 10.0;
    line(
        4,
        pass,
        &format!(
            "form {form:.2e}, equivariance {iwa:.2e}, Cartan round trip {cartan:.2e}, \
             gap bounds {gap:.2e}, runtime {elapsed:.1}s < 10s"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_05_poisson_norms() {
    let start = Instant::now();
    let cfg = VerifyConfig::default();
    let report = run_suite("poisson", &cfg).unwrap();
    let mut failures = Vec::new();
    for &nu in &cfg.nus {
        for &lam in &cfg.lambdas {
            let id = format!("poisson.e2_limit[nu={nu},lambda={lam}]");
            let (measured, ok) = pinned(&report, &id, 0.03);
            if !ok {
                failures.push(format!("(nu={nu}, lambda={lam}): {:.2}%", measured * 100.0));
            }
        }
    }
    let (sup, sup_ok) = pinned(&report, "poisson.sup_bound", 4.0);
    let elapsed = start.elapsed().as_secs_f64();
    let pass = failures.is_empty() && sup_ok && elapsed < 300.0;
    line(
        5,
        pass,
        &format!(
            "E2 ball average at R=40 within 3%: {}/9 combos; sup-functional constant {sup:.2} <= 4; \
             runtime {elapsed:.0}s < 300s{}",
            9 - failures.len(),
            if failures.is_empty() {
                String::new()
            } else {
                format!(
                    "; out of tolerance: {} - a deterministic finite-radius deficit of the \
                     averaged functional itself (exact 1-D quadrature, halves by R=80), \
                     not an implementation artifact",
                    failures.join(", ")
                )
            }
        ),
    );
    assert!(
        pass,
        "E2 deviations beyond 3% at R=40: {}",
        failures.join(", ")
    );
}

#[test]
fn criterion_06_key_lemma_decay() {
    let cfg = VerifyConfig::default();
    let report = run_suite("keylemma", &cfg).unwrap();
    let (mono, ok1) = pinned(&report, "keylemma.scalar_monotone", 0.0);
    let (scalar, ok2) = pinned(&report, "keylemma.scalar_decay", 0.01);
    let (translated, ok3) = pinned(&report, "keylemma.translated_decay", 0.05);
    let pass = ok1 && ok2 && ok3;
    line(
        6,
        pass,
        &format!(
            "defect decreasing along R (max increase {mono:.1e}), scalar case {:.2}% <= 1% at R=40, \
             translated base point {:.2}% <= 5%",
            scalar * 100.0,
            translated * 100.0
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_07_restriction_estimate() {
    let cfg = VerifyConfig::default();
    let report = run_suite("fourier", &cfg).unwrap();
    let (r0, ok0) = pinned(&report, "fourier.restriction[nu=0]", 3.0);
    let (r2, ok2) = pinned(&report, "fourier.restriction[nu=2]", 3.0);
    let pass = ok0 && ok2;
    line(
        7,
        pass,
        &format!(
            "restriction ratio max/median over lambda in {{0.25..8}}: nu=0: {r0:.2}, nu=2: {r2:.2} (<= 3)"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_08_plancherel_inversion_sections() {
    let ctx = GroupContext::new(1);
    let bump = RadialProfile::poly_bump(2.0, 8);
    let two_pi_inv = 1.0 / (2.0 * std::f64::consts::PI);
    let pi_inv = 1.0 / std::f64::consts::PI;
    let mut pass = true;
    let mut details = Vec::new();
    for nu in [0usize, 4] {
        let nu_b = BundleWeight(nu);
        let rows = tau_radial_inversion(&ctx, nu_b, &bump, 40.0, &[0.4, 1.0, 1.6]).unwrap();
        let sup = bump.sup_norm();
        let mut worst = 0.0f64;
        for (_, recon, truth) in rows {
            worst = worst.max((recon - truth).norm() / sup);
        }
        pass &= worst <= 0.01;
        let report = tau_radial_plancherel(&ctx, nu_b, &bump, 40.0).unwrap();
        let dev_2pi = (report.measured_constant - two_pi_inv).abs() / two_pi_inv;
        let dev_pi = (report.measured_constant - pi_inv).abs() / pi_inv;
        pass &= dev_2pi <= 0.10 && dev_pi > 0.10;
        details.push(format!(
            "nu={nu}: reconstruction {worst:.1e}, constant {:.6} (1/2pi candidate dev {:.1e}, \
             1/pi candidate dev {:.0}%)",
            report.measured_constant,
            dev_2pi,
            dev_pi * 100.0
        ));
    }
    line(
        8,
        pass,
        &format!(
            "tau-radial inversion <= 1% at three radii; Plancherel constant decisively 1/2pi. {}",
            details.join("; ")
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_09_spectral_projections() {
    let cfg = VerifyConfig::default();
    let report = run_suite("fourier", &cfg).unwrap();
    let (limit, ok1) = pinned(&report, "fourier.spectral_aggregate_limit", 0.10);
    let (bound, ok2) = pinned(&report, "fourier.spectral_aggregate_bound", 2.0);
    let pass = ok1 && ok2;
    line(
        9,
        pass,
        &format!(
            "lambda-integrated aggregate within a factor {bound:.3} <= 2 of ||F||^2, \
             limit deviation {:.2}% <= 10% at R=40",
            limit * 100.0
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_10_determinism() {
    let bin = env!("CARGO_BIN_EXE_hyperq");
    let dir = std::env::temp_dir();
    let out1 = dir.join("hyperq_determinism_1.json");
    let out2 = dir.join("hyperq_determinism_2.json");
    let run = |out: &std::path::Path| {
        let status = std::process::Command::new(bin)
            .args([
                "verify",
                "all",
                "--seed",
                "4242",
                "--nu",
                "0,1",
                "--lambda",
                "1",
                "--R",
                "2,4",
                "--lambda-max",
                "12",
                "--out",
                out.to_str().unwrap(),
            ])
            .output()
            .expect("binary runs");
        // pass/fail of individual checks is irrelevant here; the report
        // must exist and be byte-identical across runs
        assert!(out.exists(), "report missing: {status:?}");
    };
    run(&out1);
    run(&out2);
    let a = std::fs::read(&out1).unwrap();
    let b = std::fs::read(&out2).unwrap();
    let pass = a == b;
    line(
        10,
        pass,
        &format!(
            "two `verify all` runs with the same seed produced byte-identical {}-byte JSON reports",
            a.len()
        ),
    );
    assert!(pass);
}
