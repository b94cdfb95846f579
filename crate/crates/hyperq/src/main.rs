//! Command-line front end: evaluate special functions on grids and run the
//! named verification suites.
//!
//! Exit codes: 0 success, 1 failed verification check, 2 bad usage,
//! 3 spectral pole.

use hyperq::group::GroupContext;
use hyperq::reps::BundleWeight;
use hyperq::specfun::{b_nu, c_ab, c_nu, jacobi_phi, jacobi_psi, JacobiParams, SpecfunError};
use hyperq::verify::{run_suite, VerifyConfig, SUITE_NAMES};
use num_complex::Complex64;
use std::collections::HashMap;
use std::process::ExitCode;

const USAGE: &str = "usage:
  hyperq eval <phi|psi|c|b|phinu> [flags]    evaluate on grids, CSV to stdout
  hyperq verify <suite> [flags]              run a verification suite

eval flags:
  --alpha A --beta B      Jacobi parameters (phi, psi, c with explicit pair)
  --n N --nu NU           bundle parameters (c, b, phinu)
  --lambda G              spectral grid  (value or start:stop:count)
  --t G                   radial grid    (value or start:stop:count)

verify flags:
  --n N  --nu LIST  --lambda LIST  --R LIST  --seed S  --lambda-max X
  --out FILE              write the JSON report here (default: stdout only)

suites: group specfun jacobi poisson fourier keylemma all";

enum CliError {
    Usage(String),
    SpectralPole(String),
    Failed,
    Runtime(String),
}

impl From<SpecfunError> for CliError {
    fn from(e: SpecfunError) -> Self {
        match e {
            SpecfunError::SpectralPole(_) | SpecfunError::PoleAtNonpositiveInteger(_) => {
                CliError::SpectralPole(e.to_string())
            }
            other => CliError::Runtime(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failed) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}\n\n{USAGE}");
            ExitCode::from(2)
        }
        Err(CliError::SpectralPole(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn parse_flags(args: &[String]) -> Result<HashMap<String, String>, CliError> {
    let mut flags = HashMap::new();
    let mut it = args.iter();
    while let Some(a) = it.next() {
        let Some(name) = a.strip_prefix("--") else {
            return Err(CliError::Usage(format!("unexpected argument {a:?}")));
        };
        let value = it
            .next()
            .ok_or_else(|| CliError::Usage(format!("flag --{name} needs a value")))?;
        flags.insert(name.to_string(), value.clone());
    }
    Ok(flags)
}

fn parse_grid(s: &str) -> Result<Vec<f64>, CliError> {
    let bad = |_| CliError::Usage(format!("bad number in {s:?}"));
    if let Some((a, rest)) = s.split_once(':') {
        let (b, c) = rest
            .split_once(':')
            .ok_or_else(|| CliError::Usage(format!("grid {s:?} must be start:stop:count")))?;
        let start: f64 = a.parse().map_err(bad)?;
        let stop: f64 = b.parse().map_err(bad)?;
        let count: usize = c
            .parse()
            .map_err(|_| CliError::Usage(format!("bad count in {s:?}")))?;
        if count == 0 {
            return Err(CliError::Usage("grid count must be positive".into()));
        }
        if count == 1 {
            return Ok(vec![start]);
        }
        Ok((0..count)
            .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
            .collect())
    } else {
        Ok(s.split(',')
            .map(|p| p.parse().map_err(bad))
            .collect::<Result<_, _>>()?)
    }
}

fn get_f64(flags: &HashMap<String, String>, key: &str) -> Result<Option<f64>, CliError> {
    flags
        .get(key)
        .map(|v| {
            v.parse()
                .map_err(|_| CliError::Usage(format!("bad value for --{key}: {v:?}")))
        })
        .transpose()
}

fn get_usize(flags: &HashMap<String, String>, key: &str) -> Result<Option<usize>, CliError> {
    flags
        .get(key)
        .map(|v| {
            v.parse()
                .map_err(|_| CliError::Usage(format!("bad value for --{key}: {v:?}")))
        })
        .transpose()
}

fn run(args: &[String]) -> Result<(), CliError> {
    match args.first().map(String::as_str) {
        Some("eval") => cmd_eval(&args[1..]),
        Some("verify") => cmd_verify(&args[1..]),
        Some("--help") | Some("-h") | None => {
            println!("{USAGE}");
            Ok(())
        }
        Some(other) => Err(CliError::Usage(format!("unknown command {other:?}"))),
    }
}

fn cmd_eval(args: &[String]) -> Result<(), CliError> {
    let sub = args
        .first()
        .ok_or_else(|| CliError::Usage("eval needs a subcommand".into()))?
        .as_str();
    let flags = parse_flags(&args[1..])?;
    let lambdas = parse_grid(
        flags
            .get("lambda")
            .ok_or_else(|| CliError::Usage("--lambda is required".into()))?,
    )?;
    let ts = match flags.get("t") {
        Some(s) => parse_grid(s)?,
        None => vec![0.0],
    };
    let need_ab = || -> Result<JacobiParams, CliError> {
        let alpha =
            get_f64(&flags, "alpha")?.ok_or_else(|| CliError::Usage("--alpha required".into()))?;
        let beta =
            get_f64(&flags, "beta")?.ok_or_else(|| CliError::Usage("--beta required".into()))?;
        JacobiParams::new(alpha, beta).map_err(|e| CliError::Usage(e.to_string()))
    };
    let need_ctx_nu = || -> Result<(GroupContext, BundleWeight), CliError> {
        let n = get_usize(&flags, "n")?.ok_or_else(|| CliError::Usage("--n required".into()))?;
        let nu = get_usize(&flags, "nu")?.ok_or_else(|| CliError::Usage("--nu required".into()))?;
        Ok((GroupContext::new(n), BundleWeight(nu)))
    };

    if !["phi", "psi", "c", "b", "phinu"].contains(&sub) {
        return Err(CliError::Usage(format!("unknown eval subcommand {sub:?}")));
    }
    println!("t,lambda,re,im");
    let emit = |t: f64, lam: f64, v: Complex64| {
        println!("{t},{lam},{},{}", v.re, v.im);
    };
    match sub {
        "phi" => {
            let p = need_ab()?;
            for &t in &ts {
                for &lam in &lambdas {
                    emit(t, lam, jacobi_phi(&p, Complex64::new(lam, 0.0), t)?);
                }
            }
        }
        "psi" => {
            let p = need_ab()?;
            for &t in &ts {
                if t <= 0.0 {
                    return Err(CliError::Usage("psi needs t > 0".into()));
                }
                for &lam in &lambdas {
                    emit(t, lam, jacobi_psi(&p, Complex64::new(lam, 0.0), t)?);
                }
            }
        }
        "c" => {
            if flags.contains_key("alpha") || flags.contains_key("beta") {
                let p = need_ab()?;
                for &lam in &lambdas {
                    emit(0.0, lam, c_ab(&p, Complex64::new(lam, 0.0))?);
                }
            } else {
                let (ctx, nu) = need_ctx_nu()?;
                for &lam in &lambdas {
                    emit(0.0, lam, c_nu(&ctx, nu, Complex64::new(lam, 0.0))?);
                }
            }
        }
        "b" => {
            let (ctx, nu) = need_ctx_nu()?;
            for &lam in &lambdas {
                emit(0.0, lam, b_nu(&ctx, nu, lam));
            }
        }
        "phinu" => {
            let (ctx, nu) = need_ctx_nu()?;
            for &t in &ts {
                for &lam in &lambdas {
                    emit(
                        t,
                        lam,
                        hyperq::poisson::spherical_profile(&ctx, nu, Complex64::new(lam, 0.0), t)?,
                    );
                }
            }
        }
        _ => unreachable!("validated above"),
    }
    Ok(())
}

fn parse_usize_list(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad integer {p:?}")))
        })
        .collect()
}

fn cmd_verify(args: &[String]) -> Result<(), CliError> {
    let suite = args
        .first()
        .ok_or_else(|| CliError::Usage("verify needs a suite name".into()))?
        .as_str();
    if !SUITE_NAMES.contains(&suite) {
        return Err(CliError::Usage(format!(
            "unknown suite {suite:?}; choose one of {SUITE_NAMES:?}"
        )));
    }
    let flags = parse_flags(&args[1..])?;
    let mut cfg = VerifyConfig::default();
    if let Some(n) = get_usize(&flags, "n")? {
        cfg.n = n;
    }
    if let Some(nus) = flags.get("nu") {
        cfg.nus = parse_usize_list(nus)?;
    }
    if let Some(l) = flags.get("lambda") {
        cfg.lambdas = parse_grid(l)?;
    }
    if let Some(r) = flags.get("R") {
        cfg.radii = parse_grid(r)?;
    }
    if let Some(seed) = flags.get("seed") {
        cfg.seed = seed
            .parse()
            .map_err(|_| CliError::Usage(format!("bad seed {seed:?}")))?;
    }
    if let Some(lm) = get_f64(&flags, "lambda-max")? {
        cfg.lambda_max = lm;
    }
    let report = run_suite(suite, &cfg).expect("suite name validated");
    print!("{}", report.human_summary());
    if let Some(path) = flags.get("out") {
        std::fs::write(path, report.to_json())
            .map_err(|e| CliError::Runtime(format!("writing {path}: {e}")))?;
        eprintln!("report written to {path}");
    }
    if report.pass {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}
