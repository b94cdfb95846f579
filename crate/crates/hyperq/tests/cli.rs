//! End-to-end behavior of the command-line front end: CSV shapes, exit
//! codes, and report files.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hyperq"))
}

#[test]
fn eval_phi_at_origin_is_one() {
    let out = bin()
        .args([
            "eval", "phi", "--alpha", "1", "--beta", "2", "--lambda", "1", "--t", "0",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,lambda,re,im"));
    assert_eq!(lines.next(), Some("0,1,1,0"));
}

#[test]
fn eval_c_matches_library() {
    let out = bin()
        .args(["eval", "c", "--n", "1", "--nu", "0", "--lambda", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let row = text.lines().nth(1).unwrap();
    let cols: Vec<f64> = row.split(',').map(|c| c.parse().unwrap()).collect();
    let want = hyperq::specfun::c_nu(
        &hyperq::group::GroupContext::new(1),
        hyperq::reps::BundleWeight(0),
        num_complex::Complex64::new(2.0, 0.0),
    )
    .unwrap();
    assert!((cols[2] - want.re).abs() < 1e-12 && (cols[3] - want.im).abs() < 1e-12);
}

#[test]
fn eval_grid_has_requested_shape() {
    let out = bin()
        .args([
            "eval", "phinu", "--n", "1", "--nu", "2", "--lambda", "1", "--t", "0:3:7",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 8); // header + 7 rows
}

#[test]
fn bad_flags_exit_2() {
    for args in [
        vec!["eval", "phi", "--lambda", "1"],  // missing alpha/beta
        vec!["eval", "nope", "--lambda", "1"], // unknown subcommand
        vec!["eval", "phi", "--alpha", "1", "--beta"], // dangling flag
        vec!["verify", "nosuite"],             // unknown suite
        vec!["frobnicate"],
    ] {
        let out = bin().args(&args).output().unwrap();
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
    }
}

#[test]
fn spectral_pole_exit_3() {
    let out = bin()
        .args(["eval", "c", "--n", "1", "--nu", "0", "--lambda", "0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_writes_report_and_exits_clean() {
    let path = std::env::temp_dir().join("hyperq_cli_group.json");
    let out = bin()
        .args(["verify", "group", "--out", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(&path).unwrap();
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["schema"], 1);
    assert_eq!(json["suite"], "group");
    assert_eq!(json["pass"], true);
    assert!(json["checks"].as_array().unwrap().len() >= 5);
}
