//! CSV import/export: radial profiles and spectra (`t,value_re,value_im` /
//! `lambda,value_re,value_im`), ball-average reports (`R,value,stderr`),
//! and Fourier slice tables (`lambda,k_index,comp_index,re,im`) with a JSON
//! sidecar describing the sampled K-points and the seed. All files are
//! UTF-8 with LF line endings and a header row.

use crate::group::KElement;
use crate::jacobi::{RadialProfile, TransformError};
use crate::poisson::BallAverageReport;
use crate::quat::Quaternion;
use crate::reps::RepVector;
use num_complex::Complex64;
use std::io::{BufRead, Write};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Profile(#[from] TransformError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn parse_f64(s: &str, line: usize) -> Result<f64, IoError> {
    s.trim().parse().map_err(|_| IoError::Parse {
        line,
        message: format!("bad number {s:?}"),
    })
}

/// Write a profile sampled on the given grid.
pub fn write_profile_csv<W: Write>(
    w: &mut W,
    profile: &RadialProfile,
    ts: &[f64],
) -> Result<(), IoError> {
    w.write_all(b"t,value_re,value_im\n")?;
    for &t in ts {
        let v = profile.eval(t);
        writeln!(w, "{t},{},{}", v.re, v.im)?;
    }
    Ok(())
}

/// Read a sampled profile (columns `t,value_re,value_im`, header required).
pub fn read_profile_csv<R: BufRead>(r: R) -> Result<RadialProfile, IoError> {
    let mut ts = Vec::new();
    let mut vals = Vec::new();
    for (idx, line) in r.lines().enumerate() {
        let line = line?;
        if idx == 0 {
            if line.trim() != "t,value_re,value_im" {
                return Err(IoError::Parse {
                    line: 1,
                    message: "expected header t,value_re,value_im".into(),
                });
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split(',').collect();
        if parts.len() != 3 {
            return Err(IoError::Parse {
                line: idx + 1,
                message: "expected 3 columns".into(),
            });
        }
        ts.push(parse_f64(parts[0], idx + 1)?);
        vals.push(Complex64::new(
            parse_f64(parts[1], idx + 1)?,
            parse_f64(parts[2], idx + 1)?,
        ));
    }
    Ok(RadialProfile::from_samples(ts, vals)?)
}

/// Write spectral samples `(lambda, value)`.
pub fn write_spectrum_csv<W: Write>(w: &mut W, rows: &[(f64, Complex64)]) -> Result<(), IoError> {
    w.write_all(b"lambda,value_re,value_im\n")?;
    for (lam, v) in rows {
        writeln!(w, "{lam},{},{}", v.re, v.im)?;
    }
    Ok(())
}

pub fn read_spectrum_csv<R: BufRead>(r: R) -> Result<Vec<(f64, Complex64)>, IoError> {
    let mut rows = Vec::new();
    for (idx, line) in r.lines().enumerate() {
        let line = line?;
        if idx == 0 {
            if line.trim() != "lambda,value_re,value_im" {
                return Err(IoError::Parse {
                    line: 1,
                    message: "expected header lambda,value_re,value_im".into(),
                });
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split(',').collect();
        if parts.len() != 3 {
            return Err(IoError::Parse {
                line: idx + 1,
                message: "expected 3 columns".into(),
            });
        }
        rows.push((
            parse_f64(parts[0], idx + 1)?,
            Complex64::new(parse_f64(parts[1], idx + 1)?, parse_f64(parts[2], idx + 1)?),
        ));
    }
    Ok(rows)
}

pub fn write_ball_report_csv<W: Write>(
    w: &mut W,
    report: &BallAverageReport,
) -> Result<(), IoError> {
    w.write_all(b"R,value,stderr\n")?;
    for ((r, v), s) in report.radii.iter().zip(&report.values).zip(&report.stderrs) {
        writeln!(w, "{r},{v},{s}")?;
    }
    Ok(())
}

fn quat_array(q: Quaternion) -> [f64; 4] {
    [q.w, q.x, q.y, q.z]
}

#[derive(serde::Serialize)]
struct SliceSidecar {
    schema: u32,
    seed: u64,
    k_points: Vec<KPointJson>,
}

#[derive(serde::Serialize)]
struct KPointJson {
    u: Vec<Vec<[f64; 4]>>,
    q: [f64; 4],
}

/// Write slice values at sampled K-points, plus the JSON sidecar naming the
/// points and the seed that generated them.
pub fn write_slice_csv<W: Write, S: Write>(
    csv: &mut W,
    sidecar: &mut S,
    lambda: f64,
    seed: u64,
    k_points: &[KElement],
    values: &[RepVector],
) -> Result<(), IoError> {
    csv.write_all(b"lambda,k_index,comp_index,re,im\n")?;
    for (ki, v) in values.iter().enumerate() {
        for (ci, c) in v.coords.iter().enumerate() {
            writeln!(csv, "{lambda},{ki},{ci},{},{}", c.re, c.im)?;
        }
    }
    let side = SliceSidecar {
        schema: 1,
        seed,
        k_points: k_points
            .iter()
            .map(|k| KPointJson {
                u: (0..k.u.rows())
                    .map(|i| (0..k.u.cols()).map(|j| quat_array(k.u[(i, j)])).collect())
                    .collect(),
                q: quat_array(k.q),
            })
            .collect(),
    };
    sidecar.write_all(serde_json::to_string_pretty(&side)?.as_bytes())?;
    sidecar.write_all(b"\n")?;
    Ok(())
}
