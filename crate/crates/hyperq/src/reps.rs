//! The irreducible (nu+1)-dimensional representation tau_nu of Sp(1),
//! realized as the nu-th symmetric power of the standard 2-dimensional
//! complex representation, extended trivially on Sp(n).
//!
//! A unit quaternion q = w + xi + yj + zk corresponds to the SU(2) matrix
//! [[w+xi, y+zi], [-y+zi, w-xi]]; the symmetric-power basis carries the
//! unitarizing weights sqrt(C(nu, j)), so `tau_matrix` is unitary up to
//! rounding for unit input.

use crate::quat::Quaternion;
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepsError {
    #[error("quaternion is not unit: |q| = {0}")]
    NonUnitQuaternion(f64),
    #[error("bundle weight mismatch: {0} vs {1}")]
    WeightMismatch(usize, usize),
}

/// Bundle weight nu; the fiber V_nu has dimension nu + 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct BundleWeight(pub usize);

impl BundleWeight {
    pub fn dim(self) -> usize {
        self.0 + 1
    }
}

/// Vector in the fiber V_nu.
#[derive(Debug, Clone, PartialEq)]
pub struct RepVector {
    pub nu: BundleWeight,
    pub coords: Vec<Complex64>,
}

impl RepVector {
    pub fn new(nu: BundleWeight, coords: Vec<Complex64>) -> Self {
        assert_eq!(coords.len(), nu.dim());
        RepVector { nu, coords }
    }

    pub fn zero(nu: BundleWeight) -> Self {
        RepVector {
            nu,
            coords: vec![Complex64::new(0.0, 0.0); nu.dim()],
        }
    }

    /// Standard basis vector e_j.
    pub fn basis(nu: BundleWeight, j: usize) -> Self {
        let mut v = RepVector::zero(nu);
        v.coords[j] = Complex64::new(1.0, 0.0);
        v
    }

    pub fn norm_sq(&self) -> f64 {
        self.coords.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Hermitian inner product, conjugate-linear in `self`.
    pub fn inner(&self, other: &RepVector) -> Complex64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn scale(&self, s: Complex64) -> RepVector {
        RepVector {
            nu: self.nu,
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, other: &RepVector) -> RepVector {
        RepVector {
            nu: self.nu,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &RepVector) -> RepVector {
        RepVector {
            nu: self.nu,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// Operator on V_nu, row-major (nu+1) x (nu+1).
#[derive(Debug, Clone, PartialEq)]
pub struct RepMatrix {
    pub nu: BundleWeight,
    pub entries: Vec<Complex64>,
}

impl RepMatrix {
    pub fn identity(nu: BundleWeight) -> Self {
        let d = nu.dim();
        let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            entries[i * d + i] = Complex64::new(1.0, 0.0);
        }
        RepMatrix { nu, entries }
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.nu.dim() + j]
    }

    pub fn apply(&self, v: &RepVector) -> RepVector {
        let d = self.nu.dim();
        debug_assert_eq!(v.nu, self.nu);
        let coords = (0..d)
            .map(|i| (0..d).map(|j| self.entries[i * d + j] * v.coords[j]).sum())
            .collect();
        RepVector {
            nu: self.nu,
            coords,
        }
    }

    pub fn mul(&self, other: &RepMatrix) -> RepMatrix {
        let d = self.nu.dim();
        let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for j in 0..d {
                entries[i * d + j] = (0..d)
                    .map(|k| self.entries[i * d + k] * other.entries[k * d + j])
                    .sum();
            }
        }
        RepMatrix {
            nu: self.nu,
            entries,
        }
    }

    pub fn dagger(&self) -> RepMatrix {
        let d = self.nu.dim();
        RepMatrix {
            nu: self.nu,
            entries: (0..d * d)
                .map(|idx| self.entries[(idx % d) * d + idx / d].conj())
                .collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        let d = self.nu.dim();
        (0..d).map(|i| self.entries[i * d + i]).sum()
    }

    /// Max-entry residual of `M* M - I`.
    pub fn unitarity_residual(&self) -> f64 {
        let d = self.nu.dim();
        let p = self.dagger().mul(self);
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((p.entries[i * d + j] - want).norm());
            }
        }
        worst
    }

    pub fn sub(&self, other: &RepMatrix) -> RepMatrix {
        RepMatrix {
            nu: self.nu,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn max_norm(&self) -> f64 {
        self.entries.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

const UNIT_TOL: f64 = 1e-10;

/// The representing matrix tau_nu(q) on V_nu for a unit quaternion q.
pub fn tau_matrix(nu: BundleWeight, q: Quaternion) -> Result<RepMatrix, RepsError> {
    if (q.norm() - 1.0).abs() > UNIT_TOL {
        return Err(RepsError::NonUnitQuaternion(q.norm()));
    }
    let n = nu.0;
    let a = Complex64::new(q.w, q.x);
    let b = Complex64::new(q.y, q.z);
    let c = Complex64::new(-q.y, q.z);
    let d = Complex64::new(q.w, -q.x);
    let dim = n + 1;
    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    // powers up to n
    let pows = |base: Complex64| -> Vec<Complex64> {
        let mut v = vec![Complex64::new(1.0, 0.0); n + 1];
        for i in 1..=n {
            v[i] = v[i - 1] * base;
        }
        v
    };
    let (pa, pb, pc, pd) = (pows(a), pows(b), pows(c), pows(d));
    for j in 0..=n {
        for k in 0..=n {
            // coefficient of the basis monomial of degree split (n-k, k) in
            // (a e1 + c e2)^(n-j) (b e1 + d e2)^j
            let mut s = Complex64::new(0.0, 0.0);
            let pmin = (n - k).saturating_sub(j);
            let pmax = (n - j).min(n - k);
            for p in pmin..=pmax {
                let r = n - k - p; // picks of e1 from the second factor
                s +=
                    binomial(n - j, p) * binomial(j, r) * pa[p] * pc[n - j - p] * pb[r] * pd[j - r];
            }
            entries[k * dim + j] = s * (binomial(n, j) / binomial(n, k)).sqrt();
        }
    }
    Ok(RepMatrix { nu, entries })
}

/// tau_nu(q)^(-1) v, computed as tau_nu(conj q) v (exact inverse for unit q).
pub fn tau_apply_inv(
    nu: BundleWeight,
    q: Quaternion,
    v: &RepVector,
) -> Result<RepVector, RepsError> {
    Ok(tau_matrix(nu, q.conj())?.apply(v))
}

/// Character chi_nu(q) = tr tau_nu(q); real, and chi_nu(1) = nu + 1.
pub fn character(nu: BundleWeight, q: Quaternion) -> Result<f64, RepsError> {
    let tr = tau_matrix(nu, q)?.trace();
    debug_assert!(tr.im.abs() < 1e-9, "character should be real, got {tr}");
    Ok(tr.re)
}
