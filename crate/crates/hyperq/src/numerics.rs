//! Quadrature panels, counter-based sampling streams, Haar samplers for
//! Sp(1) and Sp(n), and order-stable summation.
//!
//! Randomness is a pure function of `(seed, stream, index)`, so Monte-Carlo
//! sums can be partitioned across threads in any way without changing the
//! sampled values; combined with pairwise summation over index order this
//! makes every report bit-reproducible for a given configuration.

use crate::quat::{QMatrix, Quaternion};
use num_complex::Complex64;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Monte-Carlo and quadrature configuration shared by the integral kernels.
#[derive(Debug, Clone, serde::Serialize)]
pub struct MCConfig {
    /// Master seed; every sample is a pure function of it.
    pub seed: u64,
    /// Sample count for a single K-integral.
    pub k_samples: usize,
    /// Gauss-Legendre points per radial panel.
    pub panel_points: usize,
    /// Radial panel width.
    pub t_panel_width: f64,
    /// K-sample budget per radial panel in ball integrals.
    pub ball_samples_per_panel: usize,
}

impl Default for MCConfig {
    fn default() -> Self {
        MCConfig {
            seed: 42,
            k_samples: 200_000,
            panel_points: 64,
            t_panel_width: 1.0,
            ball_samples_per_panel: 100_000,
        }
    }
}

impl MCConfig {
    pub fn with_seed(seed: u64) -> Self {
        MCConfig {
            seed,
            ..MCConfig::default()
        }
    }

    /// Samples per quadrature node in ball integrals.
    pub fn ball_samples_per_node(&self) -> usize {
        (self.ball_samples_per_panel / self.panel_points).max(1)
    }
}

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A stateless random stream: `uniform(i)` is a pure function of
/// `(seed, stream, i)`.
#[derive(Debug, Clone, Copy)]
pub struct SampleStream {
    base: u64,
}

impl SampleStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        SampleStream {
            base: mix64(seed ^ mix64(stream.wrapping_mul(GOLDEN).wrapping_add(GOLDEN))),
        }
    }

    /// Uniform variate in the open interval (0, 1).
    pub fn uniform(&self, index: u64) -> f64 {
        let x = mix64(
            self.base
                .wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN)),
        );
        ((x >> 11) as f64 + 0.5) * (1.0 / 9_007_199_254_740_992.0)
    }

    /// Two independent standard Gaussians by Box-Muller from indices
    /// `(2 pair_index, 2 pair_index + 1)`.
    pub fn gaussian_pair(&self, pair_index: u64) -> (f64, f64) {
        let u1 = self.uniform(2 * pair_index);
        let u2 = self.uniform(2 * pair_index + 1);
        let r = (-2.0 * u1.ln()).sqrt();
        let th = 2.0 * std::f64::consts::PI * u2;
        (r * th.cos(), r * th.sin())
    }

    fn gaussian_quaternion(&self, slot: u64) -> Quaternion {
        let (g0, g1) = self.gaussian_pair(2 * slot);
        let (g2, g3) = self.gaussian_pair(2 * slot + 1);
        Quaternion::new(g0, g1, g2, g3)
    }
}

/// Haar-uniform unit quaternion (sample `i` of the stream): a normalized
/// 4-dimensional Gaussian vector.
pub fn haar_sp1(stream: &SampleStream, i: u64) -> Quaternion {
    stream.gaussian_quaternion(i).normalized()
}

/// Haar-uniform element of Sp(n): quaternionic Ginibre matrix followed by
/// Gram-Schmidt orthonormalization.
pub fn haar_spn(stream: &SampleStream, n: usize, i: u64) -> QMatrix {
    let base = i * (n * n) as u64;
    let g = QMatrix::from_fn(n, n, |r, c| {
        stream.gaussian_quaternion(base + (r * n + c) as u64)
    });
    match g.gram_schmidt_sp() {
        Ok(u) => u,
        // A Ginibre draw is singular with probability zero; perturb the
        // diagonal if rounding ever produces a near-dependent column.
        Err(_) => {
            let mut g2 = g;
            for d in 0..n {
                g2[(d, d)] = g2[(d, d)] + Quaternion::real(1e-8);
            }
            g2.gram_schmidt_sp()
                .expect("perturbed Ginibre is full rank")
        }
    }
}

type RuleCache = Mutex<HashMap<usize, Arc<(Vec<f64>, Vec<f64>)>>>;

/// Gauss-Legendre nodes and weights on [-1, 1], cached per point count.
pub fn gauss_legendre(m: usize) -> Arc<(Vec<f64>, Vec<f64>)> {
    static CACHE: OnceLock<RuleCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry(m)
        .or_insert_with(|| Arc::new(legendre_rule(m)))
        .clone()
}

/// Newton iteration on the Legendre polynomial; standard construction.
fn legendre_rule(m: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(m >= 2, "need at least 2 quadrature points");
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    let nf = m as f64;
    for k in 0..m.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (nf + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_eval(m, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_eval(m, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[k] = -x;
        nodes[m - 1 - k] = x;
        weights[k] = w;
        weights[m - 1 - k] = w;
    }
    if m % 2 == 1 {
        nodes[m / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_eval(m: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=m {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Gauss-Legendre panel on [a, b]: exact for polynomials of degree 2m-1.
pub fn gauss_panel(a: f64, b: f64, m: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(a < b, "empty panel [{a}, {b}]");
    let rule = gauss_legendre(m);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let nodes = rule.0.iter().map(|&x| mid + half * x).collect();
    let weights = rule.1.iter().map(|&w| half * w).collect();
    (nodes, weights)
}

/// Pairwise (cascade) summation; result independent of how the slice was
/// produced in parallel, since the index order is fixed.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
        }
    }
}

pub fn pairwise_sum_complex(xs: &[Complex64]) -> Complex64 {
    match xs.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => {
            let mid = n / 2;
            pairwise_sum_complex(&xs[..mid]) + pairwise_sum_complex(&xs[mid..])
        }
    }
}

/// Panel edges covering [0, r_max] with the given width, including every
/// radius in `extra` as an edge so partial panels never straddle a radius.
pub fn panel_edges(r_max: f64, width: f64, extra: &[f64]) -> Vec<f64> {
    let mut edges: Vec<f64> = Vec::new();
    let mut x = 0.0;
    while x < r_max - 1e-12 {
        edges.push(x);
        x += width;
    }
    edges.push(r_max);
    for &r in extra {
        if r > 0.0 && r < r_max {
            edges.push(r);
        }
    }
    edges.sort_by(|a, b| a.partial_cmp(b).unwrap());
    edges.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    edges
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_exactness_cubic() {
        let (x, w) = gauss_panel(0.0, 1.0, 2);
        let integral: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(3)).sum();
        assert!((integral - 0.25).abs() < 1e-15);
    }

    #[test]
    fn gauss_weights_sum_to_length() {
        let (_, w) = gauss_panel(0.0, 2.0, 17);
        assert!((pairwise_sum(&w) - 2.0).abs() < 1e-13);
    }

    #[test]
    fn gauss_sin_integral() {
        let (x, w) = gauss_panel(0.0, std::f64::consts::PI, 16);
        let vals: Vec<f64> = x.iter().zip(&w).map(|(xi, wi)| wi * xi.sin()).collect();
        assert!((pairwise_sum(&vals) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a = SampleStream::new(42, 0);
        let b = SampleStream::new(42, 0);
        let c = SampleStream::new(42, 1);
        assert_eq!(a.uniform(5).to_bits(), b.uniform(5).to_bits());
        assert_ne!(a.uniform(5).to_bits(), c.uniform(5).to_bits());
    }

    #[test]
    fn sp1_mean_real_part_vanishes() {
        let stream = SampleStream::new(42, 10);
        let n = 1_000_000u64;
        let mean: f64 = (0..n).map(|i| haar_sp1(&stream, i).w).sum::<f64>() / n as f64;
        // 3 sigma with Var(Re q) = 1/4
        assert!(mean.abs() < 3.0 * 0.5 / (n as f64).sqrt(), "mean {mean}");
    }

    #[test]
    fn sp1_character_orthogonality() {
        let stream = SampleStream::new(42, 11);
        let n = 1_000_000u64;
        // chi_1(q) = 2 Re q; mean over Haar must vanish, Var(chi_1) = 1.
        let mean: f64 = (0..n).map(|i| 2.0 * haar_sp1(&stream, i).w).sum::<f64>() / n as f64;
        assert!(mean.abs() < 3.0 / (n as f64).sqrt(), "mean {mean}");
    }

    #[test]
    fn spn_samples_are_unitary() {
        let stream = SampleStream::new(1, 12);
        for i in 0..200u64 {
            let u = haar_spn(&stream, 2, i);
            let resid = u
                .dagger()
                .mul(&u)
                .unwrap()
                .sub(&QMatrix::identity(2))
                .max_norm();
            assert!(resid < 1e-10);
        }
    }

    #[test]
    fn pairwise_sum_permutation_stable() {
        let stream = SampleStream::new(3, 13);
        let xs: Vec<f64> = (0..10_000u64).map(|i| stream.uniform(i) - 0.5).collect();
        let total = pairwise_sum(&xs);
        let mut perm = xs.clone();
        perm.reverse();
        let total_rev = pairwise_sum(&perm);
        assert!((total - total_rev).abs() <= 1e-12 * total.abs().max(1.0));
    }

    #[test]
    fn panel_edges_include_radii() {
        let edges = panel_edges(5.0, 1.0, &[2.5, 4.0]);
        assert!(edges.windows(2).all(|w| w[0] < w[1]));
        assert!(edges.iter().any(|&e| (e - 2.5).abs() < 1e-12));
        assert!(edges.first() == Some(&0.0) && (edges.last().unwrap() - 5.0).abs() < 1e-12);
    }
}
