//! The Jacobi transform pair with its continuous and discrete parts, the
//! discrete spectra and their coefficients, and the tau_nu-spherical
//! transform through the cosh-weight reduction.
//!
//! The spectral decomposition implemented here: for an even compactly
//! supported profile f,
//!
//! ```text
//! f(t) = (1/2pi) int_0^inf (Jf)(lambda) phi_lambda(t) |c(lambda)|^-2 dlambda
//!        + sum_k d_k/2 (Jf)(lambda_k) phi_{lambda_k}(t)
//! ```
//!
//! where `d_k = -i Res (c(lambda) c(-lambda))^-1` is the residue
//! coefficient returned by [`discrete_spectrum`]. The point mass carried by
//! `lambda_k` is `d_k/2`: the discrete eigenfunctions satisfy
//! `d_k int phi_{lambda_k}^2 Delta dt = 2`, so halving the residue is what
//! makes the displayed pair a projection (verified to machine precision by
//! the Plancherel tests).

use crate::group::GroupContext;
use crate::numerics::{gauss_panel, pairwise_sum_complex};
use crate::reps::BundleWeight;
use crate::specfun::{c_ab, jacobi_phi, log_gamma_real, JacobiParams, SpecfunError};
use num_complex::Complex64;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TransformError {
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
    #[error("quadrature did not converge: refinement moved the value by {disagreement:e} (tolerance {tolerance:e})")]
    QuadratureNonConvergence { disagreement: f64, tolerance: f64 },
    #[error("samples must be sorted, nonnegative and nonempty")]
    BadSamples,
}

// ---------------------------------------------------------------------------
// radial profiles

/// Monotone piecewise-cubic interpolant (Fritsch-Carlson slopes).
#[derive(Debug, Clone)]
struct Pchip {
    xs: Vec<f64>,
    ys: Vec<f64>,
    ds: Vec<f64>,
}

impl Pchip {
    fn new(xs: Vec<f64>, ys: Vec<f64>) -> Self {
        let n = xs.len();
        let mut ds = vec![0.0; n];
        if n == 1 {
            return Pchip { xs, ys, ds };
        }
        let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
        let sec: Vec<f64> = (0..n - 1).map(|i| (ys[i + 1] - ys[i]) / h[i]).collect();
        ds[0] = sec[0];
        ds[n - 1] = sec[n - 2];
        for i in 1..n - 1 {
            if sec[i - 1] * sec[i] <= 0.0 {
                ds[i] = 0.0;
            } else {
                let w1 = 2.0 * h[i] + h[i - 1];
                let w2 = h[i] + 2.0 * h[i - 1];
                ds[i] = (w1 + w2) / (w1 / sec[i - 1] + w2 / sec[i]);
            }
        }
        Pchip { xs, ys, ds }
    }

    fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if n == 1 {
            return self.ys[0];
        }
        if x <= self.xs[0] {
            return self.ys[0];
        }
        if x >= self.xs[n - 1] {
            return self.ys[n - 1];
        }
        let mut lo = 0;
        let mut hi = n - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.xs[mid] <= x {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let h = self.xs[lo + 1] - self.xs[lo];
        let s = (x - self.xs[lo]) / h;
        let (y0, y1, d0, d1) = (self.ys[lo], self.ys[lo + 1], self.ds[lo], self.ds[lo + 1]);
        let s2 = s * s;
        let s3 = s2 * s;
        y0 * (2.0 * s3 - 3.0 * s2 + 1.0)
            + d0 * h * (s3 - 2.0 * s2 + s)
            + y1 * (-2.0 * s3 + 3.0 * s2)
            + d1 * h * (s3 - s2)
    }
}

#[derive(Clone)]
enum ProfileData {
    Analytic(Arc<dyn Fn(f64) -> Complex64 + Send + Sync>),
    Sampled { re: Pchip, im: Pchip },
}

/// An even scalar profile of compact support on the radial line.
///
/// Represents the scalar component of a tau-radial section or an even test
/// function; evaluation is even in t and vanishes beyond the support
/// radius. Profiles for quantitative tests are usually supplied
/// analytically so interpolation error does not pollute transform error.
#[derive(Clone)]
pub struct RadialProfile {
    data: ProfileData,
    support_radius: f64,
}

impl std::fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let kind = match self.data {
            ProfileData::Analytic(_) => "analytic",
            ProfileData::Sampled { .. } => "sampled",
        };
        write!(f, "RadialProfile({kind}, support={})", self.support_radius)
    }
}

impl RadialProfile {
    pub fn from_fn(
        support_radius: f64,
        f: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        RadialProfile {
            data: ProfileData::Analytic(Arc::new(f)),
            support_radius,
        }
    }

    pub fn from_real_fn(
        support_radius: f64,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self::from_fn(support_radius, move |t| Complex64::new(f(t), 0.0))
    }

    /// Interpolating profile through `(t_i, v_i)` samples; support is the
    /// last sample point.
    pub fn from_samples(ts: Vec<f64>, values: Vec<Complex64>) -> Result<Self, TransformError> {
        if ts.is_empty()
            || ts.len() != values.len()
            || ts[0] < 0.0
            || ts.windows(2).any(|w| w[1] <= w[0])
        {
            return Err(TransformError::BadSamples);
        }
        let support_radius = *ts.last().unwrap();
        let re = Pchip::new(ts.clone(), values.iter().map(|v| v.re).collect());
        let im = Pchip::new(ts, values.iter().map(|v| v.im).collect());
        Ok(RadialProfile {
            data: ProfileData::Sampled { re, im },
            support_radius,
        })
    }

    /// `exp(-t^2/(R^2 - t^2))` inside the support, identically zero outside.
    pub fn smooth_bump(support_radius: f64) -> Self {
        let r2 = support_radius * support_radius;
        Self::from_real_fn(support_radius, move |t| {
            let t2 = t * t;
            if t2 >= r2 {
                0.0
            } else {
                (-t2 / (r2 - t2)).exp()
            }
        })
    }

    /// `(1 - (t/R)^2)^order` inside the support; C^(order-1) at the edge,
    /// with polynomially decaying spectrum of known order.
    pub fn poly_bump(support_radius: f64, order: i32) -> Self {
        Self::from_real_fn(support_radius, move |t| {
            let u = t / support_radius;
            if u.abs() >= 1.0 {
                0.0
            } else {
                (1.0 - u * u).powi(order)
            }
        })
    }

    pub fn zero(support_radius: f64) -> Self {
        Self::from_fn(support_radius, |_| Complex64::new(0.0, 0.0))
    }

    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        let t = t.abs();
        if t > self.support_radius {
            return Complex64::new(0.0, 0.0);
        }
        match &self.data {
            ProfileData::Analytic(f) => f(t),
            ProfileData::Sampled { re, im } => Complex64::new(re.eval(t), im.eval(t)),
        }
    }

    /// Scan-grid estimate of the sup norm, used for tolerance scaling.
    pub fn sup_norm(&self) -> f64 {
        let n = 512;
        (0..=n)
            .map(|i| self.eval(self.support_radius * i as f64 / n as f64).norm())
            .fold(0.0, f64::max)
    }

    /// Pointwise product with a weight function, same support.
    pub fn weighted(&self, w: impl Fn(f64) -> f64 + Send + Sync + 'static) -> RadialProfile {
        let inner = self.clone();
        RadialProfile::from_fn(self.support_radius, move |t| inner.eval(t) * w(t))
    }
}

// ---------------------------------------------------------------------------
// discrete spectra

/// One discrete spectral point: `lambda_k` on the positive imaginary axis
/// with its residue coefficient `d_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscreteTerm {
    pub lambda: Complex64,
    pub coefficient: f64,
}

impl DiscreteTerm {
    /// The point mass this term carries in inversion and Plancherel
    /// identities (half the residue coefficient; see the module docs).
    pub fn plancherel_weight(&self) -> f64 {
        0.5 * self.coefficient
    }
}

/// The finite discrete spectrum, ordered by decreasing imaginary part.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DiscreteSpectrum {
    pub entries: Vec<DiscreteTerm>,
}

impl DiscreteSpectrum {
    pub fn empty() -> Self {
        DiscreteSpectrum { entries: vec![] }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }
}

/// Discrete spectrum for the Jacobi pair: `lambda_k = i(|beta| - alpha - 1
/// - 2k)` for every k >= 0 keeping the imaginary part positive, with
///
/// `d_k = (beta - alpha - 2k - 1) 2^(-2(alpha+beta))
///        Gamma(alpha+k+1) Gamma(beta-k) / (Gamma^2(alpha+1)
///        Gamma(beta-alpha-k) k!)`.
///
/// Empty when `|beta| <= alpha + 1`.
pub fn discrete_spectrum(p: &JacobiParams) -> DiscreteSpectrum {
    let (alpha, beta) = (p.alpha(), p.beta());
    let mut entries = Vec::new();
    let mut k = 0usize;
    loop {
        let y = beta.abs() - alpha - 1.0 - 2.0 * k as f64;
        if y <= 1e-12 {
            break;
        }
        let kf = k as f64;
        let ln = -2.0 * (alpha + beta) * std::f64::consts::LN_2
            + log_gamma_real(alpha + kf + 1.0)
            + log_gamma_real(beta - kf)
            - 2.0 * log_gamma_real(alpha + 1.0)
            - log_gamma_real(beta - alpha - kf)
            - log_gamma_real(kf + 1.0);
        let coefficient = (beta - alpha - 2.0 * kf - 1.0) * ln.exp();
        entries.push(DiscreteTerm {
            lambda: Complex64::new(0.0, y),
            coefficient,
        });
        k += 1;
    }
    DiscreteSpectrum { entries }
}

/// Discrete spectrum of the bundle with weight nu: `lambda_j =
/// i(nu - rho + 2 - 2j)` over all j >= 0 keeping the imaginary part
/// positive (empty for `nu <= rho - 2`), coefficients in factorial form.
/// Entry-by-entry equal to `discrete_spectrum(alpha = rho-2, beta = nu+1)`.
pub fn discrete_dnu(ctx: &GroupContext, nu: BundleWeight) -> DiscreteSpectrum {
    let rho = ctx.rho();
    let nuf = nu.0 as f64;
    let mut entries = Vec::new();
    let mut j = 0usize;
    loop {
        let y = nuf - rho + 2.0 - 2.0 * j as f64;
        if y <= 1e-12 {
            break;
        }
        let jf = j as f64;
        // (rho-2+j)! (nu-j)! / (Gamma^2(rho-1) j! (nu-rho-j+2)!); every
        // factorial argument is a nonnegative integer here
        let ln = -2.0 * (rho + nuf - 1.0) * std::f64::consts::LN_2
            + log_gamma_real(rho - 1.0 + jf)
            + log_gamma_real(nuf - jf + 1.0)
            - 2.0 * log_gamma_real(rho - 1.0)
            - log_gamma_real(jf + 1.0)
            - log_gamma_real(nuf - rho - jf + 3.0);
        let coefficient = y * ln.exp();
        entries.push(DiscreteTerm {
            lambda: Complex64::new(0.0, y),
            coefficient,
        });
        j += 1;
    }
    DiscreteSpectrum { entries }
}

// ---------------------------------------------------------------------------
// quadrature engine for the radial side

/// Radial quadrature of `g(t)` against the measure `Delta_{alpha,beta}`
/// over [0, support]. The first panel substitutes `u = t^2` to absorb the
/// `sinh^(2 alpha + 1)` endpoint factor. Returns the integral and the
/// companion absolute-value quadrature (the scale against which the
/// achievable absolute accuracy must be judged).
fn radial_quadrature(
    p: &JacobiParams,
    support: f64,
    points: usize,
    mut g: impl FnMut(f64) -> Result<Complex64, TransformError>,
) -> Result<(Complex64, f64), TransformError> {
    if support <= 0.0 {
        return Ok((Complex64::new(0.0, 0.0), 0.0));
    }
    let mut parts: Vec<Complex64> = Vec::new();
    let mut abs_scale = 0.0f64;
    let edge = 0.1f64.min(support);
    // u = t^2 on the first panel
    let (unodes, uweights) = gauss_panel(0.0, edge * edge, points);
    let mut acc = Vec::with_capacity(points);
    for (&u, &w) in unodes.iter().zip(&uweights) {
        let t = u.sqrt();
        let v = g(t)? * p.density(t) * (w / (2.0 * t));
        abs_scale += v.norm();
        acc.push(v);
    }
    parts.push(pairwise_sum_complex(&acc));
    let mut lo = edge;
    while lo < support - 1e-14 {
        let hi = (lo + 1.0).min(support);
        let (nodes, weights) = gauss_panel(lo, hi, points);
        let mut acc = Vec::with_capacity(points);
        for (&t, &w) in nodes.iter().zip(&weights) {
            let v = g(t)? * (p.density(t) * w);
            abs_scale += v.norm();
            acc.push(v);
        }
        parts.push(pairwise_sum_complex(&acc));
        lo = hi;
    }
    Ok((pairwise_sum_complex(&parts), abs_scale))
}

const FORWARD_POINTS: usize = 64;

/// Forward Jacobi transform
/// `(Jf)(lambda) = int_0^inf f(t) phi_lambda(t) Delta_{alpha,beta}(t) dt`,
/// with a refinement check: the base and refined rules must agree to
/// `1e-10 (1 + sup|f| + L1 scale of the integrand)`.
pub fn jacobi_forward(
    p: &JacobiParams,
    f: &RadialProfile,
    lambda: Complex64,
) -> Result<Complex64, TransformError> {
    let support = f.support_radius();
    let (base, _) = radial_quadrature(p, support, FORWARD_POINTS, |t| {
        Ok(f.eval(t) * jacobi_phi(p, lambda, t)?)
    })?;
    let (refined, abs_scale) = radial_quadrature(p, support, FORWARD_POINTS + 24, |t| {
        Ok(f.eval(t) * jacobi_phi(p, lambda, t)?)
    })?;
    let tolerance = 1e-10 * (1.0 + f.sup_norm() + abs_scale);
    let disagreement = (base - refined).norm();
    if disagreement > tolerance {
        return Err(TransformError::QuadratureNonConvergence {
            disagreement,
            tolerance,
        });
    }
    Ok(refined)
}

/// Dyadic panel edges 0, 1, 2, 4, ... covering [0, lambda_max].
pub fn dyadic_edges(lambda_max: f64) -> Vec<f64> {
    let mut edges = vec![0.0, 1.0f64.min(lambda_max)];
    while *edges.last().unwrap() < lambda_max - 1e-12 {
        let next = (edges.last().unwrap() * 2.0).min(lambda_max);
        edges.push(next);
    }
    edges.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    edges
}

const SPECTRAL_POINTS: usize = 64;

/// Quadrature of `h(lambda) |c(lambda)|^-2 / 2pi` over (0, lambda_max] on
/// dyadic Gauss-Legendre panels.
fn spectral_quadrature(
    p: &JacobiParams,
    lambda_max: f64,
    mut h: impl FnMut(f64) -> Result<Complex64, TransformError>,
) -> Result<Complex64, TransformError> {
    let edges = dyadic_edges(lambda_max);
    let mut parts = Vec::new();
    for pair in edges.windows(2) {
        let (nodes, weights) = gauss_panel(pair[0], pair[1], SPECTRAL_POINTS);
        let mut acc = Vec::with_capacity(SPECTRAL_POINTS);
        for (&lam, &w) in nodes.iter().zip(&weights) {
            let c = c_ab(p, Complex64::new(lam, 0.0))?;
            acc.push(h(lam)? * (w / c.norm_sqr()));
        }
        parts.push(pairwise_sum_complex(&acc));
    }
    Ok(pairwise_sum_complex(&parts) / (2.0 * std::f64::consts::PI))
}

/// Inverse Jacobi transform at radius t: continuous part over
/// (0, lambda_max] plus the discrete sum with weights `d_k/2`.
pub fn jacobi_inverse(
    p: &JacobiParams,
    spectrum: &dyn Fn(Complex64) -> Result<Complex64, TransformError>,
    ds: &DiscreteSpectrum,
    t: f64,
    lambda_max: f64,
) -> Result<Complex64, TransformError> {
    let continuous = spectral_quadrature(p, lambda_max, |lam| {
        let lamc = Complex64::new(lam, 0.0);
        Ok(spectrum(lamc)? * jacobi_phi(p, lamc, t)?)
    })?;
    let mut total = continuous;
    for term in &ds.entries {
        total += spectrum(term.lambda)? * jacobi_phi(p, term.lambda, t)? * term.plancherel_weight();
    }
    Ok(total)
}

/// Relative defect of the Plancherel identity
/// `int |f|^2 Delta = (1/2pi) int |Jf|^2 |c|^-2 + sum d_k/2 |Jf(lambda_k)|^2`.
pub fn plancherel_defect(
    p: &JacobiParams,
    f: &RadialProfile,
    lambda_max: f64,
) -> Result<f64, TransformError> {
    let lhs = radial_quadrature(p, f.support_radius(), FORWARD_POINTS + 24, |t| {
        Ok(Complex64::new(f.eval(t).norm_sqr(), 0.0))
    })?
    .0
    .re;
    if lhs == 0.0 {
        return Ok(0.0);
    }
    let cont = spectral_quadrature(p, lambda_max, |lam| {
        let v = jacobi_forward(p, f, Complex64::new(lam, 0.0))?;
        Ok(Complex64::new(v.norm_sqr(), 0.0))
    })?
    .re;
    let ds = discrete_spectrum(p);
    let mut disc = 0.0;
    for term in &ds.entries {
        disc += term.plancherel_weight() * jacobi_forward(p, f, term.lambda)?.norm_sqr();
    }
    Ok((lhs - cont - disc).abs() / lhs)
}

/// The cosh weight `(4 cosh t)^(-nu)` reducing the tau_nu-spherical
/// transform to the Jacobi transform at `(alpha, beta) = (rho-2, nu+1)`.
pub fn spherical_weight(nu: BundleWeight) -> impl Fn(f64) -> f64 + Send + Sync + 'static {
    let nui = nu.0 as i32;
    move |t: f64| (4.0 * t.cosh()).powi(-nui)
}

/// Jacobi parameters of the bundle reduction.
pub fn bundle_params(ctx: &GroupContext, nu: BundleWeight) -> JacobiParams {
    JacobiParams::new(ctx.rho() - 2.0, nu.0 as f64 + 1.0).expect("rho - 2 >= 1")
}

/// The tau_nu-spherical transform of a tau-radial section with scalar
/// component f: the Jacobi transform of `(4 cosh t)^(-nu) f(t)` at
/// `(alpha, beta) = (rho-2, nu+1)`.
pub fn h_nu(
    ctx: &GroupContext,
    nu: BundleWeight,
    f: &RadialProfile,
    lambda: Complex64,
) -> Result<Complex64, TransformError> {
    let p = bundle_params(ctx, nu);
    let g = f.weighted(spherical_weight(nu));
    jacobi_forward(&p, &g, lambda)
}
