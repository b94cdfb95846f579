//! tau_nu-spherical functions as operators, Poisson transforms (closed
//! form on generator data, K-quadrature in general), boundary generators
//! and the intertwiner on them, two-term asymptotic profiles, and the
//! ball-average functionals in which all the asymptotic statements live.

use crate::group::{
    cartan, haar_k, iwasawa, make_at, GroupContext, GroupElement, GroupError, KElement,
};
use crate::jacobi::{bundle_params, RadialProfile};
use crate::numerics::{gauss_panel, pairwise_sum, panel_edges, MCConfig, SampleStream};
use crate::reps::{tau_matrix, BundleWeight, RepVector, RepsError};
use crate::specfun::{c_nu, jacobi_phi, SpecfunError};
use num_complex::Complex64;
use rayon::prelude::*;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PoissonError {
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Reps(#[from] RepsError),
    #[error("the intertwiner is defined on generator combinations only")]
    UnsupportedIntertwiner,
}

/// Scalar profile of the trace spherical function:
/// `(cosh t)^nu phi_lambda^(rho-2, nu+1)(t)`.
pub fn spherical_profile(
    ctx: &GroupContext,
    nu: BundleWeight,
    lambda: Complex64,
    t: f64,
) -> Result<Complex64, SpecfunError> {
    let p = bundle_params(ctx, nu);
    Ok(t.cosh().powi(nu.0 as i32) * jacobi_phi(&p, lambda, t)?)
}

/// The spherical operator applied to a vector:
/// `Phi_{nu,lambda}(y) v = phi_{nu,lambda}(A+(y)) tau_nu(d/|d|)^{-1} v`.
pub fn spherical_apply(
    ctx: &GroupContext,
    nu: BundleWeight,
    lambda: Complex64,
    y: &GroupElement,
    v: &RepVector,
) -> Result<RepVector, PoissonError> {
    let d = y.block_d();
    let dn = d.norm();
    let t = dn.max(1.0).acosh();
    let w = d.scale(1.0 / dn);
    let scale = spherical_profile(ctx, nu, lambda, t)?;
    let rotated = tau_matrix(nu, w.conj())?.apply(v);
    Ok(rotated.scale(scale))
}

/// Generator boundary data `(g, lambda, v)` evaluating to
/// `e^((i lambda - rho) H(g^{-1} k)) tau_nu^{-1}(kappa(g^{-1} k)) v`.
#[derive(Clone)]
pub struct GeneratorData {
    pub g: GroupElement,
    g_inv: GroupElement,
    pub lambda: Complex64,
    pub v: RepVector,
}

impl GeneratorData {
    fn eval(&self, ctx: &GroupContext, k: &KElement) -> RepVector {
        let y = self.g_inv.mul(&k.embed(*ctx));
        let iw = iwasawa(&y);
        let scale = ((Complex64::new(0.0, 1.0) * self.lambda - ctx.rho()) * iw.h).exp();
        tau_matrix(self.v.nu, iw.vkappa.conj())
            .expect("vkappa is unit")
            .apply(&self.v)
            .scale(scale)
    }
}

/// A section of the boundary bundle: M-covariant V_nu-valued data on K.
#[derive(Clone)]
pub enum BoundarySection {
    /// A single generator.
    Generator(GeneratorData),
    /// A finite linear combination of generators (all at the same weight).
    Combination(Vec<(Complex64, GeneratorData)>),
    /// Arbitrary evaluator; the caller is responsible for M-covariance.
    Custom {
        nu: BundleWeight,
        eval: Arc<dyn Fn(&KElement) -> RepVector + Send + Sync>,
    },
}

impl BoundarySection {
    pub fn nu(&self) -> BundleWeight {
        match self {
            BoundarySection::Generator(g) => g.v.nu,
            BoundarySection::Combination(terms) => terms[0].1.v.nu,
            BoundarySection::Custom { nu, .. } => *nu,
        }
    }

    pub fn eval(&self, ctx: &GroupContext, k: &KElement) -> RepVector {
        match self {
            BoundarySection::Generator(g) => g.eval(ctx, k),
            BoundarySection::Combination(terms) => {
                let mut acc = RepVector::zero(self.nu());
                for (coef, g) in terms {
                    acc = acc.add(&g.eval(ctx, k).scale(*coef));
                }
                acc
            }
            BoundarySection::Custom { eval, .. } => eval(k),
        }
    }

    /// The unitary intertwiner on generator data: `(g, lambda, v)` maps to
    /// `(g, -lambda, v)`. Defined by density from generators; custom
    /// sections are rejected.
    pub fn u_lambda(&self) -> Result<BoundarySection, PoissonError> {
        let flip = |g: &GeneratorData| GeneratorData {
            g: g.g.clone(),
            g_inv: g.g_inv.clone(),
            lambda: -g.lambda,
            v: g.v.clone(),
        };
        match self {
            BoundarySection::Generator(g) => Ok(BoundarySection::Generator(flip(g))),
            BoundarySection::Combination(terms) => Ok(BoundarySection::Combination(
                terms.iter().map(|(c, g)| (*c, flip(g))).collect(),
            )),
            BoundarySection::Custom { .. } => Err(PoissonError::UnsupportedIntertwiner),
        }
    }
}

/// The generator `f^g_{lambda, v}`.
pub fn boundary_generator(
    _ctx: &GroupContext,
    _nu: BundleWeight,
    lambda: Complex64,
    g: &GroupElement,
    v: &RepVector,
) -> BoundarySection {
    BoundarySection::Generator(GeneratorData {
        g: g.clone(),
        g_inv: g.inverse(),
        lambda,
        v: v.clone(),
    })
}

/// A section of the bundle over G/K: right-K-covariant V_nu-valued map.
#[derive(Clone)]
pub struct Section {
    pub nu: BundleWeight,
    eval: Arc<dyn Fn(&GroupElement) -> RepVector + Send + Sync>,
}

impl Section {
    pub fn new(
        nu: BundleWeight,
        eval: impl Fn(&GroupElement) -> RepVector + Send + Sync + 'static,
    ) -> Self {
        Section {
            nu,
            eval: Arc::new(eval),
        }
    }

    pub fn eval(&self, g: &GroupElement) -> RepVector {
        (self.eval)(g)
    }

    pub fn zero(nu: BundleWeight) -> Self {
        Section::new(nu, move |_| RepVector::zero(nu))
    }

    /// Pointwise difference of two sections of the same weight.
    pub fn difference(a: &Section, b: &Section) -> Section {
        let (ea, eb) = (a.eval.clone(), b.eval.clone());
        Section::new(a.nu, move |g| ea(g).sub(&eb(g)))
    }

    /// tau-radial section `p(A+(g)) tau_nu(d/|d|)^{-1} v`.
    pub fn tau_radial(
        _ctx: &GroupContext,
        nu: BundleWeight,
        profile: RadialProfile,
        v: RepVector,
    ) -> Self {
        Section::new(nu, move |g| {
            let d = g.block_d();
            let dn = d.norm();
            let t = dn.max(1.0).acosh();
            let value = profile.eval(t);
            if value.norm() == 0.0 {
                return RepVector::zero(nu);
            }
            tau_matrix(nu, d.scale(1.0 / dn).conj())
                .expect("unit rotation part")
                .apply(&v)
                .scale(value)
        })
    }
}

/// The Poisson transform of a generator in closed form:
/// `x -> Phi_{nu,lambda}(g^{-1} x) v`.
pub fn poisson_generator(
    ctx: &GroupContext,
    nu: BundleWeight,
    lambda: Complex64,
    g: &GroupElement,
    v: &RepVector,
) -> Section {
    let ctx = *ctx;
    let g_inv = g.inverse();
    let v = v.clone();
    Section::new(nu, move |x| {
        spherical_apply(&ctx, nu, lambda, &g_inv.mul(x), &v).expect("spectral parameter valid")
    })
}

const STREAM_K_U: u64 = 2;
const STREAM_K_Q: u64 = 3;

/// Monte-Carlo Poisson transform
/// `P f(g) = avg_k e^(-(i lambda + rho) H(g^{-1} k)) tau_nu(kappa(g^{-1} k)) f(k)`
/// over Haar samples of K; returns the estimate and its standard error.
pub fn poisson_quadrature(
    ctx: &GroupContext,
    nu: BundleWeight,
    lambda: Complex64,
    f: &BoundarySection,
    g: &GroupElement,
    mc: &MCConfig,
) -> (RepVector, f64) {
    let streams = (
        SampleStream::new(mc.seed, STREAM_K_U),
        SampleStream::new(mc.seed, STREAM_K_Q),
    );
    let n = mc.k_samples;
    let dim = nu.dim();
    let g_inv = g.inverse();
    let chunk = 4096usize;
    let n_chunks = n.div_ceil(chunk);
    let partials: Vec<(Vec<Complex64>, f64)> = (0..n_chunks)
        .into_par_iter()
        .map(|ci| {
            let lo = ci * chunk;
            let hi = ((ci + 1) * chunk).min(n);
            let mut sum = vec![Complex64::new(0.0, 0.0); dim];
            let mut sum_sq = 0.0f64;
            for i in lo..hi {
                let k = haar_k(*ctx, &streams, i as u64);
                let y = g_inv.mul(&k.embed(*ctx));
                let iw = iwasawa(&y);
                let scale = ((-(Complex64::new(0.0, 1.0) * lambda) - ctx.rho()) * iw.h).exp();
                let val = tau_matrix(nu, iw.vkappa)
                    .expect("unit")
                    .apply(&f.eval(ctx, &k))
                    .scale(scale);
                for (s, c) in sum.iter_mut().zip(&val.coords) {
                    *s += c;
                }
                sum_sq += val.norm_sq();
            }
            (sum, sum_sq)
        })
        .collect();
    let mut total = vec![Complex64::new(0.0, 0.0); dim];
    let mut total_sq = 0.0;
    for (sum, sq) in &partials {
        for (t, s) in total.iter_mut().zip(sum) {
            *t += s;
        }
        total_sq += sq;
    }
    let nf = n as f64;
    let mean: Vec<Complex64> = total.iter().map(|c| c / nf).collect();
    let mean_norm_sq: f64 = mean.iter().map(|c| c.norm_sqr()).sum();
    let var = (total_sq / nf - mean_norm_sq).max(0.0);
    let stderr = (var / nf).sqrt();
    (RepVector::new(nu, mean), stderr)
}

/// Two-term asymptotic profile
/// `S f(x) = tau_nu^{-1}(k2) [c_nu(lambda) e^((i lambda - rho) t) f(k1)
///          + c_nu(-lambda) e^((-i lambda - rho) t) (U f)(k1)]`
/// in the fixed Cartan gauge; gauge-independent because the residual
/// M-factor cancels between the components.
pub fn asymptotic_profile(
    ctx: &GroupContext,
    nu: BundleWeight,
    lambda: Complex64,
    f: &BoundarySection,
    uf: &BoundarySection,
    x: &GroupElement,
) -> Result<RepVector, PoissonError> {
    let cd = cartan(x);
    let (k1, k2) = cd.full_components()?;
    let i = Complex64::new(0.0, 1.0);
    let cp = c_nu(ctx, nu, lambda)?;
    let cm = c_nu(ctx, nu, -lambda)?;
    let term_p = f
        .eval(ctx, k1)
        .scale(cp * ((i * lambda - ctx.rho()) * cd.t).exp());
    let term_m = uf
        .eval(ctx, k1)
        .scale(cm * ((-i * lambda - ctx.rho()) * cd.t).exp());
    Ok(tau_matrix(nu, k2.q.conj())?.apply(&term_p.add(&term_m)))
}

/// Ball averages `(1/R) int_{B(R)} ||F||^2` over a family of radii.
#[derive(Debug, Clone, serde::Serialize)]
pub struct BallAverageReport {
    pub radii: Vec<f64>,
    pub values: Vec<f64>,
    pub stderrs: Vec<f64>,
    /// Value at the largest radius; the limits converge at rate O(1/R), so
    /// no extrapolation is applied.
    pub extrapolated_limit: f64,
    pub seed: u64,
}

const STREAM_BALL_U: u64 = 4;
const STREAM_BALL_Q: u64 = 5;

/// Polar-coordinate ball average: Gauss-Legendre panels in the radius,
/// Monte-Carlo Haar samples on K per node, pairwise-summed in fixed node
/// order so the result is independent of thread scheduling.
pub fn ball_average(
    ctx: &GroupContext,
    section: &Section,
    radii: &[f64],
    mc: &MCConfig,
) -> BallAverageReport {
    let mut radii = radii.to_vec();
    radii.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let r_max = *radii.last().expect("at least one radius");
    let edges = panel_edges(r_max, mc.t_panel_width, &radii);
    let streams = (
        SampleStream::new(mc.seed, STREAM_BALL_U),
        SampleStream::new(mc.seed, STREAM_BALL_Q),
    );
    let n_per_node = mc.ball_samples_per_node();

    struct Node {
        t: f64,
        weight: f64,
        index: usize,
        panel_end: f64,
    }
    let mut nodes = Vec::new();
    for pair in edges.windows(2) {
        let (ts, ws) = gauss_panel(pair[0], pair[1], mc.panel_points);
        for (&t, &w) in ts.iter().zip(&ws) {
            nodes.push(Node {
                t,
                weight: w,
                index: nodes.len(),
                panel_end: pair[1],
            });
        }
    }
    let contribs: Vec<(f64, f64)> = nodes
        .par_iter()
        .map(|node| {
            let density = ctx.density(node.t);
            let at = make_at(*ctx, node.t);
            let base = (node.index * n_per_node) as u64;
            let mut vals = Vec::with_capacity(n_per_node);
            for s in 0..n_per_node {
                let k = haar_k(*ctx, &streams, base + s as u64);
                let x = k.embed(*ctx).mul(&at);
                vals.push(section.eval(&x).norm_sq());
            }
            let mean = pairwise_sum(&vals) / n_per_node as f64;
            let var = if n_per_node > 1 {
                let centered: Vec<f64> = vals.iter().map(|v| (v - mean) * (v - mean)).collect();
                pairwise_sum(&centered) / (n_per_node as f64 * (n_per_node - 1) as f64)
            } else {
                0.0
            };
            let scale = node.weight * density;
            (scale * mean, scale * scale * var)
        })
        .collect();

    let mut values = Vec::with_capacity(radii.len());
    let mut stderrs = Vec::with_capacity(radii.len());
    for &r in &radii {
        let upto: Vec<f64> = nodes
            .iter()
            .zip(&contribs)
            .filter(|(node, _)| node.panel_end <= r + 1e-9)
            .map(|(_, c)| c.0)
            .collect();
        let var: f64 = nodes
            .iter()
            .zip(&contribs)
            .filter(|(node, _)| node.panel_end <= r + 1e-9)
            .map(|(_, c)| c.1)
            .sum();
        values.push(pairwise_sum(&upto) / r);
        stderrs.push(var.sqrt() / r);
    }
    BallAverageReport {
        extrapolated_limit: *values.last().unwrap(),
        radii,
        values,
        stderrs,
        seed: mc.seed,
    }
}

/// Ball average of the defect `Phi_{nu,lambda}(g^{-1} x) v - S f^g(x)`;
/// the values must decay to zero as the radius grows.
pub fn key_lemma_defect(
    ctx: &GroupContext,
    nu: BundleWeight,
    lambda: f64,
    g: &GroupElement,
    v: &RepVector,
    radii: &[f64],
    mc: &MCConfig,
) -> Result<BallAverageReport, PoissonError> {
    let lam = Complex64::new(lambda, 0.0);
    let f = boundary_generator(ctx, nu, lam, g, v);
    let uf = f.u_lambda()?;
    let transform = poisson_generator(ctx, nu, lam, g, v);
    let ctx_copy = *ctx;
    let defect = Section::new(nu, move |x| {
        let lhs = transform.eval(x);
        match asymptotic_profile(&ctx_copy, nu, lam, &f, &uf, x) {
            Ok(rhs) => lhs.sub(&rhs),
            // degenerate radius: the profile is undefined there; the
            // quadrature nodes never reach radii that small
            Err(_) => lhs,
        }
    });
    Ok(ball_average(ctx, &defect, radii, mc))
}

/// Monte-Carlo squared boundary norm of a boundary section over K.
pub fn boundary_norm_sq_mc(ctx: &GroupContext, f: &BoundarySection, mc: &MCConfig) -> (f64, f64) {
    let streams = (
        SampleStream::new(mc.seed, STREAM_K_U),
        SampleStream::new(mc.seed, STREAM_K_Q),
    );
    let n = mc.k_samples;
    let vals: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|i| f.eval(ctx, &haar_k(*ctx, &streams, i as u64)).norm_sq())
        .collect();
    let mean = pairwise_sum(&vals) / n as f64;
    let centered: Vec<f64> = vals.iter().map(|v| (v - mean) * (v - mean)).collect();
    let var = pairwise_sum(&centered) / (n as f64 * (n - 1) as f64);
    (mean, var.sqrt())
}
