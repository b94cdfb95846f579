//! The vector-valued Helgason-Fourier transform on compactly supported
//! sections, convolution against tau-radial kernels, spectral projections,
//! the restriction-estimate ratio, and the tau-radial reductions in which
//! the Plancherel and inversion identities become one-dimensional.

use crate::group::{haar_k, iwasawa, make_at, GroupContext, GroupElement, KElement};
use crate::jacobi::{discrete_dnu, h_nu, RadialProfile, TransformError};
use crate::numerics::{gauss_panel, pairwise_sum, MCConfig, SampleStream};
use crate::poisson::{poisson_quadrature, spherical_profile, BoundarySection, Section};
use crate::reps::{tau_matrix, BundleWeight, RepVector};
use crate::specfun::{c_nu, SpecfunError};
use num_complex::Complex64;
use rayon::prelude::*;
use std::sync::Arc;

/// A section with certified compact support: the evaluator vanishes for
/// `A+(g) > support_radius`.
#[derive(Clone)]
pub struct CompactSection {
    pub section: Section,
    pub support_radius: f64,
}

impl CompactSection {
    pub fn new(section: Section, support_radius: f64) -> Self {
        CompactSection {
            section,
            support_radius,
        }
    }

    /// tau-radial section with a compactly supported scalar profile.
    pub fn tau_radial(
        ctx: &GroupContext,
        nu: BundleWeight,
        profile: RadialProfile,
        v: RepVector,
    ) -> Self {
        let support_radius = profile.support_radius();
        CompactSection {
            section: Section::tau_radial(ctx, nu, profile, v),
            support_radius,
        }
    }

    pub fn nu(&self) -> BundleWeight {
        self.section.nu
    }

    pub fn eval(&self, g: &GroupElement) -> RepVector {
        self.section.eval(g)
    }
}

const STREAM_FOURIER_U: u64 = 6;
const STREAM_FOURIER_Q: u64 = 7;

/// Vector-valued polar integral over the ball of the given radius:
/// Gauss-Legendre in the radius, Haar Monte-Carlo on K per node, node
/// contributions combined in fixed order.
fn polar_integral_vec(
    ctx: &GroupContext,
    nu: BundleWeight,
    radius: f64,
    mc: &MCConfig,
    eval: impl Fn(&GroupElement) -> RepVector + Sync,
) -> RepVector {
    if radius <= 0.0 {
        return RepVector::zero(nu);
    }
    let streams = (
        SampleStream::new(mc.seed, STREAM_FOURIER_U),
        SampleStream::new(mc.seed, STREAM_FOURIER_Q),
    );
    let n_per_node = mc.ball_samples_per_node();
    let mut nodes = Vec::new();
    let mut lo = 0.0f64;
    while lo < radius - 1e-12 {
        let hi = (lo + mc.t_panel_width).min(radius);
        let (ts, ws) = gauss_panel(lo, hi, mc.panel_points);
        for (&t, &w) in ts.iter().zip(&ws) {
            nodes.push((t, w, nodes.len()));
        }
        lo = hi;
    }
    let dim = nu.dim();
    let contribs: Vec<Vec<Complex64>> = nodes
        .par_iter()
        .map(|&(t, w, index)| {
            let at = make_at(*ctx, t);
            let density = ctx.density(t);
            let base = (index * n_per_node) as u64;
            let mut sum = vec![Complex64::new(0.0, 0.0); dim];
            for s in 0..n_per_node {
                let k = haar_k(*ctx, &streams, base + s as u64);
                let val = eval(&k.embed(*ctx).mul(&at));
                for (acc, c) in sum.iter_mut().zip(&val.coords) {
                    *acc += c;
                }
            }
            let scale = w * density / n_per_node as f64;
            sum.iter().map(|c| c * scale).collect()
        })
        .collect();
    let coords = (0..dim)
        .map(|j| {
            let col: Vec<Complex64> = contribs.iter().map(|c| c[j]).collect();
            crate::numerics::pairwise_sum_complex(&col)
        })
        .collect();
    RepVector::new(nu, coords)
}

/// Scalar polar integral of `g -> value(g)` over the ball (same scheme).
fn polar_integral_scalar(
    ctx: &GroupContext,
    radius: f64,
    mc: &MCConfig,
    eval: impl Fn(&GroupElement) -> f64 + Sync,
) -> f64 {
    if radius <= 0.0 {
        return 0.0;
    }
    let streams = (
        SampleStream::new(mc.seed, STREAM_FOURIER_U),
        SampleStream::new(mc.seed, STREAM_FOURIER_Q),
    );
    let n_per_node = mc.ball_samples_per_node();
    let mut nodes = Vec::new();
    let mut lo = 0.0f64;
    while lo < radius - 1e-12 {
        let hi = (lo + mc.t_panel_width).min(radius);
        let (ts, ws) = gauss_panel(lo, hi, mc.panel_points);
        for (&t, &w) in ts.iter().zip(&ws) {
            nodes.push((t, w, nodes.len()));
        }
        lo = hi;
    }
    let contribs: Vec<f64> = nodes
        .par_iter()
        .map(|&(t, w, index)| {
            let at = make_at(*ctx, t);
            let density = ctx.density(t);
            let base = (index * n_per_node) as u64;
            let mut vals = Vec::with_capacity(n_per_node);
            for s in 0..n_per_node {
                let k = haar_k(*ctx, &streams, base + s as u64);
                vals.push(eval(&k.embed(*ctx).mul(&at)));
            }
            w * density * pairwise_sum(&vals) / n_per_node as f64
        })
        .collect();
    pairwise_sum(&contribs)
}

/// The Helgason-Fourier slice
/// `F_nu F(lambda, k) = int_{B(R)} e^((i lambda - rho) H(g^{-1} k))
///  tau_nu^{-1}(kappa(g^{-1} k)) F(g) dg_K`
/// by polar quadrature with Haar Monte-Carlo on K (the integrand is
/// right-K-invariant, so the group integral equals the quotient integral).
pub fn helgason_fourier(
    ctx: &GroupContext,
    nu: BundleWeight,
    f: &CompactSection,
    lambda: Complex64,
    k: &KElement,
    mc: &MCConfig,
) -> RepVector {
    let i = Complex64::new(0.0, 1.0);
    let rho = ctx.rho();
    let k_embed = k.embed(*ctx);
    polar_integral_vec(ctx, nu, f.support_radius, mc, |g| {
        let y = g.inverse().mul(&k_embed);
        let iw = iwasawa(&y);
        let scale = ((i * lambda - rho) * iw.h).exp();
        tau_matrix(nu, iw.vkappa.conj())
            .expect("unit")
            .apply(&f.eval(g))
            .scale(scale)
    })
}

/// A fixed-lambda Fourier slice as boundary data, backed by quadrature.
pub fn fourier_slice(
    ctx: &GroupContext,
    nu: BundleWeight,
    f: &CompactSection,
    lambda: Complex64,
    mc: &MCConfig,
) -> BoundarySection {
    let ctx = *ctx;
    let f = f.clone();
    let mc = mc.clone();
    BoundarySection::Custom {
        nu,
        eval: Arc::new(move |k: &KElement| helgason_fourier(&ctx, nu, &f, lambda, k, &mc)),
    }
}

/// Convolution against a tau-radial kernel with scalar profile `p`:
/// `(Phi * F)(g) = int_G p(A+(x^{-1} g)) tau_nu(w(x^{-1} g))^{-1} F(x) dx`.
pub fn convolve_radial(
    ctx: &GroupContext,
    nu: BundleWeight,
    kernel_profile: &RadialProfile,
    f: &CompactSection,
    g: &GroupElement,
    mc: &MCConfig,
) -> RepVector {
    let kernel = kernel_profile.clone();
    polar_integral_vec(ctx, nu, f.support_radius, mc, |x| {
        let y = x.inverse().mul(g);
        let d = y.block_d();
        let dn = d.norm();
        let t = dn.max(1.0).acosh();
        let value = kernel.eval(t);
        if value.norm() == 0.0 {
            return RepVector::zero(nu);
        }
        tau_matrix(nu, d.scale(1.0 / dn).conj())
            .expect("unit")
            .apply(&f.eval(x))
            .scale(value)
    })
}

/// The generalized spectral projection
/// `Q_lambda F(g) = |c_nu(lambda)|^{-2} P_lambda[F_nu F(lambda, .)](g)`,
/// with the slice evaluated by quadrature under `slice_mc` and the Poisson
/// integral under `mc`.
pub fn spectral_projection(
    ctx: &GroupContext,
    nu: BundleWeight,
    f: &CompactSection,
    lambda: f64,
    g: &GroupElement,
    mc: &MCConfig,
    slice_mc: &MCConfig,
) -> Result<RepVector, SpecfunError> {
    let lam = Complex64::new(lambda, 0.0);
    let c = c_nu(ctx, nu, lam)?;
    let slice = fourier_slice(ctx, nu, f, lam, slice_mc);
    let (val, _stderr) = poisson_quadrature(ctx, nu, lam, &slice, g, mc);
    Ok(val.scale(Complex64::new(1.0 / c.norm_sqr(), 0.0)))
}

/// The restriction-estimate ratio
/// `(int_K ||F_nu F(lambda,k)||^2 dk)^{1/2} / (|c_nu(lambda)| R^{1/2} ||F||)`,
/// bounded uniformly in lambda. `outer_samples` Haar points carry the
/// K-average of the slice norm.
pub fn restriction_ratio(
    ctx: &GroupContext,
    nu: BundleWeight,
    f: &CompactSection,
    lambda: f64,
    mc: &MCConfig,
    outer_samples: usize,
) -> Result<f64, SpecfunError> {
    let lam = Complex64::new(lambda, 0.0);
    let c = c_nu(ctx, nu, lam)?;
    let streams = (
        SampleStream::new(mc.seed.wrapping_add(101), STREAM_FOURIER_U),
        SampleStream::new(mc.seed.wrapping_add(101), STREAM_FOURIER_Q),
    );
    let slice_sq: Vec<f64> = (0..outer_samples)
        .into_par_iter()
        .map(|i| {
            let k = haar_k(*ctx, &streams, i as u64);
            helgason_fourier(ctx, nu, f, lam, &k, mc).norm_sq()
        })
        .collect();
    let num_sq = pairwise_sum(&slice_sq) / outer_samples as f64;
    let f_norm_sq = polar_integral_scalar(ctx, f.support_radius, mc, |g| f.eval(g).norm_sq());
    if f_norm_sq == 0.0 {
        return Ok(0.0);
    }
    Ok((num_sq / (c.norm_sqr() * f.support_radius * f_norm_sq)).sqrt())
}

// ---------------------------------------------------------------------------
// tau-radial reductions: every integral is 1-dimensional

/// Plancherel bookkeeping for a tau-radial section with unit fiber vector.
#[derive(Debug, Clone, serde::Serialize)]
pub struct RadialPlancherelReport {
    /// `int ||F||^2 dg_K = int |p(t)|^2 Delta(t) dt` computed geometrically.
    pub geometric: f64,
    /// Spectral side without any constant: `int_0^inf |H(lambda)|^2
    /// |c_nu(lambda)|^{-2} dlambda`.
    pub spectral_integral: f64,
    /// Discrete contribution with the 4^nu-rescaled half-residue weights.
    pub discrete: f64,
    /// Relative defect of `geometric = spectral_integral / 2pi + discrete`.
    pub defect: f64,
    /// Measured Plancherel constant `(geometric - discrete) /
    /// spectral_integral`; rules between the 1/2pi and 1/pi candidates.
    pub measured_constant: f64,
}

/// The nu-level discrete weight for section-level identities:
/// `4^nu * d_j / 2` (the Jacobi-level half-residue transported through the
/// cosh-weight reduction).
pub fn section_discrete_weight(nu: BundleWeight, coefficient: f64) -> f64 {
    4.0f64.powi(nu.0 as i32) * 0.5 * coefficient
}

/// Quadrature of `h(lambda) |c_nu(lambda)|^{-2}` over (0, lambda_max] on
/// dyadic panels (no 1/2pi).
fn nu_spectral_integral(
    ctx: &GroupContext,
    nu: BundleWeight,
    lambda_max: f64,
    points: usize,
    h: impl Fn(f64) -> Result<f64, TransformError> + Sync,
) -> Result<f64, TransformError> {
    let edges = crate::jacobi::dyadic_edges(lambda_max);
    let mut parts = Vec::new();
    for pair in edges.windows(2) {
        let (nodesv, weights) = gauss_panel(pair[0], pair[1], points);
        let panel: Result<Vec<f64>, TransformError> = nodesv
            .par_iter()
            .zip(&weights)
            .map(|(&lam, &w)| {
                let c = c_nu(ctx, nu, Complex64::new(lam, 0.0))?;
                Ok(w * h(lam)? / c.norm_sqr())
            })
            .collect();
        parts.push(pairwise_sum(&panel?));
    }
    Ok(pairwise_sum(&parts))
}

/// Geometric squared norm of the tau-radial section with unit vector:
/// `int_0^support |p(t)|^2 Delta(t) dt`.
pub fn radial_norm_sq(ctx: &GroupContext, profile: &RadialProfile) -> f64 {
    let support = profile.support_radius();
    let mut total = 0.0;
    let mut lo = 0.0f64;
    while lo < support - 1e-14 {
        let hi = (lo + 1.0).min(support);
        let (ts, ws) = gauss_panel(lo, hi, 88);
        for (&t, &w) in ts.iter().zip(&ws) {
            total += w * profile.eval(t).norm_sqr() * ctx.density(t);
        }
        lo = hi;
    }
    total
}

/// Plancherel identity for the tau-radial family, with the constant left
/// as a measurement.
pub fn tau_radial_plancherel(
    ctx: &GroupContext,
    nu: BundleWeight,
    profile: &RadialProfile,
    lambda_max: f64,
) -> Result<RadialPlancherelReport, TransformError> {
    let geometric = radial_norm_sq(ctx, profile);
    let spectral_integral = nu_spectral_integral(ctx, nu, lambda_max, 64, |lam| {
        Ok(h_nu(ctx, nu, profile, Complex64::new(lam, 0.0))?.norm_sqr())
    })?;
    let mut discrete = 0.0;
    for term in &discrete_dnu(ctx, nu).entries {
        let h = h_nu(ctx, nu, profile, term.lambda)?;
        discrete += section_discrete_weight(nu, term.coefficient) * h.norm_sqr();
    }
    let continuous = spectral_integral / (2.0 * std::f64::consts::PI);
    let defect = (geometric - continuous - discrete).abs() / geometric;
    let measured_constant = if spectral_integral > 0.0 {
        (geometric - discrete) / spectral_integral
    } else {
        0.0
    };
    Ok(RadialPlancherelReport {
        geometric,
        spectral_integral,
        discrete,
        defect,
        measured_constant,
    })
}

/// Reconstruction of the scalar profile from its spherical transform:
/// `p(t) = (1/2pi) int H(lambda) phi_{nu,lambda}(t) |c_nu|^{-2} dlambda
///        + sum_j 4^nu (d_j/2) H(lambda_j) phi_{nu,lambda_j}(t)`.
/// Returns `(t, reconstructed, true_value)` triples.
pub fn tau_radial_inversion(
    ctx: &GroupContext,
    nu: BundleWeight,
    profile: &RadialProfile,
    lambda_max: f64,
    ts: &[f64],
) -> Result<Vec<(f64, Complex64, Complex64)>, TransformError> {
    let edges = crate::jacobi::dyadic_edges(lambda_max);
    // cache the transform at the quadrature grid
    let mut grid: Vec<(f64, f64)> = Vec::new();
    for pair in edges.windows(2) {
        let (nodesv, weights) = gauss_panel(pair[0], pair[1], 64);
        grid.extend(nodesv.iter().copied().zip(weights.iter().copied()));
    }
    let transform: Vec<Complex64> = grid
        .par_iter()
        .map(|&(lam, _)| h_nu(ctx, nu, profile, Complex64::new(lam, 0.0)))
        .collect::<Result<_, _>>()?;
    let ds = discrete_dnu(ctx, nu);
    let disc_transform: Vec<Complex64> = ds
        .entries
        .iter()
        .map(|term| h_nu(ctx, nu, profile, term.lambda))
        .collect::<Result<_, _>>()?;
    let mut out = Vec::with_capacity(ts.len());
    for &t in ts {
        let parts: Vec<Complex64> = grid
            .par_iter()
            .zip(&transform)
            .map(|(&(lam, w), h)| {
                let lamc = Complex64::new(lam, 0.0);
                let c = c_nu(ctx, nu, lamc)?;
                Ok(h * spherical_profile(ctx, nu, lamc, t)? * (w / c.norm_sqr()))
            })
            .collect::<Result<_, SpecfunError>>()?;
        let mut recon =
            crate::numerics::pairwise_sum_complex(&parts) / (2.0 * std::f64::consts::PI);
        for (term, h) in ds.entries.iter().zip(&disc_transform) {
            recon += h
                * spherical_profile(ctx, nu, term.lambda, t)?
                * section_discrete_weight(nu, term.coefficient);
        }
        out.push((t, recon, profile.eval(t)));
    }
    Ok(out)
}

/// Closed pipeline for the spectral projection of a tau-radial section at a
/// flow point: `Q_lambda F(a_t) = |c_nu|^{-2} H(lambda) phi_{nu,lambda}(t) v`
/// (scalar factor returned).
pub fn spectral_projection_radial(
    ctx: &GroupContext,
    nu: BundleWeight,
    profile: &RadialProfile,
    lambda: f64,
    t: f64,
) -> Result<Complex64, TransformError> {
    let lam = Complex64::new(lambda, 0.0);
    let c = c_nu(ctx, nu, lam)?;
    let h = h_nu(ctx, nu, profile, lam)?;
    Ok(h * spherical_profile(ctx, nu, lam, t)? / c.norm_sqr())
}

/// Ball-averaged spectral-projection aggregate for the tau-radial family:
/// `A(R) = (1/2pi) int_0^lmax |c|^{-4} |H|^2 [(1/R) int_0^R |phi|^2 Delta] dlambda`
/// for each radius, together with the squared norm of the continuous part.
/// The aggregate tends to `2 ||F_cont||^2` as R grows.
pub fn spectral_aggregate_radial(
    ctx: &GroupContext,
    nu: BundleWeight,
    profile: &RadialProfile,
    lambda_max: f64,
    radii: &[f64],
) -> Result<(Vec<f64>, f64), TransformError> {
    let r_max = radii.iter().cloned().fold(0.0, f64::max);
    let edges = crate::jacobi::dyadic_edges(lambda_max);
    let mut grid: Vec<(f64, f64)> = Vec::new();
    for pair in edges.windows(2) {
        let (nodesv, weights) = gauss_panel(pair[0], pair[1], 48);
        grid.extend(nodesv.iter().copied().zip(weights.iter().copied()));
    }
    // per lambda node: |c|^-4 |H|^2 and the cumulative t-integrals
    let per_node: Vec<(f64, Vec<f64>)> = grid
        .par_iter()
        .map(|&(lam, w)| {
            let lamc = Complex64::new(lam, 0.0);
            let c = c_nu(ctx, nu, lamc)?;
            let h = h_nu(ctx, nu, profile, lamc)?;
            let weight = w * h.norm_sqr() / (c.norm_sqr() * c.norm_sqr());
            // cumulative (1/R) int_0^R |phi_{nu,lambda}|^2 Delta dt
            let mut cums = Vec::with_capacity(radii.len());
            let mut acc = 0.0;
            let mut lo = 0.0f64;
            let mut ridx = 0usize;
            while lo < r_max - 1e-12 && ridx < radii.len() {
                let hi = (lo + 1.0).min(r_max);
                let (ts, ws) = gauss_panel(lo, hi, 32);
                for (&t, &wt) in ts.iter().zip(&ws) {
                    acc += wt * spherical_profile(ctx, nu, lamc, t)?.norm_sqr() * ctx.density(t);
                }
                while ridx < radii.len() && (radii[ridx] - hi).abs() < 1e-9 {
                    cums.push(acc / radii[ridx]);
                    ridx += 1;
                }
                lo = hi;
            }
            Ok((weight, cums))
        })
        .collect::<Result<_, TransformError>>()?;
    let aggregates: Vec<f64> = (0..radii.len())
        .map(|ri| {
            let vals: Vec<f64> = per_node.iter().map(|(w, cums)| w * cums[ri]).collect();
            pairwise_sum(&vals) / (2.0 * std::f64::consts::PI)
        })
        .collect();
    let spectral_integral = nu_spectral_integral(ctx, nu, lambda_max, 64, |lam| {
        Ok(h_nu(ctx, nu, profile, Complex64::new(lam, 0.0))?.norm_sqr())
    })?;
    let cont_norm_sq = spectral_integral / (2.0 * std::f64::consts::PI);
    Ok((aggregates, cont_norm_sq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobi::{bundle_params, jacobi_forward};

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn unit_v(nu: BundleWeight) -> RepVector {
        let mut v = RepVector::zero(nu);
        v.coords[0] = c64(1.0, 0.0);
        v
    }

    #[test]
    fn helgason_zero_section() {
        let ctx = GroupContext::new(1);
        let nu = BundleWeight(1);
        let f = CompactSection::new(Section::zero(nu), 1.5);
        let mc = MCConfig {
            ball_samples_per_panel: 640,
            ..MCConfig::default()
        };
        let k = KElement::identity(1);
        let v = helgason_fourier(&ctx, nu, &f, c64(1.0, 0.0), &k, &mc);
        assert!(v.norm() < 1e-14);
    }

    #[test]
    fn helgason_radial_section_factorizes() {
        // slice of a tau-radial section: H_nu(p)(lambda) tau(q_k)^{-1} v
        let ctx = GroupContext::new(1);
        let nu = BundleWeight(1);
        let profile = RadialProfile::smooth_bump(1.5);
        let v = unit_v(nu);
        let f = CompactSection::tau_radial(&ctx, nu, profile.clone(), v.clone());
        let lam = c64(0.9, 0.0);
        let mc = MCConfig::default();
        let want_scalar = h_nu(&ctx, nu, &profile, lam).unwrap();
        let streams = (SampleStream::new(9, 33), SampleStream::new(9, 34));
        for i in 0..3u64 {
            let k = haar_k(ctx, &streams, i);
            let got = helgason_fourier(&ctx, nu, &f, lam, &k, &mc);
            let want = tau_matrix(nu, k.q.conj())
                .unwrap()
                .apply(&v)
                .scale(want_scalar);
            assert!(
                got.sub(&want).norm() < 0.03 * want.norm(),
                "i={i}: {} vs {}",
                got.norm(),
                want.norm()
            );
        }
        // the radial slice is even in lambda (the scalar transform is
        // real and even); same samples, so equality holds to MC tolerance
        let k = KElement::identity(1);
        let plus = helgason_fourier(&ctx, nu, &f, lam, &k, &mc);
        let minus = helgason_fourier(&ctx, nu, &f, -lam, &k, &mc);
        assert!(plus.sub(&minus).norm() < 0.03 * plus.norm());
        // scalar bundle: conjugate symmetry is exact samplewise for a real
        // section
        let nu0 = BundleWeight(0);
        let f0 = CompactSection::tau_radial(
            &ctx,
            nu0,
            RadialProfile::smooth_bump(1.5),
            RepVector::new(nu0, vec![c64(1.0, 0.0)]),
        );
        let k0 = KElement::identity(1);
        let p0 = helgason_fourier(&ctx, nu0, &f0, lam, &k0, &mc);
        let m0 = helgason_fourier(&ctx, nu0, &f0, -lam, &k0, &mc);
        assert!((p0.coords[0] - m0.coords[0].conj()).norm() < 1e-12 * p0.norm());
    }

    #[test]
    fn convolution_multiplication_law() {
        // F_nu(Phi * F)(lambda, k) = H_nu(Phi)(lambda) F_nu F(lambda, k)
        let ctx = GroupContext::new(1);
        let nu = BundleWeight(1);
        let pf = RadialProfile::smooth_bump(1.2);
        let pk = RadialProfile::smooth_bump(1.0);
        let v = unit_v(nu);
        let f = CompactSection::tau_radial(&ctx, nu, pf.clone(), v.clone());
        let mc = MCConfig::default();
        // sample the convolved section along the flow, confirm tau-radial
        // structure, then compare slices
        let support = 2.2;
        let nt = 23usize;
        let ts: Vec<f64> = (0..=nt).map(|i| support * i as f64 / nt as f64).collect();
        let conv_vals: Vec<Complex64> = ts
            .iter()
            .map(|&t| {
                let val = convolve_radial(&ctx, nu, &pk, &f, &make_at(ctx, t), &mc);
                v.inner(&val) / v.norm_sq()
            })
            .collect();
        let conv_profile = RadialProfile::from_samples(ts, conv_vals).unwrap();
        let conv_section = CompactSection::tau_radial(&ctx, nu, conv_profile, v.clone());
        // radial structure check away from the sampling axis
        let streams = (SampleStream::new(5, 60), SampleStream::new(5, 61));
        let k0 = haar_k(ctx, &streams, 0);
        let x = k0.embed(ctx).mul(&make_at(ctx, 0.9));
        let direct = convolve_radial(&ctx, nu, &pk, &f, &x, &mc);
        let viaprofile = conv_section.eval(&x);
        assert!(
            direct.sub(&viaprofile).norm() < 0.05 * direct.norm().max(1e-6),
            "not tau-radial: {} vs {}",
            direct.norm(),
            viaprofile.norm()
        );
        let lam = c64(1.1, 0.0);
        let k = KElement::identity(1);
        let lhs = helgason_fourier(&ctx, nu, &conv_section, lam, &k, &mc);
        let rhs =
            helgason_fourier(&ctx, nu, &f, lam, &k, &mc).scale(h_nu(&ctx, nu, &pk, lam).unwrap());
        assert!(
            lhs.sub(&rhs).norm() <= 0.03 * rhs.norm(),
            "multiplication law defect {} vs scale {}",
            lhs.sub(&rhs).norm(),
            rhs.norm()
        );
    }

    #[test]
    fn convolution_of_zero_section() {
        let ctx = GroupContext::new(1);
        let nu = BundleWeight(0);
        let f = CompactSection::new(Section::zero(nu), 1.0);
        let mc = MCConfig {
            ball_samples_per_panel: 640,
            ..MCConfig::default()
        };
        let kernel = RadialProfile::smooth_bump(1.0);
        let v = convolve_radial(&ctx, nu, &kernel, &f, &make_at(ctx, 0.5), &mc);
        assert!(v.norm() < 1e-14);
    }

    #[test]
    fn convolution_against_narrow_kernel_mollifies() {
        // a narrow normalized kernel approximately reproduces the section
        let ctx = GroupContext::new(1);
        let nu = BundleWeight(0);
        let profile = RadialProfile::smooth_bump(1.5);
        let v = unit_v(nu);
        let f = CompactSection::tau_radial(&ctx, nu, profile.clone(), v.clone());
        let eps = 0.2;
        let kernel = RadialProfile::smooth_bump(eps);
        // kernel mass int p(A+(y)) dy over the ball of radius eps
        let mut mass = 0.0;
        let (ts, ws) = gauss_panel(0.0, eps, 64);
        for (&t, &w) in ts.iter().zip(&ws) {
            mass += w * kernel.eval(t).re * ctx.density(t);
        }
        // the integrand concentrates on a small cap of each K-sphere, so
        // this needs a fat sample budget and a small base radius
        let mc = MCConfig {
            ball_samples_per_panel: 200_000,
            ..MCConfig::default()
        };
        let g = make_at(ctx, 0.3);
        let conv = convolve_radial(&ctx, nu, &kernel, &f, &g, &mc);
        let want = f.eval(&g).scale(Complex64::new(mass, 0.0));
        assert!(
            conv.sub(&want).norm() < 0.10 * want.norm(),
            "{} vs {}",
            conv.norm(),
            want.norm()
        );
    }

    #[test]
    fn spectral_projection_linear_in_section() {
        // same samples, so homogeneity is exact
        let ctx = GroupContext::new(1);
        let nu = BundleWeight(1);
        let profile = RadialProfile::smooth_bump(1.2);
        let v = unit_v(nu);
        let f = CompactSection::tau_radial(&ctx, nu, profile.clone(), v.clone());
        let scaled = CompactSection::tau_radial(&ctx, nu, profile.weighted(|_| -2.5), v);
        let mc = MCConfig {
            k_samples: 400,
            ball_samples_per_panel: 1280,
            ..MCConfig::default()
        };
        let a = spectral_projection(&ctx, nu, &f, 1.0, &make_at(ctx, 0.5), &mc, &mc).unwrap();
        let b = spectral_projection(&ctx, nu, &scaled, 1.0, &make_at(ctx, 0.5), &mc, &mc).unwrap();
        assert!(
            b.sub(&a.scale(Complex64::new(-2.5, 0.0))).norm() < 1e-10 * b.norm().max(1e-12)
        );
    }

    #[test]
    fn radial_plancherel_constant_and_defect() {
        let ctx = GroupContext::new(1);
        for nu in [0usize, 4] {
            let nu = BundleWeight(nu);
            let profile = RadialProfile::poly_bump(2.0, 8);
            let report = tau_radial_plancherel(&ctx, nu, &profile, 40.0).unwrap();
            assert!(report.defect <= 1e-3, "nu={nu:?}: defect {}", report.defect);
            let two_pi_inv = 1.0 / (2.0 * std::f64::consts::PI);
            let pi_inv = 1.0 / std::f64::consts::PI;
            let rel_2pi = (report.measured_constant - two_pi_inv).abs() / two_pi_inv;
            let rel_pi = (report.measured_constant - pi_inv).abs() / pi_inv;
            assert!(
                rel_2pi < 0.10 && rel_pi > 0.10,
                "constant measurement not decisive: {}",
                report.measured_constant
            );
        }
    }

    #[test]
    fn radial_inversion_reconstructs() {
        let ctx = GroupContext::new(1);
        for nu in [0usize, 4] {
            let nu = BundleWeight(nu);
            let profile = RadialProfile::poly_bump(2.0, 8);
            let rows = tau_radial_inversion(&ctx, nu, &profile, 40.0, &[0.4, 1.0, 1.6]).unwrap();
            for (t, recon, truth) in rows {
                assert!(
                    (recon - truth).norm() <= 0.01 * profile.sup_norm(),
                    "nu={nu:?} t={t}: {recon} vs {truth}"
                );
            }
        }
    }

    #[test]
    fn spectral_projection_pipeline_matches_double_quadrature() {
        let ctx = GroupContext::new(1);
        let nu = BundleWeight(1);
        let profile = RadialProfile::smooth_bump(1.2);
        let v = unit_v(nu);
        let f = CompactSection::tau_radial(&ctx, nu, profile.clone(), v.clone());
        let lambda = 1.3;
        let t = 0.8;
        let closed = spectral_projection_radial(&ctx, nu, &profile, lambda, t).unwrap();
        let mc = MCConfig {
            k_samples: 1_024,
            ..MCConfig::default()
        };
        let slice_mc = MCConfig {
            ball_samples_per_panel: 10_000,
            ..MCConfig::default()
        };
        let lam = Complex64::new(lambda, 0.0);
        let c = c_nu(&ctx, nu, lam).unwrap();
        let slice = fourier_slice(&ctx, nu, &f, lam, &slice_mc);
        let (raw, stderr) = poisson_quadrature(&ctx, nu, lam, &slice, &make_at(ctx, t), &mc);
        let got = raw.scale(c64(1.0 / c.norm_sqr(), 0.0));
        let want = v.scale(closed);
        assert!(
            got.sub(&want).norm() <= 0.05 * want.norm() + 4.0 * stderr / c.norm_sqr(),
            "{} vs {} (outer stderr {stderr})",
            got.norm(),
            want.norm()
        );
    }

    #[test]
    fn spectral_projection_degenerate_inputs() {
        let ctx = GroupContext::new(1);
        let nu = BundleWeight(1);
        let f = CompactSection::new(Section::zero(nu), 1.0);
        let mc = MCConfig {
            k_samples: 500,
            ball_samples_per_panel: 640,
            ..MCConfig::default()
        };
        // lambda = 0 is a spectral pole
        assert!(spectral_projection(&ctx, nu, &f, 0.0, &make_at(ctx, 0.5), &mc, &mc).is_err());
        let v = spectral_projection(&ctx, nu, &f, 1.0, &make_at(ctx, 0.5), &mc, &mc).unwrap();
        assert!(v.norm() < 1e-12);
    }

    #[test]
    fn restriction_ratio_scaling_invariance_and_zero() {
        let ctx = GroupContext::new(1);
        let nu = BundleWeight(0);
        let profile = RadialProfile::smooth_bump(2.0);
        let v = unit_v(nu);
        let f = CompactSection::tau_radial(&ctx, nu, profile.clone(), v.clone());
        let doubled = CompactSection::tau_radial(&ctx, nu, profile.weighted(|_| 2.0), v.clone());
        let mc = MCConfig {
            ball_samples_per_panel: 10_000,
            ..MCConfig::default()
        };
        let a = restriction_ratio(&ctx, nu, &f, 1.0, &mc, 16).unwrap();
        let b = restriction_ratio(&ctx, nu, &doubled, 1.0, &mc, 16).unwrap();
        assert!((a - b).abs() < 1e-9 * a, "{a} vs {b}");
        let zero = CompactSection::new(Section::zero(nu), 1.0);
        assert_eq!(
            restriction_ratio(&ctx, nu, &zero, 1.0, &mc, 8).unwrap(),
            0.0
        );
    }

    #[test]
    fn nu_spectral_matches_jacobi_level() {
        // int |H|^2 |c_nu|^-2 over a panel == 4^nu * same at (alpha, beta)
        let ctx = GroupContext::new(1);
        let nu = BundleWeight(2);
        let profile = RadialProfile::smooth_bump(1.5);
        let p = bundle_params(&ctx, nu);
        let weighted = profile.weighted(crate::jacobi::spherical_weight(nu));
        let a = nu_spectral_integral(&ctx, nu, 8.0, 48, |lam| {
            Ok(h_nu(&ctx, nu, &profile, Complex64::new(lam, 0.0))?.norm_sqr())
        })
        .unwrap();
        // jacobi-level with c_ab and the weighted profile
        let edges = crate::jacobi::dyadic_edges(8.0);
        let mut b = 0.0;
        for pair in edges.windows(2) {
            let (nodesv, weights) = gauss_panel(pair[0], pair[1], 48);
            for (&lam, &w) in nodesv.iter().zip(&weights) {
                let c = crate::specfun::c_ab(&p, Complex64::new(lam, 0.0)).unwrap();
                let h = jacobi_forward(&p, &weighted, Complex64::new(lam, 0.0)).unwrap();
                b += w * h.norm_sqr() / c.norm_sqr();
            }
        }
        let expected = 4.0f64.powi(nu.0 as i32) * b;
        assert!((a - expected).abs() < 1e-9 * expected, "{a} vs {expected}");
    }
}
