//! The matrix model of Sp(n,1): elements preserving the quaternionic form
//! `sum |u_j|^2 - |u_{n+1}|^2`, the radial flow a_t, the maximal compact
//! K = Sp(n) x Sp(1), Iwasawa and Cartan component extraction through the
//! block formulas `e^{H(g)} = |c e_1 + d|` and `cosh A+(g) = |d|`, the ball
//! action, and the radial volume density.

use crate::numerics::SampleStream;
use crate::quat::{QMatrix, QuatError, Quaternion};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroupError {
    #[error("form invariant violated: residual {0:e}")]
    FormViolation(f64),
    #[error("K-element not unitary: residual {0:e}")]
    NotUnitary(f64),
    #[error("Cartan radius {0:e} below threshold; full K-components unavailable")]
    DegenerateRadius(f64),
    #[error(transparent)]
    Quat(#[from] QuatError),
}

/// Rank data: quaternionic dimension n, with rho = 2n + 1.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct GroupContext {
    n: usize,
    form_tol: f64,
}

impl GroupContext {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        GroupContext { n, form_tol: 1e-9 }
    }

    pub fn with_form_tol(n: usize, form_tol: f64) -> Self {
        GroupContext { n, form_tol }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rho(&self) -> f64 {
        2.0 * self.n as f64 + 1.0
    }

    pub fn dim(&self) -> usize {
        self.n + 1
    }

    /// Radial volume density `(2 sinh t)^(4n-1) (2 cosh t)^3`.
    pub fn density(&self, t: f64) -> f64 {
        (2.0 * t.sinh()).powi(4 * self.n as i32 - 1) * (2.0 * t.cosh()).powi(3)
    }
}

/// A group element with its block decomposition (a, b; c, d).
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    pub ctx: GroupContext,
    m: QMatrix,
}

fn form_residual(ctx: &GroupContext, m: &QMatrix) -> f64 {
    let n = ctx.n;
    let p = m.dagger().mul(m).expect("square");
    // J = diag(I_n, -1): compare m* J m against J via m* m with sign flips
    // folded in: (m* J m)_{ij} = sum_k conj(m_ki) J_kk m_kj.
    let mut worst = 0.0f64;
    for i in 0..=n {
        for j in 0..=n {
            let mut s = Quaternion::ZERO;
            for k in 0..=n {
                let sign = if k == n { -1.0 } else { 1.0 };
                s = s + (m[(k, i)].conj() * m[(k, j)]).scale(sign);
            }
            let want = if i != j {
                Quaternion::ZERO
            } else if i == n {
                -Quaternion::ONE
            } else {
                Quaternion::ONE
            };
            worst = worst.max(s.dist(want));
        }
    }
    let _ = p;
    worst
}

impl GroupElement {
    /// Validates the form invariant at construction.
    pub fn new(ctx: GroupContext, m: QMatrix) -> Result<Self, GroupError> {
        let resid = form_residual(&ctx, &m);
        if resid > ctx.form_tol {
            return Err(GroupError::FormViolation(resid));
        }
        Ok(GroupElement { ctx, m })
    }

    fn new_unchecked(ctx: GroupContext, m: QMatrix) -> Self {
        GroupElement { ctx, m }
    }

    pub fn identity(ctx: GroupContext) -> Self {
        GroupElement::new_unchecked(ctx, QMatrix::identity(ctx.dim()))
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.m
    }

    pub fn form_residual(&self) -> f64 {
        form_residual(&self.ctx, &self.m)
    }

    /// Block accessors per the (a, b; c, d) layout.
    pub fn block_a(&self) -> QMatrix {
        let n = self.ctx.n;
        QMatrix::from_fn(n, n, |i, j| self.m[(i, j)])
    }

    pub fn block_b(&self) -> Vec<Quaternion> {
        let n = self.ctx.n;
        (0..n).map(|i| self.m[(i, n)]).collect()
    }

    pub fn block_c(&self) -> Vec<Quaternion> {
        let n = self.ctx.n;
        (0..n).map(|j| self.m[(n, j)]).collect()
    }

    pub fn block_d(&self) -> Quaternion {
        let n = self.ctx.n;
        self.m[(n, n)]
    }

    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        GroupElement::new_unchecked(self.ctx, self.m.mul(&other.m).expect("same dimension"))
    }

    /// Exact inverse `J g* J` from the form invariant.
    pub fn inverse(&self) -> GroupElement {
        let n = self.ctx.n;
        let dag = self.m.dagger();
        let m = QMatrix::from_fn(n + 1, n + 1, |i, j| {
            let sign = if (i == n) ^ (j == n) { -1.0 } else { 1.0 };
            dag[(i, j)].scale(sign)
        });
        GroupElement::new_unchecked(self.ctx, m)
    }

    /// Image of the origin under the ball action: `b d^{-1}`.
    pub fn dot_zero(&self) -> Vec<Quaternion> {
        let dinv = self.block_d().inv();
        self.block_b().iter().map(|&bi| bi * dinv).collect()
    }
}

/// The radial flow element a_t.
pub fn make_at(ctx: GroupContext, t: f64) -> GroupElement {
    let n = ctx.n;
    let mut m = QMatrix::identity(n + 1);
    m[(0, 0)] = Quaternion::real(t.cosh());
    m[(0, n)] = Quaternion::real(t.sinh());
    m[(n, 0)] = Quaternion::real(t.sinh());
    m[(n, n)] = Quaternion::real(t.cosh());
    GroupElement::new_unchecked(ctx, m)
}

/// Element of K = Sp(n) x Sp(1).
#[derive(Debug, Clone, PartialEq)]
pub struct KElement {
    pub u: QMatrix,
    pub q: Quaternion,
}

impl KElement {
    pub fn new(u: QMatrix, q: Quaternion) -> Result<Self, GroupError> {
        let n = u.rows();
        let resid = u
            .dagger()
            .mul(&u)?
            .sub(&QMatrix::identity(n))
            .max_norm()
            .max((q.norm() - 1.0).abs());
        if resid > 1e-6 {
            return Err(GroupError::NotUnitary(resid));
        }
        Ok(KElement { u, q })
    }

    pub fn identity(n: usize) -> Self {
        KElement {
            u: QMatrix::identity(n),
            q: Quaternion::ONE,
        }
    }

    /// Embedding diag(u, q) into the group.
    pub fn embed(&self, ctx: GroupContext) -> GroupElement {
        let n = ctx.n;
        debug_assert_eq!(self.u.rows(), n);
        let mut m = QMatrix::zeros(n + 1, n + 1);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.u[(i, j)];
            }
        }
        m[(n, n)] = self.q;
        GroupElement::new_unchecked(ctx, m)
    }

    pub fn mul(&self, other: &KElement) -> KElement {
        KElement {
            u: self.u.mul(&other.u).expect("same n"),
            q: self.q * other.q,
        }
    }

    pub fn inverse(&self) -> KElement {
        KElement {
            u: self.u.dagger(),
            q: self.q.conj(),
        }
    }
}

/// Haar sample of K: Sp(n) by Ginibre + Gram-Schmidt, Sp(1) by a normalized
/// Gaussian 4-vector. Streams 0 and 1 of the given stream pair.
pub fn haar_k(ctx: GroupContext, streams: &(SampleStream, SampleStream), i: u64) -> KElement {
    KElement {
        u: crate::numerics::haar_spn(&streams.0, ctx.n, i),
        q: crate::numerics::haar_sp1(&streams.1, i),
    }
}

/// Haar sample of M (the centralizer of the flow in K): block shape
/// diag(q, m', q) with m' in Sp(n-1).
pub fn haar_m(ctx: GroupContext, streams: &(SampleStream, SampleStream), i: u64) -> KElement {
    let n = ctx.n;
    let q = crate::numerics::haar_sp1(&streams.1, i);
    let mut u = QMatrix::zeros(n, n);
    u[(0, 0)] = q;
    if n > 1 {
        let mp = crate::numerics::haar_spn(&streams.0, n - 1, i);
        for r in 0..n - 1 {
            for c in 0..n - 1 {
                u[(r + 1, c + 1)] = mp[(r, c)];
            }
        }
    }
    KElement { u, q }
}

/// Iwasawa data: `H(g) = log |c e_1 + d|` and the Sp(1)-part of kappa(g).
#[derive(Debug, Clone, PartialEq)]
pub struct IwasawaData {
    pub h: f64,
    pub vkappa: Quaternion,
}

pub fn iwasawa(g: &GroupElement) -> IwasawaData {
    let n = g.ctx.n;
    let ce1d = g.m[(n, 0)] + g.m[(n, n)];
    let norm = ce1d.norm();
    IwasawaData {
        h: norm.ln(),
        vkappa: ce1d.scale(1.0 / norm),
    }
}

/// Cartan data: radius `t = arccosh |d|`, the Sp(1)-part `w = d/|d|` of
/// k1 k2, and (for t above the degeneracy threshold) full K-components in
/// the gauge `k2.q = 1`, `k1.q = w`.
#[derive(Debug, Clone)]
pub struct CartanData {
    pub t: f64,
    pub w: Quaternion,
    pub k1: Option<KElement>,
    pub k2: Option<KElement>,
}

impl CartanData {
    pub fn full_components(&self) -> Result<(&KElement, &KElement), GroupError> {
        match (&self.k1, &self.k2) {
            (Some(k1), Some(k2)) => Ok((k1, k2)),
            _ => Err(GroupError::DegenerateRadius(self.t)),
        }
    }
}

/// Radii below this get no K-components: the division by sinh t is
/// ill-conditioned and the element is treated as lying in K.
pub const CARTAN_T_MIN: f64 = 1e-6;

pub fn cartan(g: &GroupElement) -> CartanData {
    let n = g.ctx.n;
    let d = g.block_d();
    let dn = d.norm().max(1.0);
    let t = dn.acosh();
    let w = d.scale(1.0 / d.norm());
    if t < CARTAN_T_MIN {
        return CartanData {
            t,
            w,
            k1: None,
            k2: None,
        };
    }
    let sh = t.sinh();
    let ch = t.cosh();
    let b = g.block_b();
    let col0: Vec<Quaternion> = b.iter().map(|&bi| bi.scale(1.0 / sh)).collect();
    // complete col0 to a basis with standard vectors, skipping the index of
    // its largest component
    let skip = col0
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().partial_cmp(&b.1.norm()).unwrap())
        .map(|(i, _)| i)
        .unwrap_or(0);
    let mut cand = QMatrix::zeros(n, n);
    for i in 0..n {
        cand[(i, 0)] = col0[i];
    }
    let mut col = 1;
    for j in 0..n {
        if j == skip {
            continue;
        }
        cand[(j, col)] = Quaternion::ONE;
        col += 1;
    }
    let u1 = cand
        .gram_schmidt_sp()
        .expect("first column is unit, completion independent");
    // u2 from the top-left block: a = u1 diag(cosh t, 1, ..) u2
    let u1a = u1.dagger().mul(&g.block_a()).expect("n x n");
    let u2 = QMatrix::from_fn(n, n, |i, j| {
        if i == 0 {
            u1a[(i, j)].scale(1.0 / ch)
        } else {
            u1a[(i, j)]
        }
    });
    CartanData {
        t,
        w,
        k1: KElement::new(u1, w).ok(),
        k2: KElement::new(u2, Quaternion::ONE).ok(),
    }
}

/// Fractional-linear ball action `x -> (a x + b)(c x + d)^{-1}` on the unit
/// ball of H^n.
pub fn ball_action(g: &GroupElement, x: &[Quaternion]) -> Vec<Quaternion> {
    let n = g.ctx.n;
    debug_assert_eq!(x.len(), n);
    let ax = g.block_a().mul_vec(x).expect("length n");
    let b = g.block_b();
    let c = g.block_c();
    let mut cxd = g.block_d();
    for i in 0..n {
        cxd = cxd + c[i] * x[i];
    }
    let inv = cxd.inv();
    (0..n).map(|i| (ax[i] + b[i]) * inv).collect()
}

pub fn point_norm(x: &[Quaternion]) -> f64 {
    x.iter().map(|q| q.norm_sq()).sum::<f64>().sqrt()
}

/// The Iwasawa-vs-Cartan gap `A+(y) - H(y)` for `y = g^{-1} k a_t`;
/// nonnegative and bounded by `(1+|g.0|)/(1-|g.0|) e^{-2t}`.
pub fn gap(g: &GroupElement, k: &KElement, t: f64) -> f64 {
    let y = g.inverse().mul(&k.embed(g.ctx)).mul(&make_at(g.ctx, t));
    let aplus = y.block_d().norm().max(1.0).acosh();
    let h = iwasawa(&y).h;
    aplus - h
}
