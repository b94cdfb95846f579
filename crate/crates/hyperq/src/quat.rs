//! Quaternion scalars and quaternionic matrices.
//!
//! `H^(n+1)` is treated as a right H-module throughout: scalars act on
//! vector entries from the right, so matrix products compose as usual while
//! entry products keep their order. Getting this convention wrong silently
//! breaks group closure downstream, which is why `mul_vec` and
//! `gram_schmidt_sp` are explicit about operand order.

use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuatError {
    #[error("dimension mismatch: ({0}x{1}) * ({2}x{3})")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("matrix must be square, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("rank deficiency in column {col}: pivot norm {pivot:e}")]
    RankDeficient { col: usize, pivot: f64 },
}

/// A quaternion `w + x i + y j + z k` with f64 coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn real(w: f64) -> Self {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sq(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Multiplicative inverse `conj(q) / |q|^2`. Must not be called on zero.
    pub fn inv(self) -> Self {
        let n2 = self.norm_sq();
        debug_assert!(n2 > 0.0, "inverse of zero quaternion");
        self.conj().scale(1.0 / n2)
    }

    pub fn scale(self, s: f64) -> Self {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    pub fn normalized(self) -> Self {
        self.scale(1.0 / self.norm())
    }

    pub fn is_unit(self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    pub fn re(self) -> f64 {
        self.w
    }

    pub fn dist(self, other: Quaternion) -> f64 {
        (self - other).norm()
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product; non-commutative.
impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, o: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

/// Dense quaternionic matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Quaternion>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            entries: vec![Quaternion::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Quaternion::ONE;
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Quaternion,
    ) -> Self {
        let mut m = QMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix, QuatError> {
        if self.cols != other.rows {
            return Err(QuatError::DimensionMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut s = Quaternion::ZERO;
                for k in 0..self.cols {
                    s = s + self[(i, k)] * other[(k, j)];
                }
                out[(i, j)] = s;
            }
        }
        Ok(out)
    }

    /// Matrix-vector product; scalar entries of `v` act on the right.
    pub fn mul_vec(&self, v: &[Quaternion]) -> Result<Vec<Quaternion>, QuatError> {
        if self.cols != v.len() {
            return Err(QuatError::DimensionMismatch(
                self.rows,
                self.cols,
                v.len(),
                1,
            ));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut s = Quaternion::ZERO;
                for k in 0..self.cols {
                    s = s + self[(i, k)] * v[k];
                }
                s
            })
            .collect())
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> QMatrix {
        QMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }

    /// Maximum entry norm.
    pub fn max_norm(&self) -> f64 {
        self.entries.iter().map(|q| q.norm()).fold(0.0, f64::max)
    }

    pub fn col(&self, j: usize) -> Vec<Quaternion> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Hermitian inner product of columns `<u, v> = sum_k conj(u_k) v_k`.
    fn col_inner(u: &[Quaternion], v: &[Quaternion]) -> Quaternion {
        let mut s = Quaternion::ZERO;
        for (a, b) in u.iter().zip(v) {
            s = s + a.conj() * *b;
        }
        s
    }

    /// Gram-Schmidt orthonormalization of the columns over H.
    ///
    /// Returns `U` with `U* U = I`; the first column of `U` is the normalized
    /// first column of the input. Projection coefficients multiply from the
    /// right so the span is taken in the right-module sense. Two projection
    /// passes per column keep the residual near machine precision.
    pub fn gram_schmidt_sp(&self) -> Result<QMatrix, QuatError> {
        if self.rows != self.cols {
            return Err(QuatError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let scale = self.max_norm().max(1.0);
        let mut basis: Vec<Vec<Quaternion>> = Vec::with_capacity(n);
        for j in 0..n {
            let mut v = self.col(j);
            for _pass in 0..2 {
                for u in &basis {
                    let coef = Self::col_inner(u, &v);
                    for (vk, uk) in v.iter_mut().zip(u) {
                        *vk = *vk - *uk * coef;
                    }
                }
            }
            let pivot = Self::col_inner(&v, &v).w.sqrt();
            if pivot < 1e-13 * scale {
                return Err(QuatError::RankDeficient { col: j, pivot });
            }
            for vk in v.iter_mut() {
                *vk = vk.scale(1.0 / pivot);
            }
            basis.push(v);
        }
        Ok(QMatrix::from_fn(n, n, |i, j| basis[j][i]))
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Quaternion;
    fn index(&self, (i, j): (usize, usize)) -> &Quaternion {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Quaternion {
        &mut self.entries[i * self.cols + j]
    }
}
