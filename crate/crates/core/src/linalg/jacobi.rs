//! Jacobi-type dense decompositions.
//!
//! Singular values come from one-sided (Hestenes) Jacobi, eigenvalues of
//! Hermitian matrices from two-sided cyclic Jacobi. Both are written once over
//! [`Scalar`] so the complex element arithmetic and the real arithmetic of
//! realified maps share one implementation. At the sizes this crate targets
//! (at most a few dozen rows) Jacobi is both fast enough and accurate to a
//! small multiple of machine precision relative to the largest singular value.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, C64};
use super::realify::RealMatrix;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 80;

pub trait Scalar:
    Copy
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn conj(self) -> Self;
    fn abs2(self) -> f64;
    fn scale(self, s: f64) -> Self;
    /// Unit-modulus factor `z / |z|` (`1` for zero).
    fn phase(self) -> Self;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn conj(self) -> Self {
        self
    }
    fn abs2(self) -> f64 {
        self * self
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn phase(self) -> Self {
        if self < 0.0 {
            -1.0
        } else {
            1.0
        }
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn abs2(self) -> f64 {
        self.norm_sqr()
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn phase(self) -> Self {
        let r = self.norm();
        if r == 0.0 {
            Self::one()
        } else {
            self / r
        }
    }
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (&x, &y)| acc + x.conj() * y)
}

fn norm2<T: Scalar>(a: &[T]) -> f64 {
    a.iter().map(|x| x.abs2()).sum()
}

/// Orthogonalises `cols` in place; rotations are mirrored on `right` when
/// given. On return the columns are mutually orthogonal to working precision.
fn hestenes<T: Scalar>(cols: &mut [Vec<T>], mut right: Option<&mut [Vec<T>]>) -> Result<()> {
    let n = cols.len();
    if n < 2 {
        return Ok(());
    }
    let len = cols[0].len().max(1) as f64;
    let threshold = f64::EPSILON * len.sqrt();
    // columns at rounding level relative to the whole matrix are treated as
    // zero; rotating them against large columns only reshuffles noise
    let total: f64 = cols.iter().map(|c| norm2(c)).sum();
    let floor = total * f64::EPSILON * f64::EPSILON;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let alpha = norm2(&cols[p]);
                let beta = norm2(&cols[q]);
                if alpha <= floor || beta <= floor {
                    continue;
                }
                let gamma = dot(&cols[p], &cols[q]);
                let g = gamma.abs2().sqrt();
                if g <= threshold * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let ph = gamma.phase().conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(cols, p, q, ph, c, s);
                if let Some(v) = right.as_deref_mut() {
                    rotate(v, p, q, ph, c, s);
                }
            }
        }
        if !rotated {
            return Ok(());
        }
    }
    Err(Error::ConvergenceFailure {
        algorithm: "one-sided Jacobi SVD",
        sweeps: MAX_SWEEPS,
    })
}

#[inline]
fn rotate<T: Scalar>(cols: &mut [Vec<T>], p: usize, q: usize, ph: T, c: f64, s: f64) {
    let (lo, hi) = cols.split_at_mut(q);
    let cp = &mut lo[p];
    let cq = &mut hi[0];
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let a = *x;
        let b = ph * *y;
        *x = a.scale(c) - b.scale(s);
        *y = a.scale(s) + b.scale(c);
    }
}

/// Extends orthonormal `basis` (vectors of length `dim`) to `dim` vectors.
fn complete_basis<T: Scalar>(basis: &mut Vec<Vec<T>>, dim: usize) {
    let mut k = 0;
    while basis.len() < dim && k < dim {
        let mut v = vec![T::zero(); dim];
        v[k] = T::one();
        k += 1;
        for _ in 0..2 {
            for b in basis.iter() {
                let c = dot(b, &v);
                for (vi, &bi) in v.iter_mut().zip(b) {
                    *vi = *vi - bi * c;
                }
            }
        }
        let nrm = norm2(&v).sqrt();
        if nrm > 0.5 {
            basis.push(v.into_iter().map(|x| x.scale(1.0 / nrm)).collect());
        }
    }
}

/// `(left columns, sigma, right columns)` on column storage.
pub type Factors<T> = (Vec<Vec<T>>, Vec<f64>, Vec<Vec<T>>);

/// Raw SVD on column storage: returns `(left columns (m), sigma, right columns (n))`
/// for an `m x n` input with `m >= n`.
fn svd_tall<T: Scalar>(rows: usize, mut cols: Vec<Vec<T>>) -> Result<Factors<T>> {
    let n = cols.len();
    debug_assert!(rows >= n);
    let mut v: Vec<Vec<T>> = (0..n)
        .map(|j| {
            let mut e = vec![T::zero(); n];
            e[j] = T::one();
            e
        })
        .collect();
    hestenes(&mut cols, Some(&mut v))?;
    let norms: Vec<f64> = cols.iter().map(|c| norm2(c).sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| norms[b].total_cmp(&norms[a]));
    // below the rotation floor in `hestenes` columns were never orthogonalised
    let frobenius = norms.iter().map(|x| x * x).sum::<f64>().sqrt();
    let cutoff = 2.0 * frobenius * f64::EPSILON;
    let mut left = Vec::with_capacity(rows);
    let mut sigma = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    for &j in &order {
        sigma.push(norms[j]);
        right.push(v[j].clone());
        if norms[j] > cutoff && norms[j] > 0.0 {
            left.push(cols[j].iter().map(|&x| x.scale(1.0 / norms[j])).collect());
        }
    }
    complete_basis(&mut left, rows);
    Ok((left, sigma, right))
}

fn complex_columns(a: &ComplexMatrix) -> Vec<Vec<C64>> {
    (0..a.cols()).map(|j| a.column(j)).collect()
}

/// Singular value decomposition `a = left * diag(singular) * right^*`.
#[derive(Debug, Clone)]
pub struct SvdResult {
    pub left: ComplexMatrix,
    pub singular: Vec<f64>,
    pub right: ComplexMatrix,
}

impl SvdResult {
    /// `left * diag(singular) * right^*` at the original shape.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.recombine(|s| s)
    }

    /// Recombines the factors with `f` applied to each singular value.
    pub fn recombine(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let (m, n) = (self.left.rows(), self.right.rows());
        let k = self.singular.len();
        let fs: Vec<f64> = self.singular.iter().map(|&s| f(s)).collect();
        ComplexMatrix::from_fn(m, n, |i, j| {
            (0..k)
                .filter(|&l| fs[l] != 0.0)
                .map(|l| self.left[(i, l)] * fs[l] * self.right[(j, l)].conj())
                .sum()
        })
    }

    pub fn max_singular(&self) -> f64 {
        self.singular.first().copied().unwrap_or(0.0)
    }

    /// Number of singular values above `tau * sigma_max`.
    pub fn rank(&self, tau: f64) -> usize {
        let cut = tau * self.max_singular();
        self.singular.iter().filter(|&&s| s > cut).count()
    }
}

/// Full SVD of a complex matrix. `tol` is accepted for contract symmetry; the
/// Jacobi iteration always runs to working precision.
pub fn svd(a: &ComplexMatrix, _tol: f64) -> Result<SvdResult> {
    let (m, n) = a.shape();
    if m >= n {
        let (left, singular, right) = svd_tall(m, complex_columns(a))?;
        Ok(SvdResult {
            left: ComplexMatrix::from_columns(m, &left),
            singular,
            right: ComplexMatrix::from_columns(n, &right),
        })
    } else {
        let t = svd(&a.adjoint(), _tol)?;
        Ok(SvdResult {
            left: t.right,
            singular: t.singular,
            right: t.left,
        })
    }
}

/// Singular values only, non-increasing, `min(rows, cols)` of them.
pub fn singular_values(a: &ComplexMatrix) -> Vec<f64> {
    let mut cols = if a.rows() >= a.cols() {
        complex_columns(a)
    } else {
        complex_columns(&a.adjoint())
    };
    // Non-convergence would mean a pathological input; values after the
    // last sweep are still accurate enough for norm estimates.
    let _ = hestenes::<C64>(&mut cols, None);
    let mut s: Vec<f64> = cols.iter().map(|c| norm2(c).sqrt()).collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Real SVD of a real matrix: `(left columns, sigma, right columns)`.
/// `left` holds `rows` orthonormal columns; `sigma` has `min(rows, cols)` entries.
pub fn real_svd(a: &RealMatrix) -> Result<Factors<f64>> {
    let (m, n) = (a.rows(), a.cols());
    if m >= n {
        svd_tall(m, a.columns())
    } else {
        let (l, s, r) = svd_tall(n, a.transpose().columns())?;
        Ok((r, s, l))
    }
}

/// Singular values and a complete set of right singular vectors of a real
/// matrix. Tall inputs are first reduced to their `R` factor.
pub fn real_right_svd(a: &RealMatrix) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let (m, n) = (a.rows(), a.cols());
    let reduced = if m > n { householder_r(a) } else { a.clone() };
    let (rm, _) = (reduced.rows(), reduced.cols());
    let (s, v) = if rm >= n {
        let (_, s, v) = svd_tall(rm, reduced.columns())?;
        (s, v)
    } else {
        // wide: right vectors are the left vectors of the transpose
        let (l, s, _) = svd_tall(n, reduced.transpose().columns())?;
        let mut s = s;
        s.resize(n, 0.0);
        (s, l)
    };
    Ok((s, v))
}

pub fn real_singular_values(a: &RealMatrix) -> Vec<f64> {
    let reduced = if a.rows() > a.cols() {
        householder_r(a)
    } else {
        a.clone()
    };
    let mut cols = if reduced.rows() >= reduced.cols() {
        reduced.columns()
    } else {
        reduced.transpose().columns()
    };
    let _ = hestenes::<f64>(&mut cols, None);
    let mut s: Vec<f64> = cols.iter().map(|c| norm2(c).sqrt()).collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// The `n x n` upper-triangular factor of a Householder QR of a tall matrix.
fn householder_r(a: &RealMatrix) -> RealMatrix {
    let (m, n) = (a.rows(), a.cols());
    let mut cols = a.columns();
    for k in 0..n.min(m) {
        let x = &cols[k][k..];
        let alpha = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if alpha == 0.0 {
            continue;
        }
        let sign = if x[0] >= 0.0 { 1.0 } else { -1.0 };
        let mut v: Vec<f64> = x.to_vec();
        v[0] += sign * alpha;
        let vnorm2: f64 = v.iter().map(|t| t * t).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        for col in cols.iter_mut().skip(k) {
            let tail = &mut col[k..];
            let proj: f64 = v.iter().zip(tail.iter()).map(|(a, b)| a * b).sum();
            let f = 2.0 * proj / vnorm2;
            for (t, vi) in tail.iter_mut().zip(&v) {
                *t -= f * vi;
            }
        }
    }
    RealMatrix::from_fn(n, n, |i, j| if i <= j { cols[j][i] } else { 0.0 })
}

/// Eigendecomposition of a Hermitian matrix: eigenvalues non-increasing and
/// the unitary matrix whose columns are the matching eigenvectors.
pub fn hermitian_eigen(a: &ComplexMatrix, tol: f64) -> Result<(Vec<f64>, ComplexMatrix)> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch {
            expected: (a.rows(), a.rows()),
            got: a.shape(),
        });
    }
    let residual = a.hermitian_residual();
    if residual > tol * (1.0 + a.norm()) {
        return Err(Error::NotHermitian { residual });
    }
    let n = a.rows();
    let h = a.hermitian_part();
    let mut w: Vec<C64> = h.data().to_vec();
    let mut v: Vec<C64> = ComplexMatrix::identity(n).into_data();
    let fro = h.frobenius_norm();
    if fro == 0.0 || n == 1 {
        let vals = (0..n).map(|i| w[i * n + i].re).collect();
        return Ok((vals, ComplexMatrix::identity(n)));
    }
    let skip = f64::EPSILON * fro / n as f64;
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let gamma = w[p * n + q];
                let g = gamma.norm();
                if g <= skip {
                    continue;
                }
                rotated = true;
                let u = gamma / g;
                let ub = u.conj();
                let theta = (w[q * n + q].re - w[p * n + p].re) / (2.0 * g);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // W <- W G with G = [[c, s], [-s conj(u), c conj(u)]]
                for i in 0..n {
                    let x = w[i * n + p];
                    let y = w[i * n + q];
                    w[i * n + p] = x * c - y * ub * s;
                    w[i * n + q] = x * s + y * ub * c;
                    let x = v[i * n + p];
                    let y = v[i * n + q];
                    v[i * n + p] = x * c - y * ub * s;
                    v[i * n + q] = x * s + y * ub * c;
                }
                // W <- G^* W
                for j in 0..n {
                    let x = w[p * n + j];
                    let y = w[q * n + j];
                    w[p * n + j] = x * c - y * u * s;
                    w[q * n + j] = x * s + y * u * c;
                }
                w[p * n + q] = C64::new(0.0, 0.0);
                w[q * n + p] = C64::new(0.0, 0.0);
                w[p * n + p] = C64::new(w[p * n + p].re, 0.0);
                w[q * n + q] = C64::new(w[q * n + q].re, 0.0);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::ConvergenceFailure {
            algorithm: "Hermitian Jacobi",
            sweeps: MAX_SWEEPS,
        });
    }
    let diag: Vec<f64> = (0..n).map(|i| w[i * n + i].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| diag[b].total_cmp(&diag[a]));
    let values = order.iter().map(|&i| diag[i]).collect();
    let vecs = ComplexMatrix::from_fn(n, n, |i, j| v[i * n + order[j]]);
    Ok((values, vecs))
}
