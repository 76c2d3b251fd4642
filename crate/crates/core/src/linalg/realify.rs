//! Realification of (conjugate-)linear maps between matrix spaces.
//!
//! A complex `m x n` matrix is identified with the real vector of length `2mn`
//! obtained by writing each entry as `(re, im)`, row-major. Any real-linear map
//! (in particular conjugate-linear ones such as `Q(a)`) then has a single real
//! matrix.

use super::jacobi;
use super::matrix::{ComplexMatrix, C64};
use super::subspace::Subspace;
use super::TAU_RANK;
use crate::error::{Error, Result};

/// Dense real matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct RealMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn from_columns(rows: usize, columns: &[Vec<f64>]) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn columns(&self) -> Vec<Vec<f64>> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j)).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let (m, k, n) = (self.rows, self.cols, rhs.cols);
        let mut out = vec![0.0; m * n];
        for i in 0..m {
            for l in 0..k {
                let a = self.data[i * k + l];
                if a == 0.0 {
                    continue;
                }
                let src = &rhs.data[l * n..(l + 1) * n];
                for (d, &b) in out[i * n..(i + 1) * n].iter_mut().zip(src) {
                    *d += a * b;
                }
            }
        }
        Self {
            rows: m,
            cols: n,
            data: out,
        }
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(x)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn zip_with(&self, rhs: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Largest singular value.
    pub fn norm(&self) -> f64 {
        jacobi::real_singular_values(self)
            .first()
            .copied()
            .unwrap_or(0.0)
    }

    /// Frobenius norm, a cheap upper bound for the operator norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, a| m.max(a.abs()))
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(parts: &[&RealMatrix]) -> Self {
        let cols = parts.first().map_or(0, |p| p.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "column counts differ");
            data.extend_from_slice(&p.data);
            rows += p.rows;
        }
        Self { rows, cols, data }
    }
}

pub fn realify(x: &ComplexMatrix) -> Vec<f64> {
    x.data().iter().flat_map(|z| [z.re, z.im]).collect()
}

pub fn derealify(v: &[f64], shape: (usize, usize)) -> ComplexMatrix {
    assert_eq!(v.len(), 2 * shape.0 * shape.1);
    ComplexMatrix::from_fn(shape.0, shape.1, |i, j| {
        let k = 2 * (i * shape.1 + j);
        C64::new(v[k], v[k + 1])
    })
}

/// The `k`-th element of the canonical real basis of `shape`-matrices:
/// `E_ij` for even `k`, `i E_ij` for odd `k`, with `(i, j)` from `k / 2`.
pub fn real_basis_element(shape: (usize, usize), k: usize) -> ComplexMatrix {
    let mut x = ComplexMatrix::zeros(shape.0, shape.1);
    let idx = k / 2;
    x.data_mut()[idx] = if k.is_multiple_of(2) {
        C64::new(1.0, 0.0)
    } else {
        C64::new(0.0, 1.0)
    };
    x
}

/// A real-linear map between spaces of complex matrices, stored as its real matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct RealifiedMap {
    pub matrix: RealMatrix,
    pub domain_shape: (usize, usize),
    pub codomain_shape: (usize, usize),
}

impl RealifiedMap {
    /// Materialises `f` by evaluating it on the canonical real basis.
    pub fn from_fn(
        domain_shape: (usize, usize),
        codomain_shape: (usize, usize),
        f: impl Fn(&ComplexMatrix) -> ComplexMatrix,
    ) -> Self {
        let d = 2 * domain_shape.0 * domain_shape.1;
        let r = 2 * codomain_shape.0 * codomain_shape.1;
        let columns: Vec<Vec<f64>> = (0..d)
            .map(|k| {
                let y = f(&real_basis_element(domain_shape, k));
                debug_assert_eq!(y.shape(), codomain_shape);
                realify(&y)
            })
            .collect();
        Self {
            matrix: RealMatrix::from_columns(r, &columns),
            domain_shape,
            codomain_shape,
        }
    }

    pub fn identity(shape: (usize, usize)) -> Self {
        Self {
            matrix: RealMatrix::identity(2 * shape.0 * shape.1),
            domain_shape: shape,
            codomain_shape: shape,
        }
    }

    pub fn zero(domain_shape: (usize, usize), codomain_shape: (usize, usize)) -> Self {
        Self {
            matrix: RealMatrix::zeros(
                2 * codomain_shape.0 * codomain_shape.1,
                2 * domain_shape.0 * domain_shape.1,
            ),
            domain_shape,
            codomain_shape,
        }
    }

    /// Multiplication by the complex scalar `lambda` on `shape`-matrices.
    pub fn complex_scalar(shape: (usize, usize), lambda: C64) -> Self {
        let d = 2 * shape.0 * shape.1;
        let matrix = RealMatrix::from_fn(d, d, |i, j| {
            if i / 2 != j / 2 {
                return 0.0;
            }
            match (i % 2, j % 2) {
                (0, 0) | (1, 1) => lambda.re,
                (0, 1) => -lambda.im,
                _ => lambda.im,
            }
        });
        Self {
            matrix,
            domain_shape: shape,
            codomain_shape: shape,
        }
    }

    pub fn apply(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        x.check_shape(self.domain_shape)?;
        Ok(derealify(
            &self.matrix.matvec(&realify(x)),
            self.codomain_shape,
        ))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &RealifiedMap) -> Result<RealifiedMap> {
        if inner.codomain_shape != self.domain_shape {
            return Err(Error::ShapeMismatch {
                expected: self.domain_shape,
                got: inner.codomain_shape,
            });
        }
        Ok(Self {
            matrix: self.matrix.matmul(&inner.matrix),
            domain_shape: inner.domain_shape,
            codomain_shape: self.codomain_shape,
        })
    }

    fn check_same(&self, other: &RealifiedMap) -> Result<()> {
        if self.domain_shape != other.domain_shape || self.codomain_shape != other.codomain_shape {
            return Err(Error::ShapeMismatch {
                expected: self.domain_shape,
                got: other.domain_shape,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &RealifiedMap) -> Result<RealifiedMap> {
        self.check_same(other)?;
        Ok(Self {
            matrix: self.matrix.zip_with(&other.matrix, |a, b| a + b),
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &RealifiedMap) -> Result<RealifiedMap> {
        self.check_same(other)?;
        Ok(Self {
            matrix: self.matrix.zip_with(&other.matrix, |a, b| a - b),
            ..self.clone()
        })
    }

    pub fn scale(&self, s: f64) -> RealifiedMap {
        Self {
            matrix: self.matrix.scale(s),
            ..self.clone()
        }
    }

    /// Operator norm of the real matrix (Hilbert-Schmidt geometry on both sides).
    pub fn norm(&self) -> f64 {
        self.matrix.norm()
    }

    /// Distance to `other` in operator norm.
    pub fn distance(&self, other: &RealifiedMap) -> Result<f64> {
        Ok(self.sub(other)?.norm())
    }

    /// Real dimension of the image under the rank tolerance.
    pub fn rank(&self) -> usize {
        let s = jacobi::real_singular_values(&self.matrix);
        let cut = TAU_RANK * s.first().copied().unwrap_or(0.0);
        s.iter().filter(|&&x| x > cut).count()
    }

    /// `{v : ||f(v)|| <= tol ||f|| ||v||}` as an orthonormal subspace.
    pub fn kernel(&self, tol: f64) -> Result<Subspace> {
        let (s, v) = jacobi::real_right_svd(&self.matrix)?;
        let smax = s.first().copied().unwrap_or(0.0);
        let basis: Vec<ComplexMatrix> = v
            .iter()
            .enumerate()
            .filter(|(k, _)| s.get(*k).copied().unwrap_or(0.0) <= tol * smax)
            .map(|(_, col)| derealify(col, self.domain_shape))
            .collect();
        Ok(Subspace::from_orthonormal_unchecked(
            self.domain_shape,
            basis,
            tol,
        ))
    }

    /// Orthonormal basis of the image, keeping singular values above `tol * sigma_max`.
    pub fn image(&self, tol: f64) -> Result<Subspace> {
        let (u, s, _) = jacobi::real_svd(&self.matrix)?;
        let smax = s.first().copied().unwrap_or(0.0);
        Ok(self.image_from(&u, &s, tol * smax, tol))
    }

    /// Image keeping singular values above the absolute `cut`. Suited to
    /// projections, whose singular values are 0 or 1 up to rounding.
    pub fn image_above(&self, cut: f64) -> Result<Subspace> {
        let (u, s, _) = jacobi::real_svd(&self.matrix)?;
        Ok(self.image_from(&u, &s, cut, cut))
    }

    fn image_from(&self, u: &[Vec<f64>], s: &[f64], cut: f64, tol: f64) -> Subspace {
        let basis: Vec<ComplexMatrix> = s
            .iter()
            .enumerate()
            .filter(|(_, &x)| x > cut && x > 0.0)
            .map(|(k, _)| derealify(&u[k], self.codomain_shape))
            .collect();
        Subspace::from_orthonormal_unchecked(self.codomain_shape, basis, tol)
    }

    /// Stacks maps sharing a domain into one map whose kernel is the
    /// intersection of their kernels. The codomain is flattened to a column.
    pub fn stack(maps: &[RealifiedMap]) -> Result<RealifiedMap> {
        let first = maps
            .first()
            .ok_or_else(|| Error::InvalidMatrix("cannot stack an empty list of maps".into()))?;
        for m in maps {
            if m.domain_shape != first.domain_shape {
                return Err(Error::ShapeMismatch {
                    expected: first.domain_shape,
                    got: m.domain_shape,
                });
            }
        }
        let parts: Vec<&RealMatrix> = maps.iter().map(|m| &m.matrix).collect();
        let matrix = RealMatrix::vstack(&parts);
        let out = matrix.rows() / 2;
        Ok(Self {
            matrix,
            domain_shape: first.domain_shape,
            codomain_shape: (out, 1),
        })
    }
}

/// Free-function form of [`RealifiedMap::kernel`].
pub fn kernel(f: &RealifiedMap, tol: f64) -> Result<Subspace> {
    f.kernel(tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn realification_is_interleaved_row_major() {
        let x = ComplexMatrix::new(1, 2, vec![C64::new(1.0, 2.0), C64::new(3.0, 4.0)]).unwrap();
        assert_eq!(realify(&x), vec![1.0, 2.0, 3.0, 4.0]);
        assert_eq!(derealify(&[1.0, 2.0, 3.0, 4.0], (1, 2)), x);
    }

    #[test]
    fn conjugation_has_a_real_matrix() {
        let f = RealifiedMap::from_fn((1, 1), (1, 1), |x| x.conj());
        assert_eq!(
            f.matrix,
            RealMatrix::from_fn(2, 2, |i, j| match (i, j) {
                (0, 0) => 1.0,
                (1, 1) => -1.0,
                _ => 0.0,
            })
        );
        let z = ComplexMatrix::new(1, 1, vec![C64::new(0.5, -2.0)]).unwrap();
        assert_eq!(f.apply(&z).unwrap(), z.conj());
    }

    #[test]
    fn kernel_examples() {
        let shape = (2, 2);
        let zero = RealifiedMap::zero(shape, shape);
        assert_eq!(zero.kernel(TAU_RANK).unwrap().complex_dim(), Some(4));

        let id = RealifiedMap::identity(shape);
        assert_eq!(id.kernel(TAU_RANK).unwrap().dim(), 0);

        // left multiplication by E11 kills exactly the second row
        let e11 = ComplexMatrix::unit(2, 2, 0, 0);
        let left = RealifiedMap::from_fn(shape, shape, |x| &e11 * x);
        let k = left.kernel(TAU_RANK).unwrap();
        assert_eq!(k.dim(), 4);
        let expected = Subspace::complex_span(
            shape,
            &[
                ComplexMatrix::unit(2, 2, 1, 0),
                ComplexMatrix::unit(2, 2, 1, 1),
            ],
            TAU_RANK,
        )
        .unwrap();
        assert!(k.same_as(&expected, 1e-12));
    }

    #[test]
    fn complex_scalar_matches_multiplication() {
        let lambda = C64::new(0.6, 0.8);
        let f = RealifiedMap::complex_scalar((2, 1), lambda);
        let x = ComplexMatrix::new(2, 1, vec![C64::new(1.0, -1.0), C64::new(0.0, 2.0)]).unwrap();
        let y = f.apply(&x).unwrap();
        assert!((&y - &x.scale(lambda)).max_abs() < 1e-15);
    }
}
