use serde::{Deserialize, Serialize};

use super::jacobi;
use super::matrix::{ComplexMatrix, I};
use super::realify::{derealify, realify, RealMatrix};
use super::TAU_RANK;
use crate::error::{Error, Result};

/// A real subspace of the `shape`-matrices, held as a basis orthonormal for
/// `Re trace(b^* a)`.
///
/// Inner ideals, annihilators and Peirce spaces are complex subspaces; for
/// those the real dimension is even and [`Subspace::complex_dim`] reports half
/// of it.
#[derive(Clone, Debug)]
pub struct Subspace {
    shape: (usize, usize),
    basis: Vec<ComplexMatrix>,
    tol: f64,
}

impl Subspace {
    pub(crate) fn from_orthonormal_unchecked(
        shape: (usize, usize),
        basis: Vec<ComplexMatrix>,
        tol: f64,
    ) -> Self {
        Self { shape, basis, tol }
    }

    /// Wraps `basis` after checking it is orthonormal to within `tol`.
    pub fn from_orthonormal(
        shape: (usize, usize),
        basis: Vec<ComplexMatrix>,
        tol: f64,
    ) -> Result<Self> {
        for b in &basis {
            b.check_shape(shape)?;
        }
        let s = Self { shape, basis, tol };
        let defect = s.gram_defect();
        if defect > tol.max(1e-12) {
            return Err(Error::InvalidMatrix(format!(
                "basis is not orthonormal (Gram defect {defect:.3e})"
            )));
        }
        Ok(s)
    }

    pub fn zero(shape: (usize, usize)) -> Self {
        Self {
            shape,
            basis: Vec::new(),
            tol: TAU_RANK,
        }
    }

    pub fn full(shape: (usize, usize)) -> Self {
        let basis = (0..2 * shape.0 * shape.1)
            .map(|k| super::realify::real_basis_element(shape, k))
            .collect();
        Self {
            shape,
            basis,
            tol: TAU_RANK,
        }
    }

    /// Real span of `elements`; directions below `TAU_RANK` relative are dropped.
    pub fn real_span(shape: (usize, usize), elements: &[ComplexMatrix], tol: f64) -> Result<Self> {
        for e in elements {
            e.check_shape(shape)?;
        }
        if elements.is_empty() {
            return Ok(Self::zero(shape));
        }
        let d = 2 * shape.0 * shape.1;
        let cols: Vec<Vec<f64>> = elements.iter().map(realify).collect();
        let a = RealMatrix::from_columns(d, &cols);
        let (u, s, _) = jacobi::real_svd(&a)?;
        let smax = s.first().copied().unwrap_or(0.0);
        let basis = s
            .iter()
            .enumerate()
            .filter(|(_, &x)| x > TAU_RANK * smax && x > 0.0)
            .map(|(k, _)| derealify(&u[k], shape))
            .collect();
        Ok(Self { shape, basis, tol })
    }

    /// Complex span of `elements`.
    pub fn complex_span(
        shape: (usize, usize),
        elements: &[ComplexMatrix],
        tol: f64,
    ) -> Result<Self> {
        let mut all = Vec::with_capacity(2 * elements.len());
        for e in elements {
            all.push(e.clone());
            all.push(e.scale(I));
        }
        Self::real_span(shape, &all, tol)
    }

    pub fn shape(&self) -> (usize, usize) {
        self.shape
    }

    pub fn basis(&self) -> &[ComplexMatrix] {
        &self.basis
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Real dimension.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Complex dimension when the subspace is closed under multiplication by `i`.
    pub fn complex_dim(&self) -> Option<usize> {
        let closed = self
            .basis
            .iter()
            .all(|b| self.residual(&b.scale(I)) <= 1e-8);
        (closed && self.dim().is_multiple_of(2)).then_some(self.dim() / 2)
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Max entry of `G - I` for the Gram matrix of the basis.
    pub fn gram_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate().skip(i) {
                let g = a.real_inner(b) - if i == j { 1.0 } else { 0.0 };
                worst = worst.max(g.abs());
            }
        }
        worst
    }

    /// Orthogonal projection onto the subspace.
    pub fn project(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.shape.0, self.shape.1);
        for b in &self.basis {
            out += &b.scale_real(x.real_inner(b));
        }
        out
    }

    /// `||x - P x||` in the trace norm.
    pub fn residual(&self, x: &ComplexMatrix) -> f64 {
        (x - &self.project(x)).frobenius_norm()
    }

    /// Relative residual `||x - P x|| / ||x||` (zero for `x = 0`).
    pub fn relative_residual(&self, x: &ComplexMatrix) -> f64 {
        let n = x.frobenius_norm();
        if n == 0.0 {
            0.0
        } else {
            self.residual(x) / n
        }
    }

    pub fn contains(&self, x: &ComplexMatrix, tol: f64) -> bool {
        self.residual(x) <= tol * x.frobenius_norm()
    }

    /// Worst relative residual of `self`'s basis against `other`.
    pub fn inclusion_residual(&self, other: &Subspace) -> f64 {
        self.basis
            .iter()
            .map(|b| other.residual(b))
            .fold(0.0, f64::max)
    }

    pub fn is_subspace_of(&self, other: &Subspace, tol: f64) -> bool {
        self.inclusion_residual(other) <= tol
    }

    pub fn same_as(&self, other: &Subspace, tol: f64) -> bool {
        self.dim() == other.dim()
            && self.is_subspace_of(other, tol)
            && other.is_subspace_of(self, tol)
    }

    /// `self ∩ other`, computed as the kernel of `x ↦ (I - P_other) x` on `self`.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let d = 2 * self.shape.0 * self.shape.1;
        let cols: Vec<Vec<f64>> = self
            .basis
            .iter()
            .map(|b| realify(&(b - &other.project(b))))
            .collect();
        let a = RealMatrix::from_columns(d, &cols);
        let (s, v) = jacobi::real_right_svd(&a)?;
        // absolute threshold: the basis is orthonormal, so the scale is one
        let basis = v
            .iter()
            .enumerate()
            .filter(|(k, _)| s.get(*k).copied().unwrap_or(0.0) <= self.tol.max(TAU_RANK))
            .map(|(_, coeffs)| {
                let mut x = ComplexMatrix::zeros(self.shape.0, self.shape.1);
                for (c, b) in coeffs.iter().zip(&self.basis) {
                    x += &b.scale_real(*c);
                }
                x
            })
            .collect();
        Ok(Subspace {
            shape: self.shape,
            basis,
            tol: self.tol,
        })
    }

    /// A combination of the basis with the given real coefficients.
    pub fn combine(&self, coeffs: &[f64]) -> ComplexMatrix {
        let mut x = ComplexMatrix::zeros(self.shape.0, self.shape.1);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            x += &b.scale_real(*c);
        }
        x
    }
}

impl Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.basis.serialize(s)
    }
}

/// Loads a list of matrix objects, re-verifying orthonormality.
pub fn subspace_from_json(json: &str, tol: f64) -> Result<Subspace> {
    let basis: Vec<ComplexMatrix> = serde_json::from_str(json)?;
    let Some(first) = basis.first() else {
        return Err(Error::Json(
            "an empty basis carries no shape; use a zero matrix list instead".into(),
        ));
    };
    let shape = first.shape();
    Subspace::from_orthonormal(shape, basis, tol)
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let basis = Vec::<ComplexMatrix>::deserialize(d)?;
        let shape = basis
            .first()
            .map(|b| b.shape())
            .ok_or_else(|| serde::de::Error::custom("empty subspace basis"))?;
        Subspace::from_orthonormal(shape, basis, 1e-9).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spans_and_intersection() {
        let shape = (2, 2);
        let e = |i, j| ComplexMatrix::unit(2, 2, i, j);
        let a = Subspace::complex_span(shape, &[e(0, 0), e(0, 1)], TAU_RANK).unwrap();
        let b = Subspace::complex_span(shape, &[e(0, 1), e(1, 1)], TAU_RANK).unwrap();
        assert_eq!(a.complex_dim(), Some(2));
        let c = a.intersection(&b).unwrap();
        assert_eq!(c.complex_dim(), Some(1));
        assert!(c.contains(&e(0, 1), 1e-12));
        assert!(!c.contains(&e(0, 0), 1e-6));
    }

    #[test]
    fn real_span_need_not_be_complex() {
        let s = Subspace::real_span((1, 1), &[ComplexMatrix::identity(1)], TAU_RANK).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.complex_dim(), None);
    }

    #[test]
    fn json_requires_orthonormal_basis() {
        let good = serde_json::to_string(&Subspace::full((1, 2))).unwrap();
        assert_eq!(subspace_from_json(&good, 1e-9).unwrap().dim(), 4);
        let bad = r#"[{"rows":1,"cols":1,"data":[[2.0,0.0]]}]"#;
        assert!(subspace_from_json(bad, 1e-9).is_err());
    }
}
