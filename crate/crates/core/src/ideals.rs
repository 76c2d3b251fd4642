//! Orthogonality, annihilators and inner ideals.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, RealifiedMap, Subspace, TAU_RANK};
use crate::model::{jordan, TripleModel};
use crate::random;
use crate::spectral::psd_sqrt;

/// `||L(a, b)||` for the materialised operator.
pub fn orthogonality_residual(
    model: &TripleModel,
    a: &ComplexMatrix,
    b: &ComplexMatrix,
) -> Result<f64> {
    Ok(model.materialize_l(a, b)?.norm())
}

/// `a ⊥ b`, i.e. `L(a, b) = 0`.
pub fn is_orthogonal(model: &TripleModel, a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
    match orthogonality_residual(model, a, b) {
        Ok(r) => r <= tol * (a.norm() * b.norm()).max(1.0),
        Err(_) => false,
    }
}

/// C*-algebra criterion `ab* = b*a = 0`.
pub fn orthogonal_by_products(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
    let bs = b.adjoint();
    let r = (a * &bs).norm().max((&bs * a).norm());
    r <= tol * (a.norm() * b.norm()).max(1.0)
}

/// Every basis element of `j` is orthogonal to `x`. Since `a ⊥ b` iff
/// `E(a) ⊥ E(b)`, this certifies `J ⊥ E(x)`.
pub fn orthogonal_to_element(
    model: &TripleModel,
    j: &Subspace,
    x: &ComplexMatrix,
    tol: f64,
) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for b in j.basis() {
        worst = worst.max(orthogonality_bound(model, b, x)? / x.norm().max(1.0));
        if worst > tol {
            return Err(Error::NotOrthogonal { residual: worst });
        }
    }
    Ok(worst)
}

/// Frobenius norm of `L(a, b)`; bounds [`orthogonality_residual`] from above
/// without a singular value decomposition.
fn orthogonality_bound(model: &TripleModel, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    Ok(model.materialize_l(a, b)?.matrix.frobenius_norm())
}

/// Basis-pairwise orthogonality of two subspaces; returns the worst
/// Frobenius bound on `||L(u, v)||`.
pub fn subspaces_orthogonality_residual(
    model: &TripleModel,
    a: &Subspace,
    b: &Subspace,
) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for u in a.basis() {
        for v in b.basis() {
            worst = worst.max(orthogonality_bound(model, u, v)?);
        }
    }
    Ok(worst)
}

/// `S^⊥ = {x : L(s, x) = 0 for all s ∈ S}`, found as the joint kernel of
/// the `L(s, s)` and then checked against the definition.
pub fn orthogonal_annihilator(
    model: &TripleModel,
    set: &[ComplexMatrix],
    tol: f64,
) -> Result<Subspace> {
    for s in set {
        model.check(s)?;
    }
    let shape = model.shape();
    let nonzero: Vec<&ComplexMatrix> = set.iter().filter(|s| s.max_abs() > 0.0).collect();
    if nonzero.is_empty() {
        return Ok(Subspace::full(shape));
    }
    let ann = annihilator_via_l_ss(model, set)?;
    for x in &nonzero {
        let scale = x.norm().max(1.0);
        for b in ann.basis() {
            let residual = orthogonality_bound(model, b, x)? / scale;
            if residual > tol {
                return Err(Error::NotOrthogonal { residual });
            }
        }
    }
    let residual = inner_ideal_residual(model, &ann)?;
    if residual > tol {
        return Err(Error::NotInnerIdeal { residual });
    }
    Ok(ann)
}

/// `S^⊥` through `a ⊥ b ⟺ {a, a, b} = 0`: the joint kernel of the
/// `L(s, s)`, uncertified.
pub fn annihilator_via_l_ss(model: &TripleModel, set: &[ComplexMatrix]) -> Result<Subspace> {
    let shape = model.shape();
    if set.iter().all(|s| s.max_abs() == 0.0) {
        return Ok(Subspace::full(shape));
    }
    let maps = set
        .iter()
        .map(|s| model.materialize_l(s, s))
        .collect::<Result<Vec<_>>>()?;
    RealifiedMap::stack(&maps)?.kernel(TAU_RANK)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QuadraticSide {
    /// `U_x(s) = 0` for all `s`
    Outer,
    /// `U_s(x) = 0` for all `s`
    Inner,
}

/// Worst `||U_x(s)||` (outer) or `||U_s(x)||` (inner) over the set.
pub fn quadratic_annihilator_residual(
    model: &TripleModel,
    x: &ComplexMatrix,
    set: &[ComplexMatrix],
    side: QuadraticSide,
) -> Result<f64> {
    model.require_jbstar()?;
    model.check(x)?;
    let mut worst: f64 = 0.0;
    for s in set {
        model.check(s)?;
        let v = match side {
            QuadraticSide::Outer => jordan::u(x, s),
            QuadraticSide::Inner => jordan::u(s, x),
        };
        worst = worst.max(v.norm());
    }
    Ok(worst)
}

pub fn quadratic_annihilator_membership(
    model: &TripleModel,
    x: &ComplexMatrix,
    set: &[ComplexMatrix],
    side: QuadraticSide,
    tol: f64,
) -> Result<bool> {
    Ok(quadratic_annihilator_residual(model, x, set, side)? <= tol)
}

/// `E(x) = Q(x)(E)`; no closure is needed in finite dimension.
pub fn inner_ideal_generated(model: &TripleModel, x: &ComplexMatrix, tol: f64) -> Result<Subspace> {
    let img = model.materialize_q(x)?.image(TAU_RANK)?;
    let residual = inner_ideal_residual(model, &img)?;
    if residual > tol {
        return Err(Error::NotInnerIdeal { residual });
    }
    Ok(img)
}

/// Fixed probe directions for [`inner_ideal_residual`].
const PROBES: usize = 4;
const PROBE_SEED: u64 = 0x1dea1;

/// Worst projector residual of `{u, w, v}` against `S` over basis pairs
/// `u, v` of `S` and a fixed set of random unit directions `w`. For each
/// pair the map `w -> (I - P_S){u, w, v}` is real linear, so a nonzero map
/// is seen by every probe outside a null set. The product is symmetric
/// and real bilinear in `(u, v)`, so pairs with `u <= v` suffice.
pub fn inner_ideal_residual(model: &TripleModel, s: &Subspace) -> Result<f64> {
    let shape = model.shape();
    if s.shape() != shape {
        return Err(Error::ShapeMismatch {
            expected: shape,
            got: s.shape(),
        });
    }
    let mut rng = random::rng(PROBE_SEED);
    let ws: Vec<ComplexMatrix> = (0..PROBES)
        .map(|_| {
            let w = random::ginibre(&mut rng, shape.0, shape.1);
            w.scale_real(1.0 / w.norm())
        })
        .collect();
    let b = s.basis();
    let mut worst: f64 = 0.0;
    for i in 0..b.len() {
        for j in i..b.len() {
            for w in &ws {
                worst = worst.max(s.residual(&model.tp(&b[i], w, &b[j])));
            }
        }
    }
    Ok(worst)
}

pub fn is_inner_ideal(model: &TripleModel, s: &Subspace, tol: f64) -> bool {
    inner_ideal_residual(model, s).is_ok_and(|r| r <= tol)
}

const FACE_SAMPLES: usize = 64;
const FACE_SEED: u64 = 0xface;

/// Worst residual of the hereditary conditions: inner ideal, self-adjoint
/// basis and, on square models, the face property `0 ≤ a ≤ h ∈ S ⟹ a ∈ S`
/// on sampled pairs. Samples take `h = {b, 1, b*}` for random `b ∈ S` and
/// `a = h^{1/2} c h^{1/2}` with `0 ≤ c ≤ 1`.
pub fn hereditary_residual(model: &TripleModel, s: &Subspace) -> Result<f64> {
    let mut worst = inner_ideal_residual(model, s)?;
    for b in s.basis() {
        worst = worst.max(s.residual(&b.adjoint()));
    }
    let (n, cols) = model.shape();
    if n != cols || s.is_zero() {
        return Ok(worst);
    }
    let one = ComplexMatrix::identity(n);
    let mut rng = random::rng(FACE_SEED);
    for _ in 0..FACE_SAMPLES {
        let coeffs: Vec<f64> = (0..s.dim())
            .map(|_| random::uniform(&mut rng, -1.0, 1.0))
            .collect();
        let b = s.combine(&coeffs);
        let root = psd_sqrt(&model.tp(&b, &one, &b.adjoint()).hermitian_part())?;
        let u = random::unitary(&mut rng, n);
        let d: Vec<f64> = (0..n)
            .map(|_| random::uniform(&mut rng, 0.0, 1.0))
            .collect();
        let c = &(&u * &ComplexMatrix::real_diag(&d)) * &u.adjoint();
        worst = worst.max(s.relative_residual(&(&(&root * &c) * &root)));
    }
    Ok(worst)
}

/// The finite-dimensional hereditary subalgebra test; see
/// [`hereditary_residual`].
pub fn is_hereditary(model: &TripleModel, s: &Subspace, tol: f64) -> bool {
    hereditary_residual(model, s).is_ok_and(|r| r <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::C64;

    fn e(n: usize, i: usize, j: usize) -> ComplexMatrix {
        ComplexMatrix::unit(n, n, i, j)
    }

    fn span(xs: &[ComplexMatrix]) -> Subspace {
        Subspace::complex_span(xs[0].shape(), xs, TAU_RANK).unwrap()
    }

    #[test]
    fn orthogonality_examples() {
        for model in [TripleModel::CStar { n: 2 }, TripleModel::JBStar { n: 2 }] {
            assert!(is_orthogonal(&model, &e(2, 0, 0), &e(2, 1, 1), 1e-10));
            assert!(!is_orthogonal(&model, &e(2, 0, 0), &e(2, 0, 1), 1e-10));
            assert!(is_orthogonal(&model, &e(2, 0, 1), &model.zero(), 1e-10));
        }
        assert!(orthogonal_by_products(&e(2, 0, 0), &e(2, 1, 1), 1e-10));
        assert!(!orthogonal_by_products(&e(2, 0, 0), &e(2, 0, 1), 1e-10));
    }

    #[test]
    fn annihilator_examples() {
        let cs = TripleModel::CStar { n: 2 };
        let ann = orthogonal_annihilator(&cs, &[e(2, 0, 0)], 1e-9).unwrap();
        assert!(ann.same_as(&span(&[e(2, 1, 1)]), 1e-10));
        let ann = orthogonal_annihilator(&cs, &[cs.zero()], 1e-9).unwrap();
        assert_eq!(ann.dim(), 8);
        let ann = orthogonal_annihilator(&cs, &[ComplexMatrix::identity(2)], 1e-9).unwrap();
        assert!(ann.is_zero());
    }

    #[test]
    fn annihilator_routes_agree() {
        let cs = TripleModel::Rect { m: 2, n: 3 };
        let s = ComplexMatrix::from_fn(2, 3, |i, j| {
            if j == 2 {
                C64::new(0.0, 0.0)
            } else {
                C64::new(1.0 + i as f64, j as f64)
            }
        });
        let a = orthogonal_annihilator(&cs, std::slice::from_ref(&s), 1e-9).unwrap();
        let b = annihilator_via_l_ss(&cs, &[s]).unwrap();
        assert!(a.same_as(&b, 1e-9));
    }

    #[test]
    fn quadratic_membership_examples() {
        let jb = TripleModel::JBStar { n: 2 };
        let s = [e(2, 0, 0)];
        assert!(quadratic_annihilator_membership(
            &jb,
            &e(2, 1, 1),
            &s,
            QuadraticSide::Outer,
            1e-12
        )
        .unwrap());
        assert!(
            quadratic_annihilator_membership(&jb, &jb.zero(), &s, QuadraticSide::Outer, 1e-12)
                .unwrap()
        );
        assert!(
            quadratic_annihilator_membership(&jb, &jb.zero(), &s, QuadraticSide::Inner, 1e-12)
                .unwrap()
        );
        let id = ComplexMatrix::identity(2);
        assert!(
            !quadratic_annihilator_membership(&jb, &id, &s, QuadraticSide::Outer, 1e-12).unwrap()
        );
        assert!(quadratic_annihilator_membership(
            &TripleModel::CStar { n: 2 },
            &id,
            &s,
            QuadraticSide::Outer,
            1e-12
        )
        .is_err());
    }

    #[test]
    fn generated_inner_ideals() {
        let cs = TripleModel::CStar { n: 2 };
        let i1 = inner_ideal_generated(&cs, &e(2, 0, 0), 1e-9).unwrap();
        assert!(i1.same_as(&span(&[e(2, 0, 0)]), 1e-12));
        let inv = ComplexMatrix::from_real_rows(&[&[2.0, 1.0], &[0.0, 1.0]]);
        assert_eq!(inner_ideal_generated(&cs, &inv, 1e-9).unwrap().dim(), 8);
        assert!(inner_ideal_generated(&cs, &cs.zero(), 1e-9)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn inner_ideal_examples() {
        let cs = TripleModel::CStar { n: 2 };
        assert!(is_inner_ideal(&cs, &Subspace::full((2, 2)), 1e-10));
        let sym = span(&[&e(2, 0, 1) + &e(2, 1, 0)]);
        // {u, E11, u} = E22 escapes the span
        assert!(!is_inner_ideal(&cs, &sym, 1e-6));
        let row = span(&[e(2, 0, 0), e(2, 0, 1)]);
        assert!(is_inner_ideal(&cs, &row, 1e-10));
        assert!(!is_hereditary(&cs, &row, 1e-10));
    }

    #[test]
    fn corners_are_hereditary() {
        let cs = TripleModel::CStar { n: 3 };
        let corner = span(&[e(3, 0, 0), e(3, 0, 1), e(3, 1, 0), e(3, 1, 1)]);
        assert!(hereditary_residual(&cs, &corner).unwrap() < 1e-12);
        assert!(is_hereditary(&cs, &Subspace::zero((3, 3)), 1e-12));
    }
}
