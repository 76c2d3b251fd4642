//! Tripotents, Peirce decompositions, the Peirce-2 JB*-algebra, the tripotent
//! order and the `S_λ` / `R_λ` automorphisms.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideals::is_orthogonal;
use crate::linalg::{ComplexMatrix, RealifiedMap, Subspace, C64};
use crate::model::TripleModel;

/// Default certification tolerance for tripotents.
pub const CERT_TOL: f64 = 1e-9;

/// `||{e,e,e} - e||`.
pub fn tripotent_residual(model: &TripleModel, e: &ComplexMatrix) -> Result<f64> {
    Ok((&model.triple_product(e, e, e)? - e).norm())
}

pub fn is_tripotent(model: &TripleModel, e: &ComplexMatrix, tol: f64) -> bool {
    match tripotent_residual(model, e) {
        Ok(r) => r <= tol * e.norm().max(1.0),
        Err(_) => false,
    }
}

/// An element certified once to satisfy `{e,e,e} = e`. Serialises as the
/// bare matrix.
#[derive(Clone, Debug)]
pub struct Tripotent {
    element: ComplexMatrix,
    certified_tol: f64,
}

impl Tripotent {
    pub fn certify(model: &TripleModel, e: ComplexMatrix, tol: f64) -> Result<Self> {
        model.check(&e)?;
        let residual = tripotent_residual(model, &e)?;
        if residual > tol * e.norm().max(1.0) {
            return Err(Error::NotTripotent { residual });
        }
        Ok(Self {
            element: e,
            certified_tol: tol,
        })
    }

    /// For constructions that yield tripotents by design (sign of an SVD).
    pub(crate) fn trusted(e: ComplexMatrix, tol: f64) -> Self {
        Self {
            element: e,
            certified_tol: tol,
        }
    }

    pub fn element(&self) -> &ComplexMatrix {
        &self.element
    }

    pub fn into_element(self) -> ComplexMatrix {
        self.element
    }

    pub fn certified_tol(&self) -> f64 {
        self.certified_tol
    }
}

impl Serialize for Tripotent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.element.serialize(s)
    }
}

impl AsRef<ComplexMatrix> for Tripotent {
    fn as_ref(&self) -> &ComplexMatrix {
        &self.element
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PeirceIndex {
    Zero = 0,
    One = 1,
    Two = 2,
}

impl PeirceIndex {
    pub const ALL: [PeirceIndex; 3] = [PeirceIndex::Zero, PeirceIndex::One, PeirceIndex::Two];

    /// `i - j + k` when it lands in `{0, 1, 2}`.
    pub fn rule(i: PeirceIndex, j: PeirceIndex, k: PeirceIndex) -> Option<PeirceIndex> {
        match i as i32 - j as i32 + k as i32 {
            0 => Some(PeirceIndex::Zero),
            1 => Some(PeirceIndex::One),
            2 => Some(PeirceIndex::Two),
            _ => None,
        }
    }
}

/// The three Peirce projections of a tripotent and their images.
#[derive(Clone, Debug)]
pub struct PeirceDecomposition {
    pub tripotent: Tripotent,
    pub p0: RealifiedMap,
    pub p1: RealifiedMap,
    pub p2: RealifiedMap,
    pub s0: Subspace,
    pub s1: Subspace,
    pub s2: Subspace,
}

impl PeirceDecomposition {
    pub fn projection(&self, k: PeirceIndex) -> &RealifiedMap {
        match k {
            PeirceIndex::Zero => &self.p0,
            PeirceIndex::One => &self.p1,
            PeirceIndex::Two => &self.p2,
        }
    }

    pub fn subspace(&self, k: PeirceIndex) -> &Subspace {
        match k {
            PeirceIndex::Zero => &self.s0,
            PeirceIndex::One => &self.s1,
            PeirceIndex::Two => &self.s2,
        }
    }

    /// `P_k(e) x`.
    pub fn component(&self, k: PeirceIndex, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.projection(k).apply(x)
    }

    /// Worst of `||P0+P1+P2 - Id||` and `||Pi Pj - δij Pi||`.
    pub fn projection_residual(&self) -> Result<f64> {
        let shape = self.p0.domain_shape;
        let sum = self.p0.add(&self.p1)?.add(&self.p2)?;
        let mut worst = sum.distance(&RealifiedMap::identity(shape))?;
        for i in PeirceIndex::ALL {
            for j in PeirceIndex::ALL {
                let prod = self.projection(i).compose(self.projection(j))?;
                let target = if i == j {
                    self.projection(i).clone()
                } else {
                    RealifiedMap::zero(shape, shape)
                };
                worst = worst.max(prod.distance(&target)?);
            }
        }
        Ok(worst)
    }
}

/// Peirce projections from `L(e,e)` and `Q(e)`:
/// `P2 = Q(e)²`, `P1 = 2(L(e,e) - Q(e)²)`, `P0 = Id - 2L(e,e) + Q(e)²`.
pub fn peirce_decompose(model: &TripleModel, e: &Tripotent) -> Result<PeirceDecomposition> {
    let el = e.element();
    model.check(el)?;
    let shape = model.shape();
    let l = model.materialize_l(el, el)?;
    let q = model.materialize_q(el)?;
    let q2 = q.compose(&q)?;
    let p2 = q2.clone();
    let p1 = l.sub(&q2)?.scale(2.0);
    let p0 = RealifiedMap::identity(shape).sub(&l.scale(2.0))?.add(&q2)?;
    let s0 = p0.image_above(0.5)?;
    let s1 = p1.image_above(0.5)?;
    let s2 = p2.image_above(0.5)?;
    Ok(PeirceDecomposition {
        tripotent: e.clone(),
        p0,
        p1,
        p2,
        s0,
        s1,
        s2,
    })
}

/// `E_2(e)` as a unital JB*-algebra with `x∘_e y = {x,e,y}`, `x^{*_e} = {e,x,e}`.
#[derive(Clone, Debug)]
pub struct Peirce2Algebra {
    model: TripleModel,
    unit: ComplexMatrix,
    p2: RealifiedMap,
    tol: f64,
}

pub fn peirce2_algebra(model: &TripleModel, e: &Tripotent, tol: f64) -> Result<Peirce2Algebra> {
    let el = e.element();
    model.check(el)?;
    let q = model.materialize_q(el)?;
    Ok(Peirce2Algebra {
        model: *model,
        unit: el.clone(),
        p2: q.compose(&q)?,
        tol,
    })
}

impl Peirce2Algebra {
    pub fn unit(&self) -> &ComplexMatrix {
        &self.unit
    }

    pub fn p2(&self) -> &RealifiedMap {
        &self.p2
    }

    /// `||P2(e) x - x||`.
    pub fn membership_residual(&self, x: &ComplexMatrix) -> Result<f64> {
        Ok((&self.p2.apply(x)? - x).frobenius_norm())
    }

    fn check_member(&self, x: &ComplexMatrix) -> Result<()> {
        let residual = self.membership_residual(x)?;
        if residual > self.tol * x.frobenius_norm().max(1.0) {
            return Err(Error::NotInPeirce2 { residual });
        }
        Ok(())
    }

    /// `x ∘_e y = {x, e, y}`.
    pub fn product(&self, x: &ComplexMatrix, y: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_member(x)?;
        self.check_member(y)?;
        Ok(self.model.tp(x, &self.unit, y))
    }

    /// `x^{*_e} = {e, x, e}`.
    pub fn involution(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_member(x)?;
        Ok(self.model.tp(&self.unit, x, &self.unit))
    }

    /// `U^e_x(y) = 2(x∘_e y)∘_e x - (x∘_e x)∘_e y`.
    pub fn u(&self, x: &ComplexMatrix, y: &ComplexMatrix) -> Result<ComplexMatrix> {
        let xy = self.product(x, y)?;
        let xx = self.product(x, x)?;
        Ok(&self.product(&xy, x)?.scale_real(2.0) - &self.product(&xx, y)?)
    }

    /// C*-product `x •_e y = x e* y` (C*-algebra model only).
    pub fn bullet(&self, x: &ComplexMatrix, y: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.model.require_cstar()?;
        self.check_member(x)?;
        self.check_member(y)?;
        Ok(&(x * &self.unit.adjoint()) * y)
    }

    /// C*-involution `x^{*_e} = e x* e` (C*-algebra model only).
    pub fn star(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.model.require_cstar()?;
        self.check_member(x)?;
        Ok(&(&self.unit * &x.adjoint()) * &self.unit)
    }
}

/// `e <= v`: `v - e` is a tripotent orthogonal to `e`.
pub fn tripotent_leq(model: &TripleModel, e: &Tripotent, v: &Tripotent, tol: f64) -> bool {
    let d = v.element() - e.element();
    is_tripotent(model, &d, tol) && is_orthogonal(model, e.element(), &d, tol)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AutomorphismVariant {
    /// `λ² P2 + λ P1 + P0`
    S,
    /// `P2 + λ P1 + λ² P0`
    R,
}

pub fn peirce_automorphism(
    model: &TripleModel,
    e: &Tripotent,
    lambda: C64,
    variant: AutomorphismVariant,
) -> Result<RealifiedMap> {
    let modulus = lambda.norm();
    if (modulus - 1.0).abs() > 1e-12 {
        return Err(Error::NotUnitModulus { modulus });
    }
    let pd = peirce_decompose(model, e)?;
    automorphism_from(&pd, lambda, variant)
}

pub(crate) fn automorphism_from(
    pd: &PeirceDecomposition,
    lambda: C64,
    variant: AutomorphismVariant,
) -> Result<RealifiedMap> {
    let shape = pd.p0.domain_shape;
    let mul = |z: C64, p: &RealifiedMap| RealifiedMap::complex_scalar(shape, z).compose(p);
    let l2 = lambda * lambda;
    let (c2, c1, c0) = match variant {
        AutomorphismVariant::S => (l2, lambda, C64::new(1.0, 0.0)),
        AutomorphismVariant::R => (C64::new(1.0, 0.0), lambda, l2),
    };
    mul(c2, &pd.p2)?
        .add(&mul(c1, &pd.p1)?)?
        .add(&mul(c0, &pd.p0)?)
}

/// Worst residual of the Peirce rules on the given Peirce components:
/// `{x_i, y_j, z_k}` must lie in `E_{i-j+k}(e)` (and vanish when that index
/// falls outside `{0,1,2}`), and `{E_2, E_0, E} = {E_0, E_2, E} = 0`.
pub fn peirce_rules_residual(
    model: &TripleModel,
    pd: &PeirceDecomposition,
    samples: &[ComplexMatrix; 3],
    free: &ComplexMatrix,
) -> Result<f64> {
    let comps: Vec<[ComplexMatrix; 3]> = samples
        .iter()
        .map(|s| {
            Ok([
                pd.component(PeirceIndex::Zero, s)?,
                pd.component(PeirceIndex::One, s)?,
                pd.component(PeirceIndex::Two, s)?,
            ])
        })
        .collect::<Result<_>>()?;
    let mut worst: f64 = 0.0;
    for i in PeirceIndex::ALL {
        for j in PeirceIndex::ALL {
            for k in PeirceIndex::ALL {
                let t = model.tp(
                    &comps[0][i as usize],
                    &comps[1][j as usize],
                    &comps[2][k as usize],
                );
                let r = match PeirceIndex::rule(i, j, k) {
                    Some(target) => (&t - &pd.component(target, &t)?).norm(),
                    None => t.norm(),
                };
                worst = worst.max(r);
            }
        }
    }
    let x2 = &comps[0][2];
    let x0 = &comps[1][0];
    worst = worst.max(model.tp(x2, x0, free).norm());
    worst = worst.max(model.tp(x0, x2, free).norm());
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{I, TAU_RANK};

    fn e(n: usize, i: usize, j: usize) -> ComplexMatrix {
        ComplexMatrix::unit(n, n, i, j)
    }

    fn span(xs: &[ComplexMatrix]) -> Subspace {
        Subspace::complex_span(xs[0].shape(), xs, TAU_RANK).unwrap()
    }

    #[test]
    fn tripotent_examples() {
        let cs = TripleModel::CStar { n: 2 };
        assert!(is_tripotent(&cs, &ComplexMatrix::identity(2), CERT_TOL));
        // {a,a,a} = 8 E11 for a = 2 E11
        let a = e(2, 0, 0).scale_real(2.0);
        assert!(
            (&cs.triple_product(&a, &a, &a).unwrap() - &e(2, 0, 0).scale_real(8.0)).max_abs()
                < 1e-15
        );
        assert!(!is_tripotent(&cs, &a, CERT_TOL));
        // singular values {1, 0}: a rotated rank-one partial isometry
        let s = 0.5;
        let v = ComplexMatrix::from_fn(2, 2, |i, _| {
            C64::new(s, 0.0) * if i == 0 { C64::new(1.0, 0.0) } else { I }
        });
        assert!(is_tripotent(&cs, &v, CERT_TOL));
        assert!(matches!(
            Tripotent::certify(&cs, a, CERT_TOL),
            Err(Error::NotTripotent { .. })
        ));
    }

    #[test]
    fn peirce_spaces_of_e11() {
        let cs = TripleModel::CStar { n: 2 };
        let t = Tripotent::certify(&cs, e(2, 0, 0), CERT_TOL).unwrap();
        let pd = peirce_decompose(&cs, &t).unwrap();
        assert!(pd.s2.same_as(&span(&[e(2, 0, 0)]), 1e-12));
        assert!(pd.s1.same_as(&span(&[e(2, 0, 1), e(2, 1, 0)]), 1e-12));
        assert!(pd.s0.same_as(&span(&[e(2, 1, 1)]), 1e-12));
        assert!(pd.projection_residual().unwrap() < 1e-14);
    }

    #[test]
    fn peirce_spaces_of_unitary_and_zero() {
        for model in [TripleModel::CStar { n: 2 }, TripleModel::JBStar { n: 2 }] {
            let id = Tripotent::certify(&model, ComplexMatrix::identity(2), CERT_TOL).unwrap();
            let pd = peirce_decompose(&model, &id).unwrap();
            assert_eq!(pd.s2.dim(), 8);
            assert!(pd.s1.is_zero() && pd.s0.is_zero());

            let z = Tripotent::certify(&model, ComplexMatrix::zeros(2, 2), CERT_TOL).unwrap();
            let pd = peirce_decompose(&model, &z).unwrap();
            assert_eq!(pd.s0.dim(), 8);
            assert!(pd.s1.is_zero() && pd.s2.is_zero());
        }
    }

    #[test]
    fn peirce2_algebra_examples() {
        let cs = TripleModel::CStar { n: 2 };
        let t = Tripotent::certify(&cs, e(2, 0, 1), CERT_TOL).unwrap();
        let alg = peirce2_algebra(&cs, &t, 1e-10).unwrap();
        let x = e(2, 0, 1);
        assert_eq!(alg.involution(&x).unwrap(), x);
        assert_eq!(alg.product(&x, &x).unwrap(), x);
        assert_eq!(alg.star(&x).unwrap(), x);
        assert!(matches!(
            alg.product(&e(2, 1, 1), &x),
            Err(Error::NotInPeirce2 { .. })
        ));

        let id = Tripotent::certify(&cs, ComplexMatrix::identity(2), CERT_TOL).unwrap();
        let alg = peirce2_algebra(&cs, &id, 1e-10).unwrap();
        let a = ComplexMatrix::from_fn(2, 2, |i, j| C64::new(i as f64 + 1.0, j as f64 - 0.3));
        let b = ComplexMatrix::from_fn(2, 2, |i, j| C64::new(j as f64, 0.2 * i as f64));
        let jordan = crate::model::jordan::circ(&a, &b);
        assert!((&alg.product(&a, &b).unwrap() - &jordan).max_abs() < 1e-14);
        assert!((&alg.involution(&a).unwrap() - &a.adjoint()).max_abs() < 1e-14);
    }

    #[test]
    fn order_examples() {
        let cs = TripleModel::CStar { n: 2 };
        let cert = |x| Tripotent::certify(&cs, x, CERT_TOL).unwrap();
        let e11 = cert(e(2, 0, 0));
        let e22 = cert(e(2, 1, 1));
        let id = cert(ComplexMatrix::identity(2));
        assert!(tripotent_leq(&cs, &e11, &id, CERT_TOL));
        assert!(tripotent_leq(&cs, &e11, &e11, CERT_TOL));
        assert!(!tripotent_leq(&cs, &e11, &e22, CERT_TOL));
        assert!(!tripotent_leq(&cs, &id, &e11, CERT_TOL));
    }

    #[test]
    fn automorphism_examples() {
        let cs = TripleModel::CStar { n: 2 };
        let t = Tripotent::certify(&cs, e(2, 0, 0), CERT_TOL).unwrap();
        let one = peirce_automorphism(&cs, &t, C64::new(1.0, 0.0), AutomorphismVariant::S).unwrap();
        assert!(one.distance(&RealifiedMap::identity((2, 2))).unwrap() < 1e-14);
        let s = peirce_automorphism(&cs, &t, C64::new(-1.0, 0.0), AutomorphismVariant::S).unwrap();
        let y = s.apply(&e(2, 0, 1)).unwrap();
        assert!((&y + &e(2, 0, 1)).max_abs() < 1e-14);
        assert!(matches!(
            peirce_automorphism(&cs, &t, C64::new(1.1, 0.0), AutomorphismVariant::R),
            Err(Error::NotUnitModulus { .. })
        ));
    }
}
