//! Triple spectrum, odd functional calculus, range and support tripotents,
//! polar decomposition, left/right projections and generalized inverses.
//!
//! Everything here is recombination of a single SVD `a = U Σ V*`: the
//! JB*-subtriple generated by `a` is identified with functions on the nonzero
//! singular values, and each construction applies a function to `Σ`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, svd, ComplexMatrix, SvdResult, C64, TAU_RANK};
use crate::model::TripleModel;
use crate::peirce::Tripotent;

/// Distinct nonzero singular values, ascending, plus whether the element is
/// rank deficient. Zero is isolated in finite dimension and is recorded only
/// in `includes_zero`, never in `values`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TripleSpectrum {
    pub values: Vec<f64>,
    pub includes_zero: bool,
}

fn rank_cut(s: &SvdResult) -> f64 {
    TAU_RANK * s.max_singular()
}

pub fn triple_spectrum(model: &TripleModel, a: &ComplexMatrix, tol: f64) -> Result<TripleSpectrum> {
    model.check(a)?;
    let s = svd(a, tol)?;
    let smax = s.max_singular();
    if smax == 0.0 {
        return Ok(TripleSpectrum {
            values: Vec::new(),
            includes_zero: false,
        });
    }
    let cut = rank_cut(&s);
    let mut values: Vec<f64> = Vec::new();
    let mut includes_zero = false;
    for &sv in s.singular.iter().rev() {
        if sv <= cut {
            includes_zero = true;
            continue;
        }
        match values.last() {
            Some(&last) if sv - last <= tol * smax => {}
            _ => values.push(sv),
        }
    }
    Ok(TripleSpectrum {
        values,
        includes_zero,
    })
}

/// `U f(Σ) V*` with numerically zero singular values mapped to `f(0) = 0`.
pub fn odd_calculus(
    model: &TripleModel,
    a: &ComplexMatrix,
    f: impl Fn(f64) -> f64,
) -> Result<ComplexMatrix> {
    model.check(a)?;
    let s = svd(a, TAU_RANK)?;
    let cut = rank_cut(&s);
    Ok(s.recombine(|x| if x > cut { f(x) } else { 0.0 }))
}

/// The range tripotent `r(a) = U sign(Σ) V*`, the polar-decomposition
/// partial isometry of `a`.
pub fn range_tripotent(model: &TripleModel, a: &ComplexMatrix, tol: f64) -> Result<Tripotent> {
    let r = odd_calculus(model, a, |_| 1.0)?;
    Ok(Tripotent::trusted(r, tol))
}

/// The support tripotent `u(a)` of a norm-one element: the limit of odd
/// powers, which keeps exactly the singular values equal to one.
pub fn support_tripotent(model: &TripleModel, a: &ComplexMatrix, tol: f64) -> Result<Tripotent> {
    model.check(a)?;
    let s = svd(a, tol)?;
    let norm = s.max_singular();
    if (norm - 1.0).abs() > tol {
        return Err(Error::NotNormOne { norm });
    }
    let u = s.recombine(|x| if (x - 1.0).abs() <= tol { 1.0 } else { 0.0 });
    Ok(Tripotent::trusted(u, tol))
}

/// Polar decomposition `x = e|x|` in the C*-algebra model.
#[derive(Clone, Debug, Serialize)]
pub struct PolarData {
    pub isometry: Tripotent,
    pub modulus: ComplexMatrix,
    pub lp: ComplexMatrix,
    pub rp: ComplexMatrix,
}

pub fn polar_decomposition(model: &TripleModel, x: &ComplexMatrix, tol: f64) -> Result<PolarData> {
    model.require_cstar()?;
    model.check(x)?;
    let s = svd(x, tol)?;
    let cut = rank_cut(&s);
    let e = s.recombine(|v| if v > cut { 1.0 } else { 0.0 });
    // |x| = V Σ V*
    let modulus = SvdResult {
        left: s.right.clone(),
        singular: s
            .singular
            .iter()
            .map(|&v| if v > cut { v } else { 0.0 })
            .collect(),
        right: s.right.clone(),
    }
    .reconstruct();
    let lp = &e * &e.adjoint();
    let rp = &e.adjoint() * &e;
    Ok(PolarData {
        isometry: Tripotent::trusted(e, tol),
        modulus,
        lp,
        rp,
    })
}

/// Range projection of a positive semidefinite matrix via its
/// eigendecomposition; independent of the SVD route used elsewhere.
pub fn support_projection(h: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    let (vals, vecs) = hermitian_eigen(h, tol.max(1e-12))?;
    let top = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let n = h.rows();
    let keep: Vec<usize> = (0..n)
        .filter(|&k| vals[k] > TAU_RANK * top && top > 0.0)
        .collect();
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        keep.iter()
            .map(|&k| vecs[(i, k)] * vecs[(j, k)].conj())
            .sum()
    }))
}

/// `LP(x)`: range projection of `x x*`.
pub fn left_projection(x: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    support_projection(&(x * &x.adjoint()), tol)
}

/// `RP(x)`: range projection of `x* x`.
pub fn right_projection(x: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    support_projection(&(&x.adjoint() * x), tol)
}

/// Zero is never in the retained spectrum, so every finite element is regular.
pub fn is_regular(model: &TripleModel, a: &ComplexMatrix, tol: f64) -> bool {
    match triple_spectrum(model, a, tol) {
        Ok(sp) => {
            let smax = sp.values.last().copied().unwrap_or(0.0);
            sp.values.iter().all(|&v| v > TAU_RANK * smax)
        }
        Err(_) => false,
    }
}

/// `a† = U Σ⁻¹ V*` on the retained singular values.
pub fn generalized_inverse(
    model: &TripleModel,
    a: &ComplexMatrix,
    tol: f64,
) -> Result<ComplexMatrix> {
    if !is_regular(model, a, tol) {
        return Err(Error::NotRegular);
    }
    odd_calculus(model, a, |s| 1.0 / s)
}

/// Residuals of the three defining identities of `a†` and of
/// `L(a, a†) = L(r(a), r(a))`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct GeneralizedInverseResiduals {
    pub q_a: f64,
    pub q_dagger: f64,
    pub commutator: f64,
    pub l_identity: f64,
}

impl GeneralizedInverseResiduals {
    pub fn worst(&self) -> f64 {
        self.q_a
            .max(self.q_dagger)
            .max(self.commutator)
            .max(self.l_identity)
    }
}

pub fn generalized_inverse_residuals(
    model: &TripleModel,
    a: &ComplexMatrix,
    dagger: &ComplexMatrix,
    tol: f64,
) -> Result<GeneralizedInverseResiduals> {
    let qa = model.materialize_q(a)?;
    let qd = model.materialize_q(dagger)?;
    let q_a = (&qa.apply(dagger)? - a).norm();
    let q_dagger = (&qd.apply(a)? - dagger).norm();
    let commutator = qa.compose(&qd)?.distance(&qd.compose(&qa)?)?;
    let r = range_tripotent(model, a, tol)?;
    let l_identity = model
        .materialize_l(a, dagger)?
        .distance(&model.materialize_l(r.element(), r.element())?)?;
    Ok(GeneralizedInverseResiduals {
        q_a,
        q_dagger,
        commutator,
        l_identity,
    })
}

/// Evidence that `x` is positive in the Peirce-2 algebra of `e`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Peirce2Positivity {
    /// `||P2(e) x - x||`
    pub membership: f64,
    /// `||{e, x, e} - x||`
    pub self_adjoint: f64,
    /// smallest eigenvalue of the hermitian part of `e* x`
    pub min_eigenvalue: f64,
}

impl Peirce2Positivity {
    pub fn holds(&self, tol: f64) -> bool {
        self.membership <= tol && self.self_adjoint <= tol && self.min_eigenvalue >= -tol
    }
}

/// Positivity of `x` in `E_2(e)` through the isomorphism `z ↦ e* z` onto
/// `e*e E e*e`: `x ∈ E_2(e)`, `x^{*_e} = x` and `e* x >= 0`.
pub fn peirce2_positivity(
    model: &TripleModel,
    e: &ComplexMatrix,
    x: &ComplexMatrix,
) -> Result<Peirce2Positivity> {
    model.check(e)?;
    model.check(x)?;
    let qx = model.tp(e, x, e);
    let p2x = model.tp(e, &qx, e);
    let membership = (&p2x - x).norm();
    let self_adjoint = (&qx - x).norm();
    let ex = &e.adjoint() * x;
    let (vals, _) = hermitian_eigen(&ex.hermitian_part(), 1e-12)?;
    let min_eigenvalue = vals.last().copied().unwrap_or(0.0);
    Ok(Peirce2Positivity {
        membership,
        self_adjoint,
        min_eigenvalue,
    })
}

/// Principal square root of a positive semidefinite matrix. Eigenvalues
/// below the rank threshold count as zero, so rounding noise on the kernel
/// is not lifted to its square root.
pub fn psd_sqrt(h: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (vals, vecs) = hermitian_eigen(h, 1e-9)?;
    let n = h.rows();
    let cut = TAU_RANK * vals.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let roots: Vec<f64> = vals
        .iter()
        .map(|&v| if v > cut { v.sqrt() } else { 0.0 })
        .collect();
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        (0..n)
            .map(|k| vecs[(i, k)] * C64::new(roots[k], 0.0) * vecs[(j, k)].conj())
            .sum()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::I;
    use crate::peirce::{tripotent_leq, CERT_TOL};

    fn m(rows: &[&[f64]]) -> ComplexMatrix {
        ComplexMatrix::from_real_rows(rows)
    }

    #[test]
    fn spectrum_examples() {
        let cs = TripleModel::CStar { n: 2 };
        let sp = triple_spectrum(&cs, &ComplexMatrix::real_diag(&[3.0, 1.0]), 1e-9).unwrap();
        assert_eq!(sp.values.len(), 2);
        assert!((sp.values[0] - 1.0).abs() < 1e-14 && (sp.values[1] - 3.0).abs() < 1e-14);
        assert!(!sp.includes_zero);

        let sp = triple_spectrum(&cs, &cs.zero(), 1e-9).unwrap();
        assert!(sp.values.is_empty() && !sp.includes_zero);

        let sp = triple_spectrum(&cs, &ComplexMatrix::unit(2, 2, 0, 1), 1e-9).unwrap();
        assert_eq!(sp.values, vec![1.0]);
        assert!(sp.includes_zero);
    }

    #[test]
    fn odd_calculus_examples() {
        let cs = TripleModel::CStar { n: 2 };
        let e12 = ComplexMatrix::unit(2, 2, 0, 1);
        let cube = odd_calculus(&cs, &e12, |t| t * t * t).unwrap();
        assert!((&cube - &e12).max_abs() < 1e-15);
        let root = odd_calculus(&cs, &e12.scale_real(8.0), f64::cbrt).unwrap();
        assert!((&root - &e12.scale_real(2.0)).max_abs() < 1e-14);
        let a = ComplexMatrix::from_fn(2, 2, |i, j| C64::new(i as f64 - 0.4, (i * j) as f64));
        assert!((&odd_calculus(&cs, &a, |t| t).unwrap() - &a).max_abs() < 1e-14);
    }

    #[test]
    fn range_and_support_tripotents() {
        let cs = TripleModel::CStar { n: 2 };
        let r = range_tripotent(&cs, &m(&[&[0.0, 2.0], &[0.0, 0.0]]), CERT_TOL).unwrap();
        assert!((r.element() - &m(&[&[0.0, 1.0], &[0.0, 0.0]])).max_abs() < 1e-15);
        assert!(
            range_tripotent(&cs, &cs.zero(), CERT_TOL)
                .unwrap()
                .element()
                .max_abs()
                == 0.0
        );

        let u = support_tripotent(&cs, &ComplexMatrix::real_diag(&[1.0, 0.5]), CERT_TOL).unwrap();
        assert!((u.element() - &ComplexMatrix::real_diag(&[1.0, 0.0])).max_abs() < 1e-15);
        let u = support_tripotent(&cs, &ComplexMatrix::identity(2), CERT_TOL).unwrap();
        assert!((u.element() - &ComplexMatrix::identity(2)).max_abs() < 1e-15);
        assert!(matches!(
            support_tripotent(&cs, &ComplexMatrix::real_diag(&[2.0, 0.5]), CERT_TOL),
            Err(Error::NotNormOne { .. })
        ));

        let a = ComplexMatrix::real_diag(&[1.0, 0.5]);
        let u = support_tripotent(&cs, &a, CERT_TOL).unwrap();
        let r = range_tripotent(&cs, &a, CERT_TOL).unwrap();
        assert!(tripotent_leq(&cs, &u, &r, CERT_TOL));
    }

    #[test]
    fn polar_examples() {
        let cs = TripleModel::CStar { n: 2 };
        let p = polar_decomposition(&cs, &m(&[&[0.0, 2.0], &[0.0, 0.0]]), CERT_TOL).unwrap();
        assert!((p.isometry.element() - &m(&[&[0.0, 1.0], &[0.0, 0.0]])).max_abs() < 1e-15);
        assert!((&p.modulus - &ComplexMatrix::real_diag(&[0.0, 2.0])).max_abs() < 1e-15);
        assert!((&p.lp - &ComplexMatrix::real_diag(&[1.0, 0.0])).max_abs() < 1e-15);
        assert!((&p.rp - &ComplexMatrix::real_diag(&[0.0, 1.0])).max_abs() < 1e-15);

        let pos = m(&[&[2.0, 1.0], &[1.0, 1.0]]);
        let p = polar_decomposition(&cs, &pos, CERT_TOL).unwrap();
        assert!((&p.modulus - &pos).max_abs() < 1e-14);
        assert!((p.isometry.element() - &ComplexMatrix::identity(2)).max_abs() < 1e-14);

        let u = m(&[&[0.0, 1.0], &[1.0, 0.0]]).scale(I);
        let p = polar_decomposition(&cs, &u, CERT_TOL).unwrap();
        assert!((p.isometry.element() - &u).max_abs() < 1e-14);
        assert!((&p.modulus - &ComplexMatrix::identity(2)).max_abs() < 1e-14);

        assert!(polar_decomposition(&TripleModel::JBStar { n: 2 }, &u, CERT_TOL).is_err());
    }

    #[test]
    fn generalized_inverse_examples() {
        let cs = TripleModel::CStar { n: 2 };
        let a = ComplexMatrix::real_diag(&[2.0, 0.0]);
        assert!(is_regular(&cs, &a, 1e-9));
        let d = generalized_inverse(&cs, &a, 1e-9).unwrap();
        assert!((&d - &ComplexMatrix::real_diag(&[0.5, 0.0])).max_abs() < 1e-15);

        let e = ComplexMatrix::unit(2, 2, 1, 0);
        assert!((&generalized_inverse(&cs, &e, 1e-9).unwrap() - &e).max_abs() < 1e-15);

        let a = ComplexMatrix::real_diag(&[2.0, 1.0]);
        let d = generalized_inverse(&cs, &a, 1e-9).unwrap();
        assert!((&d - &ComplexMatrix::real_diag(&[0.5, 1.0])).max_abs() < 1e-15);
        assert!(
            generalized_inverse_residuals(&cs, &a, &d, 1e-9)
                .unwrap()
                .worst()
                < 1e-14
        );
        assert!(is_regular(&cs, &cs.zero(), 1e-9));
    }

    #[test]
    fn triple_inverse_is_adjoint_of_moore_penrose() {
        // a full column rank: pinv(a) = (a*a)^{-1} a*, computed by hand for a 3x2 case
        let rect = TripleModel::Rect { m: 3, n: 2 };
        let a = m(&[&[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]]);
        // a*a = [[2,1],[1,2]], inverse = 1/3 [[2,-1],[-1,2]]
        let inv = m(&[&[2.0, -1.0], &[-1.0, 2.0]]).scale_real(1.0 / 3.0);
        let pinv = &inv * &a.adjoint();
        let d = generalized_inverse(&rect, &a, 1e-9).unwrap();
        assert!((&d - &pinv.adjoint()).max_abs() < 1e-14);
    }

    #[test]
    fn positivity_in_peirce2() {
        let cs = TripleModel::CStar { n: 2 };
        let e12 = ComplexMatrix::unit(2, 2, 0, 1);
        let p = peirce2_positivity(&cs, &e12, &e12).unwrap();
        assert!(p.holds(1e-12));
        let p = peirce2_positivity(&cs, &e12, &e12.scale_real(-1.0)).unwrap();
        assert!(!p.holds(1e-12));
    }

    #[test]
    fn psd_sqrt_keeps_the_kernel() {
        let mut rng = crate::random::rng(3);
        let u = crate::random::unitary(&mut rng, 3);
        let h = &(&u * &ComplexMatrix::real_diag(&[4.0, 0.25, 0.0])) * &u.adjoint();
        let r = psd_sqrt(&h).unwrap();
        assert!((&(&r * &r) - &h).norm() < 1e-12);
        let k: ComplexMatrix = ComplexMatrix::from_fn(3, 1, |i, _| u[(i, 2)]);
        assert!((&r * &k).norm() < 1e-14);
    }
}
