//! Constructive witnesses for the Rickart-type properties: weakly Rickart and
//! weakly order-Rickart tripotents, finite reversed witnesses, Jordan range
//! projections and unit/annihilator projections.

use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideals::{
    hereditary_residual, inner_ideal_generated, inner_ideal_residual, is_orthogonal,
    orthogonal_annihilator, orthogonal_to_element,
};
use crate::linalg::{svd, ComplexMatrix, RealifiedMap, Subspace, TAU_RANK};
use crate::model::{jordan, TripleModel};
use crate::peirce::{peirce_decompose, tripotent_residual, PeirceIndex, Tripotent};
use crate::random;
use crate::spectral::{
    left_projection, peirce2_positivity, polar_decomposition, range_tripotent, right_projection,
    support_projection,
};

/// Default number of random samples for sampled checks.
pub const SAMPLES: usize = 64;

#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub witness: Tripotent,
    pub residuals: BTreeMap<String, f64>,
    pub positivity_margin: f64,
    pub verified: bool,
    pub seed: u64,
    pub tol: f64,
}

impl WitnessReport {
    fn new(witness: ComplexMatrix, tol: f64, seed: u64) -> Self {
        Self {
            witness: Tripotent::trusted(witness, tol),
            residuals: BTreeMap::new(),
            positivity_margin: 0.0,
            verified: false,
            seed,
            tol,
        }
    }

    fn record(&mut self, name: &str, value: f64) {
        let slot = self.residuals.entry(name.to_owned()).or_insert(0.0);
        *slot = slot.max(value);
    }

    fn finish(mut self) -> Self {
        self.verified =
            self.residuals.values().all(|&r| r <= self.tol) && self.positivity_margin >= -self.tol;
        self
    }

    pub fn worst_residual(&self) -> f64 {
        self.residuals
            .values()
            .copied()
            .fold((-self.positivity_margin).max(0.0), f64::max)
    }
}

impl Serialize for WitnessReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut residuals = self.residuals.clone();
        residuals.insert("positivity".into(), (-self.positivity_margin).max(0.0));
        let mut map = s.serialize_map(Some(4))?;
        map.serialize_entry("witness", self.witness.element())?;
        map.serialize_entry("residuals", &residuals)?;
        map.serialize_entry("verified", &self.verified)?;
        map.serialize_entry("seed", &self.seed)?;
        map.end()
    }
}

fn check_ideal(model: &TripleModel, j: &Subspace, tol: f64) -> Result<()> {
    if j.shape() != model.shape() {
        return Err(Error::ShapeMismatch {
            expected: model.shape(),
            got: j.shape(),
        });
    }
    let residual = inner_ideal_residual(model, j)?;
    if residual > tol {
        return Err(Error::NotInnerIdeal { residual });
    }
    Ok(())
}

/// Worst `||P b - b||` over the basis of `s`.
fn containment(p: &RealifiedMap, s: &Subspace) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for b in s.basis() {
        worst = worst.max((&p.apply(b)? - b).norm());
    }
    Ok(worst)
}

fn relative(value: f64, scale: f64) -> f64 {
    value / scale.max(1.0)
}

/// Polar isometry `e` of `x` with `A(x) ⊆ A_2(e)`, `J ⊆ A_0(e)`,
/// `e*e = RP(x)`, `ee* = LP(x)` and `x` positive in `(A_2(e), •_e, *_e)`.
pub fn weakly_rickart_witness(
    model: &TripleModel,
    x: &ComplexMatrix,
    j: &Subspace,
    tol: f64,
) -> Result<WitnessReport> {
    model.require_cstar()?;
    model.check(x)?;
    check_ideal(model, j, tol)?;
    orthogonal_to_element(model, j, x, tol)?;
    let polar = polar_decomposition(model, x, tol)?;
    let e = polar.isometry.element().clone();
    let pd = peirce_decompose(model, &polar.isometry)?;
    let ax = inner_ideal_generated(model, x, tol)?;
    let xn = x.norm();

    let mut report = WitnessReport::new(e.clone(), tol, 0);
    report.record("tripotent", tripotent_residual(model, &e)?);
    report.record(
        "inner_ideal_in_peirce2",
        containment(pd.projection(PeirceIndex::Two), &ax)?,
    );
    report.record(
        "ideal_in_peirce0",
        containment(pd.projection(PeirceIndex::Zero), j)?,
    );
    report.record(
        "right_projection",
        (&(&e.adjoint() * &e) - &right_projection(x, tol)?).norm(),
    );
    report.record(
        "left_projection",
        (&(&e * &e.adjoint()) - &left_projection(x, tol)?).norm(),
    );
    let pos = peirce2_positivity(model, &e, x)?;
    report.record("peirce2_membership", relative(pos.membership, xn));
    report.record("self_adjoint", relative(pos.self_adjoint, xn));
    report.positivity_margin = relative(pos.min_eigenvalue, xn);
    Ok(report.finish())
}

/// Range tripotent `e = r(x)` with `x` positive in `E_2(e)`, `J ⊆ E_0(e)` and
/// `{x}^⊥ = E_0(e)`.
pub fn wor_witness(
    model: &TripleModel,
    x: &ComplexMatrix,
    j: &Subspace,
    tol: f64,
) -> Result<WitnessReport> {
    model.check(x)?;
    check_ideal(model, j, tol)?;
    orthogonal_to_element(model, j, x, tol)?;
    let r = range_tripotent(model, x, tol)?;
    let e = r.element().clone();
    let pd = peirce_decompose(model, &r)?;
    let ann = orthogonal_annihilator(model, std::slice::from_ref(x), tol)?;
    let xn = x.norm();

    let mut report = WitnessReport::new(e.clone(), tol, 0);
    report.record("tripotent", tripotent_residual(model, &e)?);
    let pos = peirce2_positivity(model, &e, x)?;
    report.record("peirce2_membership", relative(pos.membership, xn));
    report.record("self_adjoint", relative(pos.self_adjoint, xn));
    report.positivity_margin = relative(pos.min_eigenvalue, xn);
    report.record(
        "ideal_in_peirce0",
        containment(pd.projection(PeirceIndex::Zero), j)?,
    );
    report.record(
        "annihilator_in_peirce0",
        containment(pd.projection(PeirceIndex::Zero), &ann)?,
    );
    report.record(
        "peirce0_in_annihilator",
        pd.subspace(PeirceIndex::Zero).inclusion_residual(&ann),
    );
    let dim_gap = pd.subspace(PeirceIndex::Zero).dim().abs_diff(ann.dim());
    report.record("annihilator_dimension", dim_gap as f64);
    Ok(report.finish())
}

/// Condition (b) of the polar characterisation: `x` is positive in
/// `(A_2(e), •_e, *_e)` and `A_0(e) = {x}^⊥`.
pub fn polar_isometry_characterization(
    model: &TripleModel,
    x: &ComplexMatrix,
    e: &Tripotent,
    tol: f64,
) -> Result<bool> {
    model.require_cstar()?;
    model.check(x)?;
    model.check(e.element())?;
    let xn = x.norm();
    let pos = peirce2_positivity(model, e.element(), x)?;
    if !pos.holds(tol * xn.max(1.0)) {
        return Ok(false);
    }
    let pd = peirce_decompose(model, e)?;
    let ann = orthogonal_annihilator(model, std::slice::from_ref(x), tol)?;
    let s0 = pd.subspace(PeirceIndex::Zero);
    let probe = tol.max(1e-8);
    Ok(s0.same_as(&ann, probe))
}

/// Finite reversed witness: `e = (1 - ww*) u*` with `w` the sum of the polar
/// isometries of the family and `u` a unitary carrying `LP(w)` onto `RP(w)`.
/// Verifies `J ⊆ A_2(e)` and `A(x_i) ⊆ A_0(e)` for each member.
pub fn finite_reversed_witness(
    model: &TripleModel,
    xs: &[ComplexMatrix],
    j: &Subspace,
    tol: f64,
) -> Result<WitnessReport> {
    let n = model.require_cstar()?;
    for x in xs {
        model.check(x)?;
    }
    for a in 0..xs.len() {
        for b in a + 1..xs.len() {
            if !is_orthogonal(model, &xs[a], &xs[b], tol) {
                return Err(Error::NotMutuallyOrthogonal(a, b));
            }
        }
    }
    check_ideal(model, j, tol)?;
    for x in xs {
        orthogonal_to_element(model, j, x, tol)?;
    }

    let mut w = model.zero();
    for x in xs {
        w += polar_decomposition(model, x, tol)?.isometry.element();
    }
    let s = svd(&w, tol)?;
    let u = &s.right * &s.left.adjoint();
    let id = ComplexMatrix::identity(n);
    let lp = &w * &w.adjoint();
    let rp = &w.adjoint() * &w;
    let e = &(&id - &lp) * &u.adjoint();

    let mut report = WitnessReport::new(e.clone(), tol, 0);
    report.record("tripotent", tripotent_residual(model, &e)?);
    report.record("unitary", (&(&u.adjoint() * &u) - &id).norm());
    report.record(
        "range_transport",
        (&(&(&u * &lp) * &u.adjoint()) - &rp).norm(),
    );
    let pd = peirce_decompose(model, &report.witness)?;
    report.record(
        "ideal_in_peirce2",
        containment(pd.projection(PeirceIndex::Two), j)?,
    );
    report.record("elements_in_peirce0", 0.0);
    for x in xs {
        let ax = inner_ideal_generated(model, x, tol)?;
        report.record(
            "elements_in_peirce0",
            containment(pd.projection(PeirceIndex::Zero), &ax)?,
        );
    }
    Ok(report.finish())
}

fn require_positive(a: &ComplexMatrix, tol: f64) -> Result<()> {
    let herm = a.hermitian_residual();
    if herm > tol * a.norm().max(1.0) {
        return Err(Error::NotHermitian { residual: herm });
    }
    let (vals, _) = crate::linalg::hermitian_eigen(&a.hermitian_part(), tol)?;
    let min_eigenvalue = vals.last().copied().unwrap_or(0.0);
    if min_eigenvalue < -tol * a.norm().max(1.0) {
        return Err(Error::NotPositive { min_eigenvalue });
    }
    Ok(())
}

/// Projection onto the null space of a positive matrix, through its SVD so
/// that samples do not reuse the eigen route of the projection under test.
fn null_projection(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let s = svd(a, TAU_RANK)?;
    let cut = TAU_RANK * s.max_singular();
    let n = a.rows();
    let zero: Vec<usize> = (0..n).filter(|&k| s.singular[k] <= cut).collect();
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        zero.iter()
            .map(|&k| s.left[(i, k)] * s.left[(j, k)].conj())
            .sum()
    }))
}

/// Jordan range projection of a positive `a`: the spectral projection onto
/// the nonzero eigenvalues. Verifies `p∘a = a`, `p∘z = 0` on sampled
/// self-adjoint `z` with `U_z(a) = 0`, and `p ≤ q` for sampled projections
/// `q` with `q∘a = a`.
pub fn jordan_range_projection(
    model: &TripleModel,
    a: &ComplexMatrix,
    tol: f64,
    seed: u64,
) -> Result<WitnessReport> {
    let n = model.require_jbstar()?;
    model.check(a)?;
    require_positive(a, tol)?;
    let p = support_projection(&a.hermitian_part(), tol)?;
    let an = a.norm();
    let mut report = WitnessReport::new(p.clone(), tol, seed);
    report.record(
        "projection",
        (&(&p * &p) - &p).norm().max(p.hermitian_residual()),
    );
    report.record(
        "unit_for_a",
        relative((&jordan::circ(&p, a) - a).norm(), an),
    );

    let k = null_projection(a)?;
    let mut rng = random::rng(seed);
    report.record("annihilated_samples", 0.0);
    report.record("minimality", 0.0);
    for _ in 0..SAMPLES {
        let h = random::hermitian(&mut rng, n);
        let z = &(&k * &h) * &k;
        let uza = relative(jordan::u(&z, a).norm(), an * z.norm() * z.norm());
        report.record("sample_in_variety", uza);
        report.record("annihilated_samples", jordan::circ(&p, &z).norm());

        let r = support_projection(&(&(&k * &random::positive(&mut rng, n, 0.0)) * &k), tol)?;
        let keep = random::uniform(&mut rng, 0.0, 1.0) < 0.5;
        let q = if keep { &p + &r } else { p.clone() };
        // q∘a = a holds by construction; p ≤ q means p∘q = p
        report.record(
            "sample_unit",
            relative((&jordan::circ(&q, a) - a).norm(), an),
        );
        report.record("minimality", (&jordan::circ(&p, &q) - &p).norm());
    }
    Ok(report.finish())
}

/// Which Rickart-type hypothesis a unit/annihilator projection is built under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PedersenCase {
    /// `B` and `C` both generated by single positive elements.
    Sajbw,
    /// `B` generated by a positive element, `C` arbitrary.
    WeaklyRickart,
    /// `C` generated by a positive element, `B` arbitrary.
    Rickart,
    /// `B` and `C` arbitrary.
    Baer,
}

impl std::str::FromStr for PedersenCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sajbw" => Ok(Self::Sajbw),
            "weaklyrickart" | "weakly-rickart" | "wr" => Ok(Self::WeaklyRickart),
            "rickart" => Ok(Self::Rickart),
            "baer" => Ok(Self::Baer),
            other => Err(Error::InvalidArgument(format!("unknown case `{other}`"))),
        }
    }
}

/// A side of the unit/annihilator problem: a positive generator or a
/// self-adjoint inner ideal given by a basis.
#[derive(Clone, Debug)]
pub enum PedersenInput {
    Generator(ComplexMatrix),
    Subspace(Subspace),
}

impl PedersenInput {
    fn is_generator(&self) -> bool {
        matches!(self, Self::Generator(_))
    }

    /// Spanning elements and the inner ideal they describe.
    fn resolve(&self, model: &TripleModel, tol: f64) -> Result<(Vec<ComplexMatrix>, Subspace)> {
        match self {
            Self::Generator(g) => {
                model.check(g)?;
                require_positive(g, tol)?;
                Ok((vec![g.clone()], inner_ideal_generated(model, g, tol)?))
            }
            Self::Subspace(s) => {
                check_ideal(model, s, tol)?;
                let residual = hereditary_residual(model, s)?;
                if residual > tol {
                    return Err(Error::NotHereditary { residual });
                }
                Ok((s.basis().to_vec(), s.clone()))
            }
        }
    }
}

/// `Σ b b* + b* b` over spanning elements: a positive element whose range
/// projection is the unit of the ideal they span.
fn strictly_positive(elements: &[ComplexMatrix], n: usize) -> ComplexMatrix {
    let mut s = ComplexMatrix::zeros(n, n);
    for b in elements {
        s += &(b * &b.adjoint());
        s += &(&b.adjoint() * b);
    }
    s.hermitian_part()
}

/// Projection `e` that is a unit for `B` (`e∘b = b`) and annihilates `C`
/// (`e∘c = 0`). Returns the positive element it was built from and the report.
pub fn pedersen_witness(
    model: &TripleModel,
    case: PedersenCase,
    b: &PedersenInput,
    c: &PedersenInput,
    tol: f64,
    seed: u64,
) -> Result<(ComplexMatrix, WitnessReport)> {
    let n = model.require_jbstar()?;
    let (need_b, need_c) = match case {
        PedersenCase::Sajbw => (true, true),
        PedersenCase::WeaklyRickart => (true, false),
        PedersenCase::Rickart => (false, true),
        PedersenCase::Baer => (false, false),
    };
    if (need_b && !b.is_generator()) || (need_c && !c.is_generator()) {
        return Err(Error::InvalidArgument(format!(
            "case {case:?} requires a generator"
        )));
    }
    let (b_span, b_ideal) = b.resolve(model, tol)?;
    let (c_span, c_ideal) = c.resolve(model, tol)?;
    for u in &b_span {
        for v in &c_span {
            let r = crate::ideals::orthogonality_residual(model, u, v)?;
            if r > tol * (u.norm() * v.norm()).max(1.0) {
                return Err(Error::NotOrthogonal { residual: r });
            }
        }
    }

    let (positive, e) = match (case, c) {
        (PedersenCase::Rickart, PedersenInput::Generator(g)) => {
            let rp = support_projection(&g.hermitian_part(), tol)?;
            let e = &ComplexMatrix::identity(n) - &rp;
            (e.clone(), e)
        }
        _ => {
            let s = strictly_positive(&b_span, n);
            let e = support_projection(&s, tol)?;
            (s, e)
        }
    };

    let mut report = WitnessReport::new(e.clone(), tol, seed);
    report.record(
        "projection",
        (&(&e * &e) - &e).norm().max(e.hermitian_residual()),
    );
    report.record("unit_for_b", 0.0);
    report.record("fixes_b", 0.0);
    report.record("annihilates_c", 0.0);
    let mut rng = random::rng(seed);
    for _ in 0..SAMPLES {
        if !b_ideal.is_zero() {
            let x = random::in_subspace(&mut rng, &b_ideal);
            let xn = x.norm();
            report.record(
                "unit_for_b",
                relative((&jordan::circ(&e, &x) - &x).norm(), xn),
            );
            report.record("fixes_b", relative((&jordan::u(&e, &x) - &x).norm(), xn));
        }
        if !c_ideal.is_zero() {
            let x = random::in_subspace(&mut rng, &c_ideal);
            report.record(
                "annihilates_c",
                relative(jordan::circ(&e, &x).norm(), x.norm()),
            );
        }
    }
    Ok((positive, report.finish()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::peirce::CERT_TOL;

    fn cs(n: usize) -> TripleModel {
        TripleModel::CStar { n }
    }

    fn span(n: usize, units: &[(usize, usize)]) -> Subspace {
        let els: Vec<ComplexMatrix> = units
            .iter()
            .map(|&(i, j)| ComplexMatrix::unit(n, n, i, j))
            .collect();
        Subspace::complex_span((n, n), &els, TAU_RANK).unwrap()
    }

    #[test]
    fn weakly_rickart_examples() {
        let m = cs(3);
        let x = ComplexMatrix::real_diag(&[1.0, 2.0, 0.0]);
        let r = weakly_rickart_witness(&m, &x, &span(3, &[(2, 2)]), CERT_TOL).unwrap();
        assert!(r.verified, "{:?}", r.residuals);
        assert!(
            (r.witness.element() - &ComplexMatrix::real_diag(&[1.0, 1.0, 0.0])).max_abs() < 1e-12
        );
        assert!(r.worst_residual() <= 1e-10);

        let r = weakly_rickart_witness(&cs(2), &cs(2).zero(), &Subspace::full((2, 2)), CERT_TOL)
            .unwrap();
        assert!(r.verified && r.witness.element().max_abs() == 0.0);

        let e12 = ComplexMatrix::unit(2, 2, 0, 1);
        let r = weakly_rickart_witness(&cs(2), &e12, &Subspace::zero((2, 2)), CERT_TOL).unwrap();
        assert!(r.verified && (r.witness.element() - &e12).max_abs() < 1e-14);

        let err = weakly_rickart_witness(&m, &x, &span(3, &[(0, 0)]), CERT_TOL).unwrap_err();
        assert!(matches!(err, Error::NotOrthogonal { .. }));
    }

    #[test]
    fn wor_examples() {
        let e12 = ComplexMatrix::unit(2, 2, 0, 1);
        let r = wor_witness(&cs(2), &e12, &Subspace::zero((2, 2)), CERT_TOL).unwrap();
        assert!(r.verified && (r.witness.element() - &e12).max_abs() < 1e-14);

        let r = wor_witness(&cs(2), &cs(2).zero(), &Subspace::full((2, 2)), CERT_TOL).unwrap();
        assert!(r.verified && r.witness.element().max_abs() == 0.0);

        let x = ComplexMatrix::real_diag(&[1.0, 2.0, 0.0]);
        let r = wor_witness(&cs(3), &x, &span(3, &[(2, 2)]), CERT_TOL).unwrap();
        assert!(r.verified, "{:?}", r.residuals);
        assert!(
            (r.witness.element() - &ComplexMatrix::real_diag(&[1.0, 1.0, 0.0])).max_abs() < 1e-12
        );

        let rect = TripleModel::Rect { m: 2, n: 3 };
        let x = ComplexMatrix::rect_diag(2, 3, &[0.5, 0.0]);
        let r = wor_witness(&rect, &x, &Subspace::zero((2, 3)), CERT_TOL).unwrap();
        assert!(r.verified, "{:?}", r.residuals);
    }

    #[test]
    fn polar_characterization_examples() {
        let m = cs(2);
        let x = ComplexMatrix::real_diag(&[1.0, 0.0]);
        let id = Tripotent::certify(&m, ComplexMatrix::identity(2), CERT_TOL).unwrap();
        assert!(!polar_isometry_characterization(&m, &x, &id, CERT_TOL).unwrap());
        let e = polar_decomposition(&m, &x, CERT_TOL).unwrap().isometry;
        assert!(polar_isometry_characterization(&m, &x, &e, CERT_TOL).unwrap());
        let zero = Tripotent::certify(&m, m.zero(), CERT_TOL).unwrap();
        assert!(polar_isometry_characterization(&m, &m.zero(), &zero, CERT_TOL).unwrap());
    }

    #[test]
    fn finite_reversed_examples() {
        let m = cs(2);
        let e12 = ComplexMatrix::unit(2, 2, 0, 1);
        let r = finite_reversed_witness(&m, &[e12], &Subspace::zero((2, 2)), CERT_TOL).unwrap();
        assert!(r.verified, "{:?}", r.residuals);
        assert!((r.witness.element() - &ComplexMatrix::unit(2, 2, 1, 0)).max_abs() < 1e-14);

        let r = finite_reversed_witness(&m, &[], &Subspace::full((2, 2)), CERT_TOL).unwrap();
        assert!(r.verified);
        let e = r.witness.element();
        assert!((&(e * &e.adjoint()) - &ComplexMatrix::identity(2)).max_abs() < 1e-14);

        let m4 = cs(4);
        let xs = [
            ComplexMatrix::unit(4, 4, 0, 1),
            ComplexMatrix::unit(4, 4, 2, 3),
        ];
        let r = finite_reversed_witness(&m4, &xs, &Subspace::zero((4, 4)), CERT_TOL).unwrap();
        assert!(
            r.verified && r.worst_residual() <= 1e-9,
            "{:?}",
            r.residuals
        );

        let bad = [
            ComplexMatrix::unit(2, 2, 0, 1),
            ComplexMatrix::unit(2, 2, 0, 0),
        ];
        assert_eq!(
            finite_reversed_witness(&m, &bad, &Subspace::zero((2, 2)), CERT_TOL).unwrap_err(),
            Error::NotMutuallyOrthogonal(0, 1)
        );
    }

    #[test]
    fn jordan_range_projection_examples() {
        let m = TripleModel::JBStar { n: 3 };
        let r =
            jordan_range_projection(&m, &ComplexMatrix::real_diag(&[2.0, 3.0, 0.0]), CERT_TOL, 1)
                .unwrap();
        assert!(r.verified, "{:?}", r.residuals);
        assert!(
            (r.witness.element() - &ComplexMatrix::real_diag(&[1.0, 1.0, 0.0])).max_abs() < 1e-14
        );
        let p = ComplexMatrix::real_diag(&[0.0, 1.0, 1.0]);
        let r = jordan_range_projection(&m, &p, CERT_TOL, 1).unwrap();
        assert!((r.witness.element() - &p).max_abs() < 1e-14);
        let r = jordan_range_projection(&m, &m.zero(), CERT_TOL, 1).unwrap();
        assert!(r.verified && r.witness.element().max_abs() == 0.0);
        assert!(matches!(
            jordan_range_projection(
                &m,
                &ComplexMatrix::real_diag(&[1.0, -1.0, 0.0]),
                CERT_TOL,
                1
            ),
            Err(Error::NotPositive { .. })
        ));
    }

    #[test]
    fn pedersen_examples() {
        let m = TripleModel::JBStar { n: 2 };
        let b = PedersenInput::Generator(ComplexMatrix::real_diag(&[1.0, 0.0]));
        let c = PedersenInput::Generator(ComplexMatrix::real_diag(&[0.0, 1.0]));
        for case in [
            PedersenCase::Sajbw,
            PedersenCase::WeaklyRickart,
            PedersenCase::Rickart,
            PedersenCase::Baer,
        ] {
            let (_, r) = pedersen_witness(&m, case, &b, &c, CERT_TOL, 3).unwrap();
            assert!(r.verified, "{case:?} {:?}", r.residuals);
            assert!(
                (r.witness.element() - &ComplexMatrix::real_diag(&[1.0, 0.0])).max_abs() < 1e-14
            );
        }

        let zero = PedersenInput::Subspace(Subspace::zero((2, 2)));
        let full = PedersenInput::Subspace(Subspace::full((2, 2)));
        let (_, r) = pedersen_witness(&m, PedersenCase::Baer, &zero, &full, CERT_TOL, 3).unwrap();
        assert!(r.verified && r.witness.element().max_abs() < 1e-15);
        let (_, r) = pedersen_witness(&m, PedersenCase::Baer, &full, &zero, CERT_TOL, 3).unwrap();
        assert!(
            r.verified && (r.witness.element() - &ComplexMatrix::identity(2)).max_abs() < 1e-14
        );

        assert!(matches!(
            pedersen_witness(&m, PedersenCase::Sajbw, &full, &zero, CERT_TOL, 3),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            pedersen_witness(&m, PedersenCase::Baer, &b, &b, CERT_TOL, 3),
            Err(Error::NotOrthogonal { .. })
        ));
    }
}
