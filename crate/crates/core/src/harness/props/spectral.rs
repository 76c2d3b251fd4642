use crate::error::Result;
use crate::harness::ctx::{Check, TrialCtx};
use crate::linalg::{svd, ComplexMatrix, Subspace, TAU_RANK};
use crate::peirce::{tripotent_leq, Tripotent};
use crate::rickart::wor_witness;
use crate::spectral::{
    generalized_inverse as ginv, generalized_inverse_residuals, is_regular, peirce2_positivity,
    range_tripotent, support_tripotent,
};

use super::{columns, INNER_TOL};

pub(super) fn generalized_inverse(ctx: &mut TrialCtx) -> Result<Check> {
    let a = ctx.regular(0.1, 1.0);
    let d = ginv(&ctx.model, &a, ctx.tol)?;
    Ok(Check::residual(
        generalized_inverse_residuals(&ctx.model, &a, &d, ctx.tol)?.worst(),
    ))
}

pub(super) fn regular_range_tripotent(ctx: &mut TrialCtx) -> Result<Check> {
    let a = ctx.regular(0.1, 1.0);
    let m = ctx.model;
    let r = range_tripotent(&m, &a, INNER_TOL)?;
    let d = ginv(&m, &a, INNER_TOL)?;
    let witness = wor_witness(&m, &a, &Subspace::zero(m.shape()), INNER_TOL)?;
    let re = r.element();
    let mut worst = (witness.witness.element() - re).norm();
    worst = worst.max((range_tripotent(&m, &d, INNER_TOL)?.element() - re).norm());
    // a ∘_r a† = r and a² ∘_r a† = a in E_2(r)
    worst = worst.max((&m.triple_product(&a, re, &d)? - re).norm());
    let a2 = m.triple_product(&a, re, &a)?;
    worst = worst.max((&m.triple_product(&a2, re, &d)? - &a).norm());
    Ok(Check::both(worst, witness.verified))
}

/// A tripotent supported on the singular complement of `a`: `U_c W V_c*`
/// for a random partial isometry `W`.
fn complement_tripotent(ctx: &mut TrialCtx, a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let s = svd(a, TAU_RANK)?;
    let (m, n) = a.shape();
    let k = s.rank(TAU_RANK);
    if k == m.min(n) {
        return Ok(ComplexMatrix::zeros(m, n));
    }
    let (cm, cn) = (m - k, n - k);
    let rank = ctx.index(0, cm.min(cn));
    let rng = ctx.rng();
    let w = crate::random::tripotent(rng, (cm, cn), rank);
    let w = ctx.record(w);
    Ok(&(&columns(&s.left, k, m) * &w) * &columns(&s.right, k, n).adjoint())
}

pub(super) fn range_tripotent_minimality(ctx: &mut TrialCtx) -> Result<Check> {
    let a = ctx.deficient();
    let m = ctx.model;
    let r = range_tripotent(&m, &a, INNER_TOL)?;
    let w = complement_tripotent(ctx, &a)?;
    let v = Tripotent::certify(&m, r.element() + &w, INNER_TOL)?;
    let pos = peirce2_positivity(&m, v.element(), &a)?;
    let hypothesis = pos.holds(1e-9 * a.norm().max(1.0));
    Ok(Check::both(
        pos.membership.max(pos.self_adjoint),
        hypothesis && tripotent_leq(&m, &r, &v, INNER_TOL),
    ))
}

pub(super) fn peirce2_invertibles(ctx: &mut TrialCtx) -> Result<Check> {
    let (rows, cols) = ctx.shape();
    let rank = ctx.index(1, rows.min(cols));
    let u = ctx.unitary(rows);
    let v = ctx.unitary(cols);
    let (ur, vr) = (columns(&u, 0, rank), columns(&v, 0, rank));
    let e = &ur * &vr.adjoint();
    let core = crate::random::regular_element(ctx.rng(), (rank, rank), 0.2, 1.0);
    // full rank core: an invertible element of E_2(e)
    let core = if svd(&core, TAU_RANK)?.rank(TAU_RANK) < rank {
        ComplexMatrix::identity(rank)
    } else {
        core
    };
    let core = ctx.record(core);
    let a = &(&ur * &core) * &vr.adjoint();
    let m = ctx.model;
    let ra = range_tripotent(&m, &a, INNER_TOL)?;
    let re = ra.element();
    let p2 = m.triple_product(&e, &m.triple_product(&e, re, &e)?, &e)?;
    let membership = (&p2 - re).norm();
    let qe = m.materialize_q(&e)?;
    let qr = m.materialize_q(re)?;
    let unitary = qe.compose(&qe)?.distance(&qr.compose(&qr)?)?;
    Ok(Check::both(
        membership.max(unitary),
        is_regular(&m, &a, INNER_TOL),
    ))
}

pub(super) fn support_below_range(ctx: &mut TrialCtx) -> Result<Check> {
    let k = ctx.min_dim();
    let a = if ctx.coin() {
        let g = ctx.element();
        g.scale_real(1.0 / g.norm())
    } else {
        let ones = ctx.index(1, k);
        let values: Vec<f64> = (0..k)
            .map(|i| {
                if i < ones {
                    1.0
                } else if ctx.coin() {
                    ctx.uniform(0.1, 0.9)
                } else {
                    0.0
                }
            })
            .collect();
        ctx.with_singular_values(&values)
    };
    let m = ctx.model;
    let u = support_tripotent(&m, &a, 1e-9)?;
    let r = range_tripotent(&m, &a, INNER_TOL)?;
    Ok(Check::holds(tripotent_leq(&m, &u, &r, INNER_TOL)))
}
