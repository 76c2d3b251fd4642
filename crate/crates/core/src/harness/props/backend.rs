use crate::error::Result;
use crate::harness::ctx::{Check, TrialCtx};
use crate::linalg::{hermitian_eigen, svd, ComplexMatrix, TAU_RANK};

use super::rel;

pub(super) fn svd_reconstruction(ctx: &mut TrialCtx) -> Result<Check> {
    let a = if ctx.coin() {
        ctx.element()
    } else {
        ctx.deficient()
    };
    let s = svd(&a, ctx.tol)?;
    let sorted =
        s.singular.windows(2).all(|w| w[0] >= w[1]) && s.singular.iter().all(|&x| x >= 0.0);
    Ok(Check::both(
        rel((&s.reconstruct() - &a).norm(), a.norm()),
        sorted,
    ))
}

pub(super) fn eigen_unitary(ctx: &mut TrialCtx) -> Result<Check> {
    // projections give repeated eigenvalues
    let h = if ctx.coin() {
        ctx.hermitian()
    } else {
        ctx.projection()
    };
    let n = h.rows();
    let (vals, v) = hermitian_eigen(&h, 1e-12)?;
    let unitary = (&(&v.adjoint() * &v) - &ComplexMatrix::identity(n)).norm();
    let rebuilt = &(&v * &ComplexMatrix::real_diag(&vals)) * &v.adjoint();
    Ok(Check::residual(
        unitary.max(rel((&rebuilt - &h).norm(), h.norm())),
    ))
}

pub(super) fn rank_nullity(ctx: &mut TrialCtx) -> Result<Check> {
    let a = ctx.deficient();
    let b = if ctx.coin() {
        ctx.element()
    } else {
        ctx.deficient()
    };
    let map = ctx.model.materialize_l(&a, &b)?;
    let kernel = map.kernel(TAU_RANK)?;
    let image = map.image(TAU_RANK)?;
    let d = ctx.model.real_dim();
    Ok(Check::holds(
        kernel.dim() + image.dim() == d && image.dim() == map.rank(),
    ))
}
