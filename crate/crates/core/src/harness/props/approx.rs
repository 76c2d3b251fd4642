use crate::approx::{projection_approximation as approximate, regular_approximation as truncate};
use crate::error::Result;
use crate::harness::ctx::{Check, TrialCtx};
use crate::ideals::inner_ideal_generated;
use crate::spectral::{generalized_inverse, range_tripotent};

use super::INNER_TOL;

pub(super) fn projection_approximation(ctx: &mut TrialCtx) -> Result<Check> {
    let a = ctx.positive(0.0);
    let n = ctx.n();
    let mut worst: f64 = 0.0;
    let mut holds = true;
    for eps in [0.5, 0.1, 0.01] {
        let r = approximate(&ctx.model, &a, eps)?;
        let bound = (a.norm() / eps).ceil() as usize + 1;
        holds &= r.error <= eps && r.combo.len() <= bound;
        for (i, s) in r.combo.iter().enumerate() {
            let p = &s.projection;
            worst = worst.max((&(p * p) - p).norm()).max(p.hermitian_residual());
            for t in &r.combo[i + 1..] {
                worst = worst.max((p * &t.projection).norm());
            }
        }
        worst = worst.max((&r.sum(n) - &a).norm() - r.error);
    }
    Ok(Check::both(worst, holds))
}

pub(super) fn projection_monotone(ctx: &mut TrialCtx) -> Result<Check> {
    let a = if ctx.coin() {
        ctx.positive(0.0)
    } else {
        ctx.hermitian()
    };
    let eps = ctx.uniform(0.05, 1.0);
    let mut previous = f64::INFINITY;
    let mut worst: f64 = 0.0;
    for k in 0..5 {
        let e = approximate(&ctx.model, &a, eps / f64::from(1u32 << k))?.error;
        worst = worst.max(e - previous);
        previous = e;
    }
    Ok(Check::residual(worst.max(0.0)))
}

pub(super) fn regular_approximation(ctx: &mut TrialCtx) -> Result<Check> {
    let a = ctx.regular(0.01, 1.0);
    let mut worst: f64 = 0.0;
    let mut holds = true;
    for eps in [0.5, 0.1] {
        let r = truncate(&ctx.model, &a, eps, INNER_TOL)?;
        holds &= r.verified(eps);
        worst = worst.max(r.reconstruction);
    }
    Ok(Check::both(worst, holds))
}

/// `(E(x), y)` with `y = {x, g, x}` for random `x`, `g`.
fn ideal_and_member(
    ctx: &mut TrialCtx,
) -> Result<(crate::linalg::Subspace, crate::linalg::ComplexMatrix)> {
    let x = if ctx.coin() {
        ctx.deficient()
    } else {
        ctx.element()
    };
    let g = ctx.element();
    let m = ctx.model;
    let ex = inner_ideal_generated(&m, &x, INNER_TOL)?;
    Ok((ex, m.triple_product(&x, &g, &x)?))
}

pub(super) fn density(ctx: &mut TrialCtx) -> Result<Check> {
    let (ex, y) = ideal_and_member(ctx)?;
    let mut worst: f64 = 0.0;
    let mut holds = true;
    for eps in [1e-1, 1e-2, 1e-3] {
        let r = truncate(&ctx.model, &y, eps, INNER_TOL)?;
        worst = worst.max(ex.relative_residual(&r.y));
        holds &= r.error < eps && r.regular;
    }
    Ok(Check::both(worst, holds))
}

pub(super) fn closure(ctx: &mut TrialCtx) -> Result<Check> {
    let (ex, y) = ideal_and_member(ctx)?;
    let m = ctx.model;
    let d = generalized_inverse(&m, &y, INNER_TOL)?;
    let r = range_tripotent(&m, &y, INNER_TOL)?;
    Ok(Check::residual(
        ex.relative_residual(&d)
            .max(ex.relative_residual(r.element())),
    ))
}
