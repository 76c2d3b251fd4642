use crate::error::Result;
use crate::harness::ctx::{Check, TrialCtx};
use crate::linalg::{RealifiedMap, C64};
use crate::model::{jordan, TripleModel};

pub(super) fn jordan_identity(ctx: &mut TrialCtx) -> Result<Check> {
    let a = ctx.unit_element();
    let b = ctx.unit_element();
    let a2 = jordan::circ(&a, &a);
    let lhs = jordan::circ(&jordan::circ(&a, &b), &a2);
    let rhs = jordan::circ(&a, &jordan::circ(&b, &a2));
    Ok(Check::residual((&lhs - &rhs).norm()))
}

/// `U_a` in the JB*-algebra model, `Q(a)` otherwise.
fn quadratic(model: &TripleModel, a: &crate::linalg::ComplexMatrix) -> Result<RealifiedMap> {
    match model {
        TripleModel::JBStar { .. } => model.materialize_u(a),
        _ => model.materialize_q(a),
    }
}

pub(super) fn fundamental_identity(ctx: &mut TrialCtx) -> Result<Check> {
    let a = ctx.unit_element();
    let b = ctx.unit_element();
    let model = ctx.model;
    let qa = quadratic(&model, &a)?;
    let qb = quadratic(&model, &b)?;
    let qab = qa.apply(&b)?;
    let lhs = qa.compose(&qb)?.compose(&qa)?;
    Ok(Check::residual(lhs.distance(&quadratic(&model, &qab)?)?))
}

pub(super) fn ternary_identity(ctx: &mut TrialCtx) -> Result<Check> {
    let [x, y, a, b, c] = [(); 5].map(|_| ctx.unit_element());
    let m = ctx.model;
    let t = |p: &_, q: &_, r: &_| m.triple_product(p, q, r);
    let lhs = t(&x, &y, &t(&a, &b, &c)?)?;
    let rhs = &(&t(&t(&x, &y, &a)?, &b, &c)? - &t(&a, &t(&y, &x, &b)?, &c)?)
        + &t(&a, &b, &t(&x, &y, &c)?)?;
    Ok(Check::residual((&lhs - &rhs).norm()))
}

pub(super) fn power_identities(ctx: &mut TrialCtx) -> Result<Check> {
    let a = ctx.unit_element();
    let m = ctx.model;
    let ua = m.materialize_u(&a)?;
    let mut acc = ua.clone();
    let mut worst: f64 = 0.0;
    for n in 1..=4u32 {
        if n > 1 {
            acc = acc.compose(&ua)?;
        }
        worst = worst.max(acc.distance(&m.materialize_u(&jordan::power(&a, n))?)?);
    }
    let l = ctx.index(1, 3) as u32;
    let mm = ctx.index(1, 3) as u32;
    let n = ctx.index(1, 3) as u32;
    let p = |k| jordan::power(&a, k);
    let t = m.materialize_t(&p(l))?;
    let u = m.materialize_u2(&p(mm), &p(n))?;
    let left = t.compose(&u)?.scale(2.0);
    let middle = u.compose(&t)?.scale(2.0);
    let right = m
        .materialize_u2(&p(mm + l), &p(n))?
        .add(&m.materialize_u2(&p(mm), &p(n + l))?)?;
    worst = worst
        .max(left.distance(&middle)?)
        .max(left.distance(&right)?);
    Ok(Check::residual(worst))
}

pub(super) fn non_expansive(ctx: &mut TrialCtx) -> Result<Check> {
    let (a, b, c) = if ctx.uniform(0.0, 1.0) < 0.25 {
        // the bound is attained on a tripotent
        let e = ctx.tripotent();
        (e.clone(), e.clone(), e)
    } else {
        (ctx.element(), ctx.element(), ctx.element())
    };
    let bound = a.norm() * b.norm() * c.norm();
    let t = ctx.model.triple_product(&a, &b, &c)?.norm();
    let excess = if bound > 0.0 {
        (t / bound - 1.0).max(0.0)
    } else {
        t
    };
    Ok(Check::residual(excess))
}

pub(super) fn linearity(ctx: &mut TrialCtx) -> Result<Check> {
    let [a, a2, b, b2, c] = [(); 5].map(|_| ctx.unit_element());
    let lambda = C64::new(ctx.uniform(-1.0, 1.0), ctx.uniform(-1.0, 1.0));
    let m = ctx.model;
    let t = |p: &_, q: &_, r: &_| m.triple_product(p, q, r);
    let base = t(&a, &b, &c)?;
    let outer = &t(&(&a + &a2.scale(lambda)), &b, &c)? - &(&base + &t(&a2, &b, &c)?.scale(lambda));
    let middle =
        &t(&a, &(&b + &b2.scale(lambda)), &c)? - &(&base + &t(&a, &b2, &c)?.scale(lambda.conj()));
    let symmetric = &base - &t(&c, &b, &a)?;
    Ok(Check::residual(
        outer.norm().max(middle.norm()).max(symmetric.norm()),
    ))
}

pub(super) fn gelfand_naimark(ctx: &mut TrialCtx) -> Result<Check> {
    let a = ctx.element();
    let cube = a.norm().powi(3);
    let m = ctx.model;
    let mut gap = (m.triple_product(&a, &a, &a)?.norm() - cube).abs();
    if let TripleModel::JBStar { .. } = m {
        gap = gap.max((jordan::u(&a, &a.adjoint()).norm() - cube).abs());
    }
    Ok(Check::residual(gap / cube))
}
