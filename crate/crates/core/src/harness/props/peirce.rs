use std::f64::consts::TAU;

use crate::error::Result;
use crate::harness::ctx::{Check, TrialCtx};
use crate::linalg::{ComplexMatrix, C64, I, TAU_RANK};
use crate::model::jordan;
use crate::peirce::{
    automorphism_from, peirce2_algebra, peirce_decompose, peirce_rules_residual,
    AutomorphismVariant, PeirceIndex, Tripotent,
};

use super::{columns, hermitian_with, INNER_TOL};

fn random_tripotent(ctx: &mut TrialCtx) -> Result<Tripotent> {
    let e = ctx.tripotent();
    Tripotent::certify(&ctx.model, e, INNER_TOL)
}

pub(super) fn projections(ctx: &mut TrialCtx) -> Result<Check> {
    let e = random_tripotent(ctx)?;
    let pd = peirce_decompose(&ctx.model, &e)?;
    let dims: usize = PeirceIndex::ALL.iter().map(|&k| pd.subspace(k).dim()).sum();
    Ok(Check::both(
        pd.projection_residual()?,
        dims == ctx.model.real_dim(),
    ))
}

pub(super) fn rules(ctx: &mut TrialCtx) -> Result<Check> {
    let e = random_tripotent(ctx)?;
    let pd = peirce_decompose(&ctx.model, &e)?;
    let samples = [ctx.unit_element(), ctx.unit_element(), ctx.unit_element()];
    let free = ctx.unit_element();
    Ok(Check::residual(peirce_rules_residual(
        &ctx.model, &pd, &samples, &free,
    )?))
}

pub(super) fn nonexpansive(ctx: &mut TrialCtx) -> Result<Check> {
    let e = random_tripotent(ctx)?;
    let pd = peirce_decompose(&ctx.model, &e)?;
    let mut worst: f64 = 0.0;
    for k in PeirceIndex::ALL {
        // Hilbert-Schmidt operator norm, then the spectral norm on samples
        worst = worst.max(pd.projection(k).norm() - 1.0);
    }
    for _ in 0..8 {
        let x = ctx.element();
        for k in PeirceIndex::ALL {
            worst = worst.max(pd.component(k, &x)?.norm() / x.norm() - 1.0);
        }
    }
    Ok(Check::residual(worst.max(0.0)))
}

pub(super) fn idempotent_order(ctx: &mut TrialCtx) -> Result<Check> {
    let n = ctx.n();
    let u = ctx.unitary(n);
    let r = ctx.index(0, n);
    let f = hermitian_with(
        &u,
        &(0..n)
            .map(|i| if i < r { 1.0 } else { 0.0 })
            .collect::<Vec<_>>(),
    );
    let ordered = ctx.coin();
    let e = if ordered {
        let s = ctx.index(0, r);
        hermitian_with(
            &u,
            &(0..n)
                .map(|i| if i < s { 1.0 } else { 0.0 })
                .collect::<Vec<_>>(),
        )
    } else {
        ctx.projection()
    };
    let m = ctx.model;
    let uf = m.materialize_u(&f)?.image(TAU_RANK)?;
    let ue = m.materialize_u(&e)?.image(TAU_RANK)?;
    let r1 = (&jordan::circ(&e, &f) - &e).norm();
    let r2 = uf.residual(&e);
    let r3 = ue.inclusion_residual(&uf);
    let probe = 1e-8;
    let verdicts = [r1 <= probe, r2 <= probe, r3 <= probe];
    let agree = verdicts.iter().all(|&v| v == verdicts[0]);
    let residual = if ordered { r1.max(r2).max(r3) } else { 0.0 };
    Ok(Check::both(residual, agree && (!ordered || verdicts[0])))
}

pub(super) fn compression(ctx: &mut TrialCtx) -> Result<Check> {
    let p = ctx.projection();
    let m = ctx.model;
    let alg = peirce2_algebra(
        &m,
        &Tripotent::certify(&m, p.clone(), INNER_TOL)?,
        INNER_TOL,
    )?;
    let x = jordan::u(&p, &ctx.element());
    let y = jordan::u(&p, &ctx.element());
    let compress = |z: &ComplexMatrix| &(&p * z) * &p;
    let product = (&alg.product(&x, &y)? - &compress(&jordan::circ(&x, &y))).norm();
    let involution = (&alg.involution(&x)? - &compress(&x.adjoint())).norm();
    Ok(Check::residual(product.max(involution)))
}

/// Peirce-2 element `P2(e) g` for a random `g`.
fn peirce2_element(ctx: &mut TrialCtx, e: &ComplexMatrix) -> ComplexMatrix {
    let g = ctx.element();
    let m = ctx.model;
    let q = m.triple_product(e, &g, e).expect("shapes checked");
    m.triple_product(e, &q, e).expect("shapes checked")
}

pub(super) fn algebra_axioms(ctx: &mut TrialCtx) -> Result<Check> {
    let (rows, cols) = ctx.shape();
    let k = rows.min(cols);
    let rank = ctx.index(1, k);
    let u = ctx.unitary(rows);
    let v = ctx.unitary(cols);
    let e = &columns(&u, 0, rank) * &columns(&v, 0, rank).adjoint();
    let m = ctx.model;
    let alg = peirce2_algebra(
        &m,
        &Tripotent::certify(&m, e.clone(), INNER_TOL)?,
        INNER_TOL,
    )?;
    let x = peirce2_element(ctx, &e);
    let x = x.scale_real(1.0 / x.norm());
    let y = peirce2_element(ctx, &e);
    let y = y.scale_real(1.0 / y.norm());

    let mut worst: f64 = (&alg.product(&e, &x)? - &x).norm();
    worst = worst.max((&alg.product(&x, &y)? - &alg.product(&y, &x)?).norm());
    let x2 = alg.product(&x, &x)?;
    let jordan =
        &alg.product(&alg.product(&x, &y)?, &x2)? - &alg.product(&x, &alg.product(&y, &x2)?)?;
    worst = worst.max(jordan.norm());
    let xs = alg.involution(&x)?;
    worst = worst.max((&alg.involution(&xs)? - &x).norm());
    worst = worst.max((&alg.involution(&x.scale(I))? + &xs.scale(I)).norm());
    worst = worst.max((&alg.involution(&e)? - &e).norm());
    // (x∘y)* = x*∘y*
    let prod_star =
        &alg.involution(&alg.product(&x, &y)?)? - &alg.product(&xs, &alg.involution(&y)?)?;
    worst = worst.max(prod_star.norm());

    let a = peirce2_element(ctx, &e);
    let gn = alg.u(&a, &alg.involution(&a)?)?.norm();
    let cube = a.norm().powi(3);
    let gn_ok = (gn - cube).abs() <= 1e-6 * cube;
    Ok(Check::both(worst, gn_ok))
}

pub(super) fn automorphisms(ctx: &mut TrialCtx) -> Result<Check> {
    let e = random_tripotent(ctx)?;
    let m = ctx.model;
    let pd = peirce_decompose(&m, &e)?;
    let [a, b, c] = [(); 3].map(|_| ctx.unit_element());
    let abc = m.triple_product(&a, &b, &c)?;
    let mut worst: f64 = 0.0;
    for k in 0..8 {
        let lambda = C64::from_polar(1.0, TAU * k as f64 / 8.0);
        for variant in [AutomorphismVariant::S, AutomorphismVariant::R] {
            let s = automorphism_from(&pd, lambda, variant)?;
            let lhs = s.apply(&abc)?;
            let rhs = m.triple_product(&s.apply(&a)?, &s.apply(&b)?, &s.apply(&c)?)?;
            worst = worst.max((&lhs - &rhs).norm());
        }
    }
    Ok(Check::residual(worst))
}
