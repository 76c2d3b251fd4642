use crate::error::Result;
use crate::harness::ctx::{Check, TrialCtx};
use crate::ideals::{
    inner_ideal_generated, is_orthogonal, orthogonal_annihilator, orthogonality_residual,
    quadratic_annihilator_residual, subspaces_orthogonality_residual, QuadraticSide,
};
use crate::linalg::{svd, ComplexMatrix, Subspace, TAU_RANK};
use crate::model::jordan;

use super::{orthogonal_pair, rel, INNER_TOL};

pub(super) fn orthogonality_symmetry(ctx: &mut TrialCtx) -> Result<Check> {
    let constructed = ctx.coin();
    let (a, b) = if constructed {
        orthogonal_pair(ctx)
    } else {
        (ctx.element(), ctx.element())
    };
    let m = ctx.model;
    let ab = is_orthogonal(&m, &a, &b, ctx.tol);
    let ba = is_orthogonal(&m, &b, &a, ctx.tol);
    let residual = if constructed {
        orthogonality_residual(&m, &a, &b)?.max(orthogonality_residual(&m, &b, &a)?)
            / (a.norm() * b.norm()).max(1.0)
    } else {
        0.0
    };
    Ok(Check::both(residual, ab == ba && (!constructed || ab)))
}

pub(super) fn generated_ideals_orthogonal(ctx: &mut TrialCtx) -> Result<Check> {
    let (a, b) = orthogonal_pair(ctx);
    let m = ctx.model;
    let ea = inner_ideal_generated(&m, &a, INNER_TOL)?;
    let eb = inner_ideal_generated(&m, &b, INNER_TOL)?;
    Ok(Check::residual(subspaces_orthogonality_residual(
        &m, &ea, &eb,
    )?))
}

pub(super) fn annihilator_lattice(ctx: &mut TrialCtx) -> Result<Check> {
    let m = ctx.model;
    let x = ctx.deficient();
    let small = orthogonal_annihilator(&m, std::slice::from_ref(&x), INNER_TOL)?;
    let y = if ctx.coin() || small.is_zero() {
        ctx.deficient()
    } else {
        ctx.in_subspace(&small)
    };
    let set = [x.clone(), y];
    let big = orthogonal_annihilator(&m, &set, INNER_TOL)?;
    // S1 ⊆ S2 ⟹ S2^⊥ ⊆ S1^⊥
    let mut worst = big.inclusion_residual(&small);
    // span S ∩ S^⊥ = {0}
    let span = Subspace::complex_span(m.shape(), &set, TAU_RANK)?;
    let meet = span.intersection(&big)?;
    // S ⊆ S^⊥⊥
    let double = orthogonal_annihilator(&m, small.basis(), INNER_TOL)?;
    worst = worst.max(double.relative_residual(&x));
    Ok(Check::both(worst, meet.is_zero()))
}

/// Projection onto the common null space of positive matrices.
fn null_projection(set: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    let n = set[0].rows();
    let mut sum = ComplexMatrix::zeros(n, n);
    for s in set {
        sum += s;
    }
    let d = svd(&sum, TAU_RANK)?;
    let cut = TAU_RANK * d.max_singular();
    let zero: Vec<usize> = (0..n).filter(|&k| d.singular[k] <= cut).collect();
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        zero.iter()
            .map(|&k| d.left[(i, k)] * d.left[(j, k)].conj())
            .sum()
    }))
}

const SIDE_SAMPLES: usize = 64;

pub(super) fn positive_annihilator(ctx: &mut TrialCtx) -> Result<Check> {
    let m = ctx.model;
    let p1 = ctx.deficient_positive();
    let mut set = vec![p1.clone()];
    if ctx.coin() {
        let k = null_projection(&set)?;
        let g = ctx.positive(0.0);
        let p2 = &(&k * &g) * &k;
        // keep the union rank deficient
        if svd(&(&p1 + &p2), TAU_RANK)?.rank(TAU_RANK) < ctx.n() {
            set.push(p2.hermitian_part());
        }
    }
    let ann = orthogonal_annihilator(&m, &set, INNER_TOL)?;
    let k = null_projection(&set)?;
    let scale: f64 = set.iter().map(|s| s.norm()).fold(0.0, f64::max);
    let probe = 1e-8;
    let mut worst: f64 = 0.0;
    let mut agree = true;
    for _ in 0..SIDE_SAMPLES {
        // from the annihilator side
        let z = ctx.in_subspace(&ann).hermitian_part();
        let zn = z.norm();
        if zn > 0.0 {
            worst = worst.max(
                quadratic_annihilator_residual(&m, &z, &set, QuadraticSide::Outer)?
                    / (zn * zn * scale),
            );
        }
        // from the quadratic side: self-adjoint z with s^{1/2} z = 0
        let h = ctx.hermitian();
        let z = &(&k * &h) * &k;
        worst = worst.max(ann.relative_residual(&z));
        // off both sides
        let z = ctx.hermitian();
        let zn = z.norm();
        let quad = quadratic_annihilator_residual(&m, &z, &set, QuadraticSide::Outer)?
            / (zn * zn * scale)
            <= probe;
        agree &= quad == (ann.relative_residual(&z) <= probe);
    }
    Ok(Check::both(worst, agree))
}

pub(super) fn positive_factor(ctx: &mut TrialCtx) -> Result<Check> {
    let m = ctx.model;
    let h = ctx.deficient_positive();
    let k = null_projection(std::slice::from_ref(&h))?;
    let g = ctx.element();
    let variant = ctx.index(0, 2);
    let x = match variant {
        0 => &(&k * &g) * &k,
        1 => &k * &g,
        _ => g,
    };
    let scale = (h.norm() * x.norm()).max(1e-300);
    let product = jordan::circ(&h, &x).norm() / scale;
    let probe = 1e-9;
    let orthogonal = is_orthogonal(&m, &x, &h, probe);
    let residual = if variant == 0 {
        product.max(rel(orthogonality_residual(&m, &x, &h)?, scale))
    } else {
        0.0
    };
    Ok(Check::both(
        residual,
        (product <= probe) == orthogonal && (variant != 0 || orthogonal),
    ))
}
