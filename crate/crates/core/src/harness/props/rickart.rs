use crate::error::Result;
use crate::harness::ctx::{Check, TrialCtx};
use crate::ideals::{inner_ideal_generated, orthogonal_annihilator};
use crate::linalg::{hermitian_eigen, svd, ComplexMatrix, Subspace, C64, I, TAU_RANK};
use crate::model::jordan;
use crate::peirce::{peirce_decompose, PeirceIndex, Tripotent};
use crate::rickart::{
    finite_reversed_witness, jordan_range_projection, pedersen_witness,
    polar_isometry_characterization, weakly_rickart_witness, wor_witness, PedersenCase,
    PedersenInput,
};
use crate::spectral::{
    peirce2_positivity, polar_decomposition, range_tripotent, support_projection,
};

use super::{columns, hermitian_with, orthogonal_pair, INNER_TOL};

/// Eigenvalues kept away from one unless they equal it.
fn spectrum_value(ctx: &mut TrialCtx) -> f64 {
    if ctx.coin() {
        ctx.uniform(0.1, 0.6)
    } else {
        ctx.uniform(1.5, 2.0)
    }
}

pub(super) fn commuting_equivalences(ctx: &mut TrialCtx) -> Result<Check> {
    let n = ctx.n();
    let u = ctx.unitary(n);
    let ones = ctx.index(1, n);
    let alpha: Vec<f64> = (0..n)
        .map(|i| if i < ones { 1.0 } else { spectrum_value(ctx) })
        .collect();
    let expected = ctx.coin() || ones == n;
    let xi: Vec<f64> = (0..n)
        .map(|i| {
            if i < ones || !expected {
                ctx.uniform(0.1, 2.0)
            } else {
                0.0
            }
        })
        .collect();
    let a = hermitian_with(&u, &alpha);
    let x = hermitian_with(&u, &xi);
    let scale = x.norm();
    let r1 = (&(&a * &x) - &x).norm() / scale;
    let r2 = (&jordan::circ(&a, &x) - &x).norm() / scale;
    let r3 = (&jordan::u(&a, &x) - &x).norm() / scale;
    let probe = 1e-9;
    let verdicts = [r1 <= probe, r2 <= probe, r3 <= probe];
    let agree = verdicts.iter().all(|&v| v == verdicts[0]);
    let residual = if expected { r1.max(r2).max(r3) } else { 0.0 };
    Ok(Check::both(residual, agree && verdicts[0] == expected))
}

pub(super) fn operator_commutation(ctx: &mut TrialCtx) -> Result<Check> {
    let n = ctx.n();
    let u = ctx.unitary(n);
    // eigenvalue labels with repetitions: 0 and two positive levels
    let levels = [0.0, ctx.uniform(0.2, 1.0), ctx.uniform(1.2, 2.0)];
    let labels: Vec<usize> = (0..n).map(|_| ctx.index(0, 2)).collect();
    let alpha: Vec<f64> = labels.iter().map(|&l| levels[l]).collect();
    let a = hermitian_with(&u, &alpha);
    // b = poly(a) + a Hermitian block-diagonal part over equal eigenvalues
    let h = ctx.hermitian();
    let block = ComplexMatrix::from_fn(n, n, |i, j| {
        if labels[i] == labels[j] {
            h[(i, j)]
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let c0 = ctx.uniform(-1.0, 1.0);
    let c1 = ctx.uniform(-1.0, 1.0);
    let poly: Vec<f64> = alpha.iter().map(|&t| c0 * t + c1 * t * t).collect();
    let b = (&hermitian_with(&u, &poly) + &(&(&u * &block) * &u.adjoint())).hermitian_part();
    let report = {
        let seed = ctx.sub_seed();
        jordan_range_projection(&ctx.model, &a, INNER_TOL, seed)
    }?;
    let p = report.witness.element();
    let scale = b.norm().max(1.0);
    let hypothesis =
        jordan::operator_commutation_residual(&a, &b) / (scale * a.norm().max(1.0)) <= 1e-9;
    Ok(Check::both(
        jordan::operator_commutation_residual(p, &b) / scale,
        hypothesis && report.verified,
    ))
}

pub(super) fn peirce2_inheritance(ctx: &mut TrialCtx) -> Result<Check> {
    let n = ctx.n();
    let u = ctx.unitary(n);
    let r = ctx.index(1, n);
    let w = columns(&u, 0, r);
    let p = &w * &w.adjoint();
    let local = if ctx.coin() {
        crate::random::positive(ctx.rng(), r, 0.0)
    } else {
        let g = crate::random::ginibre(ctx.rng(), r, 1);
        &g * &g.adjoint()
    };
    let local = ctx.record(local.hermitian_part());
    let a = &(&w * &local) * &w.adjoint();
    // range projection computed inside M_2(p), in coordinates of range(p)
    let lifted = &(&w * &support_projection(&local, INNER_TOL)?) * &w.adjoint();
    let global = {
        let seed = ctx.sub_seed();
        jordan_range_projection(&ctx.model, &a, INNER_TOL, seed)
    }?;
    let g = global.witness.element();
    let inside = (&jordan::u(&p, g) - g).norm();
    Ok(Check::both(
        (g - &lifted).norm().max(inside),
        global.verified,
    ))
}

pub(super) fn range_tripotent_projection(ctx: &mut TrialCtx) -> Result<Check> {
    let a = if ctx.coin() {
        ctx.positive(0.0)
    } else {
        ctx.deficient_positive()
    };
    let r = range_tripotent(&ctx.model, &a, INNER_TOL)?;
    let r = r.element();
    Ok(Check::residual(
        r.hermitian_residual().max((&(r * r) - r).norm()),
    ))
}

/// `(e, a)` with `e = U_r V_r*` and `a = U_r H V_r*` for a positive `H`.
fn positive_in_peirce2(ctx: &mut TrialCtx) -> (ComplexMatrix, ComplexMatrix) {
    let (rows, cols) = ctx.shape();
    let rank = ctx.index(1, rows.min(cols));
    let u = ctx.unitary(rows);
    let v = ctx.unitary(cols);
    let (ur, vr) = (columns(&u, 0, rank), columns(&v, 0, rank));
    let h = if ctx.coin() {
        crate::random::positive(ctx.rng(), rank, 0.0)
    } else {
        let g = crate::random::ginibre(ctx.rng(), rank, 1);
        &g * &g.adjoint()
    };
    let h = ctx.record(h.hermitian_part());
    (&ur * &vr.adjoint(), &(&ur * &h) * &vr.adjoint())
}

pub(super) fn peirce2_compatibility(ctx: &mut TrialCtx) -> Result<Check> {
    let (e, a) = positive_in_peirce2(ctx);
    let m = ctx.model;
    let pos = peirce2_positivity(&m, &e, &a)?;
    let r = range_tripotent(&m, &a, INNER_TOL)?;
    let re = r.element();
    let p2 = m.triple_product(&e, &m.triple_product(&e, re, &e)?, &e)?;
    Ok(Check::both(
        (&p2 - re).norm(),
        pos.holds(1e-9 * a.norm().max(1.0)),
    ))
}

/// `x |x|^+` with `|x|^+` from the eigendecomposition of `x*x`.
fn eigen_isometry(x: &ComplexMatrix) -> Result<ComplexMatrix> {
    let xx = (&x.adjoint() * x).hermitian_part();
    let (vals, vecs) = hermitian_eigen(&xx, 1e-9)?;
    let n = xx.rows();
    let top = vals.first().copied().unwrap_or(0.0).max(0.0);
    let keep: Vec<usize> = (0..n)
        .filter(|&k| vals[k] > TAU_RANK * top && top > 0.0)
        .collect();
    let inv_sqrt = ComplexMatrix::from_fn(n, n, |i, j| {
        keep.iter()
            .map(|&k| vecs[(i, k)] * vecs[(j, k)].conj() / vals[k].sqrt())
            .sum()
    });
    Ok(x * &inv_sqrt)
}

pub(super) fn uniqueness(ctx: &mut TrialCtx) -> Result<Check> {
    let x = if ctx.coin() {
        ctx.deficient()
    } else {
        ctx.regular(0.2, 2.0)
    };
    let m = ctx.model;
    let zero = Subspace::zero(m.shape());
    let first = wor_witness(&m, &x, &zero, INNER_TOL)?;
    let second = Tripotent::certify(&m, eigen_isometry(&x)?, INNER_TOL)?;
    // the second candidate must satisfy the same two conditions
    let pos = peirce2_positivity(&m, second.element(), &x)?;
    let ann = orthogonal_annihilator(&m, std::slice::from_ref(&x), INNER_TOL)?;
    let pd = peirce_decompose(&m, &second)?;
    let same = pd.subspace(PeirceIndex::Zero).same_as(&ann, 1e-8);
    let hypotheses = first.verified && pos.holds(1e-9 * x.norm().max(1.0)) && same;
    Ok(Check::both(
        (first.witness.element() - second.element()).norm(),
        hypotheses,
    ))
}

pub(super) fn polar_characterization(ctx: &mut TrialCtx) -> Result<Check> {
    let x = if ctx.coin() {
        ctx.deficient()
    } else {
        ctx.element()
    };
    let m = ctx.model;
    let polar = polar_decomposition(&m, &x, INNER_TOL)?;
    let e = polar.isometry.element().clone();
    let forward = polar_isometry_characterization(&m, &x, &polar.isometry, INNER_TOL)?;
    let n = ctx.n();
    let candidate = match ctx.index(0, 3) {
        0 => e.scale(I),
        1 => {
            let s = svd(&x, TAU_RANK)?;
            let k = s.rank(TAU_RANK);
            if k < n {
                // extend the polar isometry across the kernel
                let c = &columns(&s.left, k, n) * &columns(&s.right, k, n).adjoint();
                &e + &c
            } else {
                e.scale_real(-1.0)
            }
        }
        2 => ctx.tripotent(),
        _ => e.clone(),
    };
    let candidate = Tripotent::certify(&m, candidate, INNER_TOL)?;
    let is_polar = (candidate.element() - &e).norm() <= 1e-8;
    let backward = polar_isometry_characterization(&m, &x, &candidate, INNER_TOL)?;
    Ok(Check::holds(forward && backward == is_polar))
}

pub(super) fn weakly_rickart(ctx: &mut TrialCtx) -> Result<Check> {
    let x = ctx.deficient();
    let m = ctx.model;
    let j = orthogonal_annihilator(&m, std::slice::from_ref(&x), INNER_TOL)?;
    let report = weakly_rickart_witness(&m, &x, &j, INNER_TOL)?;
    Ok(Check::both(report.worst_residual(), report.verified))
}

pub(super) fn finite_reversed(ctx: &mut TrialCtx) -> Result<Check> {
    let family = if ctx.coin() {
        vec![ctx.deficient()]
    } else {
        // two pieces on disjoint singular blocks, leaving at least one block empty
        let n = ctx.n();
        let u = ctx.unitary(n);
        let v = ctx.unitary(n);
        let labels: Vec<usize> = (0..n)
            .map(|i| if i == 0 { 2 } else { ctx.index(0, 2) })
            .collect();
        let piece = |label: usize, ctx: &mut TrialCtx| {
            let d: Vec<f64> = labels
                .iter()
                .map(|&l| {
                    if l == label {
                        ctx.uniform(0.2, 2.0)
                    } else {
                        0.0
                    }
                })
                .collect();
            &(&u * &ComplexMatrix::real_diag(&d)) * &v.adjoint()
        };
        vec![piece(0, ctx), piece(1, ctx)]
    };
    let m = ctx.model;
    let j = orthogonal_annihilator(&m, &family, INNER_TOL)?;
    let report = finite_reversed_witness(&m, &family, &j, INNER_TOL)?;
    Ok(Check::both(report.worst_residual(), report.verified))
}

pub(super) fn range_projection_minimality(ctx: &mut TrialCtx) -> Result<Check> {
    let a = if ctx.coin() {
        ctx.positive(0.0)
    } else {
        ctx.deficient_positive()
    };
    let report = {
        let seed = ctx.sub_seed();
        jordan_range_projection(&ctx.model, &a, INNER_TOL, seed)
    }?;
    Ok(Check::both(report.worst_residual(), report.verified))
}

pub(super) fn pedersen(ctx: &mut TrialCtx) -> Result<Check> {
    let n = ctx.n();
    let u = ctx.unitary(n);
    let labels: Vec<usize> = (0..n).map(|_| ctx.index(0, 2)).collect();
    let block = |label: usize, ctx: &mut TrialCtx| -> Vec<f64> {
        labels
            .iter()
            .map(|&l| {
                if l == label {
                    ctx.uniform(0.2, 2.0)
                } else {
                    0.0
                }
            })
            .collect()
    };
    let bv = block(0, ctx);
    let cv = block(1, ctx);
    let b = hermitian_with(&u, &bv);
    let c = hermitian_with(&u, &cv);
    let case = [
        PedersenCase::Sajbw,
        PedersenCase::WeaklyRickart,
        PedersenCase::Rickart,
        PedersenCase::Baer,
    ][ctx.index(0, 3)];
    let m = ctx.model;
    let as_input = |g: ComplexMatrix, generator: bool| -> Result<PedersenInput> {
        Ok(if generator {
            PedersenInput::Generator(g)
        } else {
            PedersenInput::Subspace(inner_ideal_generated(&m, &g, INNER_TOL)?)
        })
    };
    let b_gen = matches!(case, PedersenCase::Sajbw | PedersenCase::WeaklyRickart) || ctx.coin();
    let c_gen = matches!(case, PedersenCase::Sajbw | PedersenCase::Rickart) || ctx.coin();
    let bi = as_input(b, b_gen)?;
    let ci = as_input(c, c_gen)?;
    let (_, report) = pedersen_witness(&m, case, &bi, &ci, INNER_TOL, ctx.sub_seed())?;
    Ok(Check::both(report.worst_residual(), report.verified))
}

pub(super) fn wor(ctx: &mut TrialCtx) -> Result<Check> {
    let m = ctx.model;
    let (x, j) = if ctx.coin() {
        (ctx.deficient(), Subspace::zero(m.shape()))
    } else {
        let (x, y) = orthogonal_pair(ctx);
        (x, inner_ideal_generated(&m, &y, INNER_TOL)?)
    };
    let report = wor_witness(&m, &x, &j, INNER_TOL)?;
    Ok(Check::both(report.worst_residual(), report.verified))
}
