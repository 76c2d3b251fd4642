//! Approximation of self-adjoint elements by finite combinations of
//! projections, and of arbitrary elements by von Neumann regular truncations.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, svd, ComplexMatrix, TAU_RANK};
use crate::model::TripleModel;
use crate::peirce::{tripotent_leq, Tripotent};
use crate::spectral::{is_regular, odd_calculus, range_tripotent};

#[derive(Clone, Debug, Serialize)]
pub struct ComboTerm {
    pub coeff: f64,
    pub projection: ComplexMatrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectionApproximation {
    pub combo: Vec<ComboTerm>,
    pub error: f64,
}

impl ProjectionApproximation {
    pub fn sum(&self, n: usize) -> ComplexMatrix {
        let mut s = ComplexMatrix::zeros(n, n);
        for t in &self.combo {
            s += &t.projection.scale_real(t.coeff);
        }
        s
    }
}

/// Groups eigenpairs into grid buckets `(k eps, (k+1) eps]` of `|λ|` and
/// returns `(bucket, members)` in ascending bucket order.
fn buckets(values: &[(usize, f64)], eps: f64) -> Vec<Vec<usize>> {
    let mut keyed: Vec<(i64, usize)> = values
        .iter()
        .map(|&(k, v)| (((v / eps).ceil() as i64 - 1).max(0), k))
        .collect();
    keyed.sort();
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut last = None;
    for (b, k) in keyed {
        if last != Some(b) {
            out.push(Vec::new());
            last = Some(b);
        }
        out.last_mut().expect("bucket pushed").push(k);
    }
    out
}

/// `Σ λ_i p_i` with mutually orthogonal spectral projections of `a`, one per
/// occupied grid bucket of step `eps`. Each bucket's coefficient is the
/// smallest `|λ|` it holds, so `|a| - |Σ λ_i p_i|` lies in `[0, eps)`
/// on each spectral part. Negative eigenvalues are handled as a separate
/// positive part with negated coefficients.
pub fn projection_approximation(
    model: &TripleModel,
    a: &ComplexMatrix,
    eps: f64,
) -> Result<ProjectionApproximation> {
    let n = model.require_jbstar()?;
    model.check(a)?;
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::NonPositiveEps(eps));
    }
    let (vals, vecs) = hermitian_eigen(a, 1e-9)?;
    let cut = TAU_RANK * vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let positive: Vec<(usize, f64)> = (0..n)
        .filter(|&k| vals[k] > cut)
        .map(|k| (k, vals[k]))
        .collect();
    let negative: Vec<(usize, f64)> = (0..n)
        .filter(|&k| vals[k] < -cut)
        .map(|k| (k, -vals[k]))
        .collect();

    let projector = |members: &[usize]| {
        ComplexMatrix::from_fn(n, n, |i, j| {
            members
                .iter()
                .map(|&k| vecs[(i, k)] * vecs[(j, k)].conj())
                .sum()
        })
    };
    let mut combo = Vec::new();
    for (part, sign) in [(&positive, 1.0), (&negative, -1.0)] {
        for members in buckets(part, eps) {
            let coeff = members
                .iter()
                .map(|&k| vals[k].abs())
                .fold(f64::INFINITY, f64::min);
            combo.push(ComboTerm {
                coeff: sign * coeff,
                projection: projector(&members),
            });
        }
    }
    let mut approx = ProjectionApproximation { combo, error: 0.0 };
    approx.error = (a - &approx.sum(n)).norm();
    Ok(approx)
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularApproximation {
    pub e_eps: Tripotent,
    pub b: ComplexMatrix,
    pub y: ComplexMatrix,
    pub error: f64,
    pub range_tripotent: Tripotent,
    /// `||{b, r(a), b} - a||`, relative to `max(1, ||a||)`
    pub reconstruction: f64,
    pub below_range: bool,
    pub regular: bool,
}

impl RegularApproximation {
    pub fn verified(&self, eps: f64) -> bool {
        self.below_range && self.regular && self.reconstruction <= 1e-10 && self.error < eps
    }
}

/// Truncation `y = {b, e_eps, b}` where `b` is the odd square root of `a` and
/// `e_eps` keeps the singular values above `eps`.
pub fn regular_approximation(
    model: &TripleModel,
    a: &ComplexMatrix,
    eps: f64,
    tol: f64,
) -> Result<RegularApproximation> {
    model.check(a)?;
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::NonPositiveEps(eps));
    }
    let threshold = eps * (1.0 - 1e-12);
    let s = svd(a, tol)?;
    let cut = TAU_RANK * s.max_singular();
    let e_eps = Tripotent::trusted(
        s.recombine(|v| if v > cut && v > threshold { 1.0 } else { 0.0 }),
        tol,
    );
    let b = odd_calculus(model, a, f64::sqrt)?;
    let r = range_tripotent(model, a, tol)?;
    let y = model.triple_product(&b, e_eps.element(), &b)?;
    let reconstruction =
        (&model.triple_product(&b, r.element(), &b)? - a).norm() / a.norm().max(1.0);
    Ok(RegularApproximation {
        error: (a - &y).norm(),
        below_range: tripotent_leq(model, &e_eps, &r, tol),
        regular: is_regular(model, &y, tol),
        e_eps,
        b,
        y,
        range_tripotent: r,
        reconstruction,
    })
}
