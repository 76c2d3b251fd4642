//! Property implementations, grouped by the module whose invariants they
//! check, and the registry that names them.

mod approx;
mod backend;
mod ideals;
mod peirce;
mod rickart;
mod spectral;
mod triple;

use super::ctx::TrialCtx;
use super::{ModelKind, Property};
use crate::linalg::{ComplexMatrix, C64};

/// Tolerance for certifying intermediate objects (tripotents, inner ideals)
/// inside a trial; property tolerances apply to the final residual only.
pub(super) const INNER_TOL: f64 = 1e-8;

const ALL: &[ModelKind] = &ModelKind::ALL;
const CSTAR: &[ModelKind] = &[ModelKind::Cstar];
const JBSTAR: &[ModelKind] = &[ModelKind::Jbstar];

/// `r / s`, with `s` floored at one so that tiny inputs do not inflate it.
pub(super) fn rel(r: f64, s: f64) -> f64 {
    r / s.max(1.0)
}

/// Two elements with disjoint singular blocks in a shared pair of unitaries:
/// `a = U D_a V*`, `b = U D_b V*` with `D_a D_b* = D_a* D_b = 0`. Also returns
/// the split point.
pub(super) fn orthogonal_pair(ctx: &mut TrialCtx) -> (ComplexMatrix, ComplexMatrix) {
    let (m, n) = ctx.shape();
    let k = m.min(n);
    let u = ctx.unitary(m);
    let v = ctx.unitary(n);
    let split = if k > 1 { ctx.index(1, k - 1) } else { 1 };
    let mut da = vec![0.0; k];
    let mut db = vec![0.0; k];
    for i in 0..k {
        let s = ctx.uniform(0.2, 2.0);
        if i < split {
            da[i] = s;
        } else {
            db[i] = s;
        }
    }
    let a = &(&u * &ComplexMatrix::rect_diag(m, n, &da)) * &v.adjoint();
    let b = &(&u * &ComplexMatrix::rect_diag(m, n, &db)) * &v.adjoint();
    (a, b)
}

/// `U diag(values) U*` for a Hermitian with prescribed spectrum.
pub(super) fn hermitian_with(u: &ComplexMatrix, values: &[f64]) -> ComplexMatrix {
    (&(u * &ComplexMatrix::real_diag(values)) * &u.adjoint()).hermitian_part()
}

/// Columns `from..to` of `u`.
pub(super) fn columns(u: &ComplexMatrix, from: usize, to: usize) -> ComplexMatrix {
    let cols: Vec<Vec<C64>> = (from..to).map(|j| u.column(j)).collect();
    if cols.is_empty() {
        ComplexMatrix::zeros(u.rows(), 1)
    } else {
        ComplexMatrix::from_columns(u.rows(), &cols)
    }
}

macro_rules! prop {
    ($name:expr, $anchor:expr, $models:expr, $trials:expr, $tol:expr, $run:path) => {
        Property {
            name: $name,
            anchor: $anchor,
            models: $models,
            trials: $trials,
            tol: $tol,
            run: $run,
        }
    };
}

pub(super) static REGISTRY: &[Property] = &[
    // linear backend
    prop!("svd-reconstruction", "a = U Σ V*", ALL, 100, 1e-10, backend::svd_reconstruction),
    prop!("eigen-unitary", "h = V Λ V*, V*V = I", CSTAR, 100, 1e-10, backend::eigen_unitary),
    prop!("rank-nullity", "dim ker T + dim im T = dim E", ALL, 100, 0.0, backend::rank_nullity),
    // triple models
    prop!("jordan-identity", "(a∘b)∘a² = a∘(b∘a²)", JBSTAR, 200, 1e-9, triple::jordan_identity),
    prop!("fundamental-identity", "U_a U_b U_a = U_{U_a(b)}", ALL, 200, 1e-9, triple::fundamental_identity),
    prop!(
        "ternary-identity",
        "L(x,y){a,b,c} = {L(x,y)a,b,c} - {a,L(y,x)b,c} + {a,b,L(x,y)c}",
        ALL,
        200,
        1e-9,
        triple::ternary_identity
    ),
    prop!(
        "power-identities",
        "U_a^n = U_{a^n}; 2T_{a^l}U_{a^m,a^n} = 2U_{a^m,a^n}T_{a^l} = U_{a^{m+l},a^n} + U_{a^m,a^{n+l}}",
        JBSTAR,
        200,
        1e-9,
        triple::power_identities
    ),
    prop!("non-expansive", "||{a,b,c}|| <= ||a|| ||b|| ||c||", ALL, 100, 1e-12, triple::non_expansive),
    prop!(
        "triple-product-linearity",
        "{a,b,c} = {c,b,a}, linear in a and c, conjugate linear in b",
        ALL,
        100,
        1e-9,
        triple::linearity
    ),
    prop!("gelfand-naimark-axiom", "||{a,a,a}|| = ||a||³", ALL, 100, 1e-9, triple::gelfand_naimark),
    // Peirce calculus
    prop!("peirce-projections", "P0 + P1 + P2 = Id, Pi Pj = δij Pi", ALL, 200, 1e-9, peirce::projections),
    prop!(
        "peirce-rules",
        "{E_i, E_j, E_k} ⊆ E_{i-j+k}, {E_2, E_0, E} = {E_0, E_2, E} = 0",
        ALL,
        200,
        1e-9,
        peirce::rules
    ),
    prop!("peirce-projections-nonexpansive", "||P_k(e) x|| <= ||x||", ALL, 100, 1e-10, peirce::nonexpansive),
    prop!(
        "idempotent-order-equivalences",
        "e∘f = e ⟺ e ∈ U_f(M) ⟺ U_e(M) ⊆ U_f(M)",
        JBSTAR,
        100,
        1e-9,
        peirce::idempotent_order
    ),
    prop!(
        "peirce2-compression",
        "x ∘_p y = p(x∘y)p, x^{*_p} = p x* p on pMp",
        JBSTAR,
        100,
        1e-10,
        peirce::compression
    ),
    prop!(
        "peirce2-algebra-axioms",
        "(E_2(e), {x,e,y}, {e,x,e}) is a JB*-algebra with unit e, ||U_a(a^{*e})|| = ||a||³",
        ALL,
        200,
        1e-9,
        peirce::algebra_axioms
    ),
    prop!(
        "peirce-automorphisms",
        "S_λ = λ²P2 + λP1 + P0 and R_λ = P2 + λP1 + λ²P0 are triple automorphisms",
        ALL,
        100,
        1e-9,
        peirce::automorphisms
    ),
    // spectral calculus
    prop!(
        "generalized-inverse",
        "Q(a)a† = a, Q(a†)a = a†, Q(a)Q(a†) = Q(a†)Q(a), L(a,a†) = L(r(a),r(a))",
        ALL,
        100,
        1e-9,
        spectral::generalized_inverse
    ),
    prop!(
        "regular-range-tripotent",
        "R(a) = r(a) = r(a†), a† = a^{-1} in E_2(r(a))",
        ALL,
        100,
        1e-9,
        spectral::regular_range_tripotent
    ),
    prop!(
        "range-tripotent-minimality",
        "a positive in E_2(v) ⟹ r(a) <= v",
        ALL,
        100,
        1e-9,
        spectral::range_tripotent_minimality
    ),
    prop!(
        "peirce2-invertibles-regular",
        "a invertible in E_2(e) ⟹ a regular, r(a) unitary in E_2(e)",
        ALL,
        100,
        1e-9,
        spectral::peirce2_invertibles
    ),
    prop!("support-below-range", "u(a) <= r(a)", ALL, 100, 1e-9, spectral::support_below_range),
    // ideals and annihilators
    prop!("orthogonality-symmetry", "a ⊥ b ⟺ b ⊥ a", ALL, 100, 1e-9, ideals::orthogonality_symmetry),
    prop!(
        "generated-ideals-orthogonal",
        "a ⊥ b ⟹ E(a) ⊥ E(b)",
        ALL,
        100,
        1e-9,
        ideals::generated_ideals_orthogonal
    ),
    prop!(
        "annihilator-lattice",
        "S1 ⊆ S2 ⟹ S2^⊥ ⊆ S1^⊥, S ∩ S^⊥ = {0}, S ⊆ S^⊥⊥",
        ALL,
        100,
        1e-9,
        ideals::annihilator_lattice
    ),
    prop!(
        "positive-annihilator-equivalence",
        "S positive: z ∈ S^⊥ ⟺ U_z(s) = 0 for all s ∈ S",
        JBSTAR,
        100,
        1e-9,
        ideals::positive_annihilator
    ),
    prop!(
        "positive-factor-orthogonality",
        "h positive: h∘x = 0 ⟺ x ⊥ h",
        JBSTAR,
        100,
        1e-9,
        ideals::positive_factor
    ),
    // Rickart-type witnesses
    prop!(
        "positive-commuting-equivalences",
        "a, x positive commuting: ax = x ⟺ a∘x = x ⟺ U_a(x) = x",
        JBSTAR,
        200,
        1e-9,
        rickart::commuting_equivalences
    ),
    prop!(
        "range-projection-operator-commutation",
        "a, b operator commute ⟹ RP(a), b operator commute",
        JBSTAR,
        100,
        1e-9,
        rickart::operator_commutation
    ),
    prop!(
        "peirce2-rickart-inheritance",
        "a ∈ M_2(p) positive: RP in M_2(p) = RP in M",
        JBSTAR,
        100,
        1e-9,
        rickart::peirce2_inheritance
    ),
    prop!(
        "wor-range-tripotent-projection",
        "a positive ⟹ r(a) = r(a)* = r(a)²",
        JBSTAR,
        100,
        1e-9,
        rickart::range_tripotent_projection
    ),
    prop!(
        "peirce2-range-tripotent-compatibility",
        "a positive in E_2(e) ⟹ r(a) = P_2(e) r(a)",
        ALL,
        100,
        1e-9,
        rickart::peirce2_compatibility
    ),
    prop!(
        "wor-range-tripotent-uniqueness",
        "x positive in E_2(v), {x}^⊥ = E_0(v) determine v",
        ALL,
        100,
        1e-8,
        rickart::uniqueness
    ),
    prop!(
        "polar-isometry-characterization",
        "x = e|x| ⟺ x positive in (A_2(e), •_e, *_e) and A_0(e) = {x}^⊥",
        CSTAR,
        100,
        1e-9,
        rickart::polar_characterization
    ),
    prop!(
        "weakly-rickart-witness",
        "A(x) ⊆ A_2(e), J ⊆ A_0(e), e*e = RP(x), ee* = LP(x)",
        CSTAR,
        100,
        1e-9,
        rickart::weakly_rickart
    ),
    prop!(
        "finite-reversed-witness",
        "e = (1 - ww*)u*: J ⊆ A_2(e), A(x_i) ⊆ A_0(e)",
        CSTAR,
        100,
        1e-9,
        rickart::finite_reversed
    ),
    prop!(
        "range-projection-minimality",
        "p∘a = a, U_z(a) = 0 ⟹ p∘z = 0, q∘a = a ⟹ p <= q",
        JBSTAR,
        100,
        1e-9,
        rickart::range_projection_minimality
    ),
    prop!(
        "pedersen-witness",
        "B ⊥ C ⟹ ∃ e positive: e∘b = b, e∘c = 0",
        JBSTAR,
        100,
        1e-9,
        rickart::pedersen
    ),
    prop!("wor-witness", "x positive in E_2(e), J ⊆ E_0(e), {x}^⊥ = E_0(e)", ALL, 100, 1e-9, rickart::wor),
    // approximation
    prop!(
        "projection-approximation",
        "||a - Σ λ_i p_i|| <= eps with at most ⌈||a||/eps⌉ + 1 projections",
        JBSTAR,
        100,
        1e-9,
        approx::projection_approximation
    ),
    prop!(
        "projection-approximation-monotone",
        "error(eps/2) <= error(eps)",
        JBSTAR,
        100,
        1e-12,
        approx::projection_monotone
    ),
    prop!(
        "regular-approximation",
        "||a - {b,e_eps,b}|| < eps, e_eps <= R(a), {b,R(a),b} = a",
        ALL,
        100,
        1e-10,
        approx::regular_approximation
    ),
    prop!(
        "inner-ideal-density",
        "y ∈ E(x) ⟹ {b,e_eps,b} ∈ E(x)",
        ALL,
        100,
        1e-8,
        approx::density
    ),
    prop!("inner-ideal-closure", "y ∈ E(x) ⟹ y†, r(y) ∈ E(x)", ALL, 100, 1e-8, approx::closure),
];
