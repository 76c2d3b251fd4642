use peircelab::linalg::{hermitian_eigen, svd, ComplexMatrix, RealifiedMap, C64, TAU_RANK};
use peircelab::model::TripleModel;
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), rows * cols).prop_map(move |v| {
        let data = v.into_iter().map(|(re, im)| C64::new(re, im)).collect();
        ComplexMatrix::new(rows, cols, data).unwrap()
    })
}

fn shaped() -> impl Strategy<Value = ComplexMatrix> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| matrix(r, c))
}

/// Products of thin factors, so exact rank deficiency is common.
fn low_rank() -> impl Strategy<Value = ComplexMatrix> {
    (1usize..5, 1usize..5, 1usize..4)
        .prop_flat_map(|(r, c, k)| (matrix(r, k), matrix(k, c)))
        .prop_map(|(a, b)| &a * &b)
}

fn unitary_residual(u: &ComplexMatrix) -> f64 {
    (&(&u.adjoint() * u) - &ComplexMatrix::identity(u.cols())).max_abs()
}

proptest! {
    #[test]
    fn svd_reconstructs(a in prop_oneof![shaped(), low_rank()]) {
        let s = svd(&a, TAU_RANK).unwrap();
        let scale = a.max_abs().max(1.0);
        prop_assert!((&s.reconstruct() - &a).max_abs() <= 1e-12 * scale);
        prop_assert!(unitary_residual(&s.left) <= 1e-12);
        prop_assert!(unitary_residual(&s.right) <= 1e-12);
        prop_assert!(s.singular.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn eigenvectors_are_unitary(a in (1usize..5).prop_flat_map(|n| matrix(n, n))) {
        let h = a.hermitian_part();
        let (vals, v) = hermitian_eigen(&h, 1e-12).unwrap();
        prop_assert!(unitary_residual(&v) <= 1e-12);
        let rebuilt = &(&v * &ComplexMatrix::real_diag(&vals)) * &v.adjoint();
        prop_assert!((&rebuilt - &h).max_abs() <= 1e-12 * h.max_abs().max(1.0));
        prop_assert!(vals.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn rank_plus_nullity(a in low_rank(), b in low_rank()) {
        // x -> a x + x b* on matching shapes, realified
        let (m, n) = (a.rows(), b.rows());
        let f = RealifiedMap::from_fn((m, n), (m, n), |x| {
            let left = if a.cols() == m { &a * x } else { x.clone() };
            let right = if b.cols() == n { x * &b.adjoint() } else { x.clone() };
            &left + &right
        });
        let image = f.image(TAU_RANK).unwrap().dim();
        let kernel = f.kernel(TAU_RANK).unwrap().dim();
        prop_assert_eq!(image + kernel, 2 * m * n);
    }

    #[test]
    fn triple_product_is_non_expansive(a in matrix(2, 3), b in matrix(2, 3), c in matrix(2, 3)) {
        let model = TripleModel::Rect { m: 2, n: 3 };
        let p = model.triple_product(&a, &b, &c).unwrap();
        prop_assert!(p.norm() <= a.norm() * b.norm() * c.norm() * (1.0 + 1e-12) + 1e-14);
    }
}
