//! End-to-end use of the public API on small hand-made inputs.

use peircelab::approx::{projection_approximation, regular_approximation};
use peircelab::ideals::orthogonal_annihilator;
use peircelab::linalg::{ComplexMatrix, Subspace, C64};
use peircelab::model::TripleModel;
use peircelab::peirce::{peirce_decompose, PeirceIndex, Tripotent};
use peircelab::rickart::{pedersen_witness, wor_witness, PedersenCase, PedersenInput};
use peircelab::spectral::{generalized_inverse, range_tripotent};
use peircelab::Error;

fn diag(values: &[f64]) -> ComplexMatrix {
    ComplexMatrix::real_diag(values)
}

#[test]
fn peirce_spaces_of_a_corner_projection() {
    let m = TripleModel::CStar { n: 3 };
    let e = Tripotent::certify(&m, diag(&[1.0, 0.0, 0.0]), 1e-12).unwrap();
    let pd = peirce_decompose(&m, &e).unwrap();
    // E_0 = lower 2x2 block, E_1 = first row and column off the corner, E_2 = span e11
    let dims: Vec<usize> = PeirceIndex::ALL
        .iter()
        .map(|&k| pd.subspace(k).complex_dim().unwrap())
        .collect();
    assert_eq!(dims, [4, 4, 1]);
}

#[test]
fn witness_for_a_rank_one_positive_element() {
    let m = TripleModel::CStar { n: 2 };
    let x = diag(&[2.0, 0.0]);
    let j = orthogonal_annihilator(&m, std::slice::from_ref(&x), 1e-9).unwrap();
    let report = wor_witness(&m, &x, &j, 1e-9).unwrap();
    assert!(report.verified);
    assert!((report.witness.element() - &diag(&[1.0, 0.0])).max_abs() < 1e-12);

    let json = serde_json::to_value(&report).unwrap();
    let keys: Vec<&str> = json
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    assert_eq!(keys, ["residuals", "seed", "verified", "witness"]);
}

#[test]
fn range_tripotent_and_inverse_of_a_rectangular_element() {
    let m = TripleModel::Rect { m: 2, n: 3 };
    let a = ComplexMatrix::rect_diag(2, 3, &[3.0, 0.0]).scale(C64::new(0.0, 1.0));
    let r = range_tripotent(&m, &a, 1e-12).unwrap();
    let expected = ComplexMatrix::rect_diag(2, 3, &[1.0, 0.0]).scale(C64::new(0.0, 1.0));
    assert!((r.element() - &expected).max_abs() < 1e-12);
    let d = generalized_inverse(&m, &a, 1e-12).unwrap();
    assert!((&m.triple_product(&a, &d, &a).unwrap() - &a).max_abs() < 1e-12);
}

#[test]
fn approximations_meet_their_targets() {
    let m = TripleModel::JBStar { n: 3 };
    let a = diag(&[0.95, 0.3, 0.0]);
    for eps in [0.5, 0.1, 0.01] {
        let p = projection_approximation(&m, &a, eps).unwrap();
        assert!(p.error <= eps);
        let r = regular_approximation(&m, &a, eps, 1e-9).unwrap();
        assert!(r.verified(eps), "eps {eps}");
    }
    assert!(matches!(
        projection_approximation(&m, &a, 0.0),
        Err(Error::NonPositiveEps(_))
    ));
}

#[test]
fn pedersen_unit_for_a_generator() {
    let m = TripleModel::JBStar { n: 3 };
    let b = PedersenInput::Generator(diag(&[1.0, 0.5, 0.0]));
    let c = PedersenInput::Subspace(Subspace::zero((3, 3)));
    let (_, report) = pedersen_witness(&m, PedersenCase::WeaklyRickart, &b, &c, 1e-9, 0).unwrap();
    assert!(report.verified);
    assert!((report.witness.element() - &diag(&[1.0, 1.0, 0.0])).max_abs() < 1e-9);
}

#[test]
fn shape_errors_surface() {
    let m = TripleModel::CStar { n: 2 };
    let wrong = ComplexMatrix::zeros(3, 3);
    assert!(matches!(
        range_tripotent(&m, &wrong, 1e-9),
        Err(Error::ShapeMismatch { .. })
    ));
}
