//! Seeded random elements for the property harness and for sampled checks.
//!
//! All generators take an explicit `ChaCha8Rng`; nothing here touches global
//! randomness.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{hermitian_eigen, ComplexMatrix, Subspace, C64};

pub type TrialRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Stable 64-bit digest of a byte string (FNV-1a followed by a splitmix
/// finaliser). Used for sub-seeds and input hashes, so it must never change.
pub fn digest(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    splitmix(h)
}

/// Sub-seed for one trial, derived from the suite seed and a label.
pub fn sub_seed(seed: u64, label: &str, trial: u64) -> u64 {
    splitmix(seed ^ digest(label.as_bytes()) ^ splitmix(trial))
}

pub fn digest_matrices(ms: &[&ComplexMatrix]) -> u64 {
    let mut bytes = Vec::new();
    for m in ms {
        bytes.extend_from_slice(&(m.rows() as u64).to_le_bytes());
        bytes.extend_from_slice(&(m.cols() as u64).to_le_bytes());
        for z in m.data() {
            bytes.extend_from_slice(&z.re.to_bits().to_le_bytes());
            bytes.extend_from_slice(&z.im.to_bits().to_le_bytes());
        }
    }
    digest(&bytes)
}

fn normal(rng: &mut TrialRng) -> f64 {
    rng.sample(StandardNormal)
}

/// Complex Ginibre matrix with `E|z|^2 = 1` per entry.
pub fn ginibre(rng: &mut TrialRng, rows: usize, cols: usize) -> ComplexMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        C64::new(s * normal(rng), s * normal(rng))
    })
}

/// Ginibre matrix scaled so its norm is of order one.
pub fn element(rng: &mut TrialRng, shape: (usize, usize)) -> ComplexMatrix {
    let scale = 1.0 / ((shape.0 + shape.1) as f64).sqrt();
    ginibre(rng, shape.0, shape.1).scale_real(scale)
}

pub fn hermitian(rng: &mut TrialRng, n: usize) -> ComplexMatrix {
    element(rng, (n, n)).hermitian_part()
}

/// `g*g + delta I` with `g` a scaled Ginibre matrix.
pub fn positive(rng: &mut TrialRng, n: usize, delta: f64) -> ComplexMatrix {
    let g = element(rng, (n, n));
    let mut p = &g.adjoint() * &g;
    for i in 0..n {
        p.data_mut()[i * n + i] += delta;
    }
    p.hermitian_part()
}

/// Haar unitary: Gram-Schmidt on Ginibre columns.
pub fn unitary(rng: &mut TrialRng, n: usize) -> ComplexMatrix {
    let g = ginibre(rng, n, n);
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = g.column(j);
        for _ in 0..2 {
            for q in &cols {
                let c: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= qi * c;
                }
            }
        }
        let nrm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / nrm).collect());
    }
    ComplexMatrix::from_columns(n, &cols)
}

/// `U diag(values) V*` with Haar `U`, `V`; `values.len() <= min(rows, cols)`.
pub fn with_singular_values(
    rng: &mut TrialRng,
    shape: (usize, usize),
    values: &[f64],
) -> ComplexMatrix {
    let u = unitary(rng, shape.0);
    let v = unitary(rng, shape.1);
    let d = ComplexMatrix::rect_diag(shape.0, shape.1, values);
    &(&u * &d) * &v.adjoint()
}

pub fn rank_between(rng: &mut TrialRng, lo: usize, hi: usize) -> usize {
    rng.gen_range(lo..=hi)
}

/// Tripotent of the given rank: `U_r V_r*` for Haar `U`, `V`.
pub fn tripotent(rng: &mut TrialRng, shape: (usize, usize), rank: usize) -> ComplexMatrix {
    with_singular_values(rng, shape, &vec![1.0; rank])
}

/// Nonzero tripotent of random rank.
pub fn any_tripotent(rng: &mut TrialRng, shape: (usize, usize)) -> ComplexMatrix {
    let r = rank_between(rng, 1, shape.0.min(shape.1));
    tripotent(rng, shape, r)
}

/// Orthogonal projection of the given rank.
pub fn projection(rng: &mut TrialRng, n: usize, rank: usize) -> ComplexMatrix {
    let u = unitary(rng, n);
    let d = ComplexMatrix::real_diag(
        &(0..n)
            .map(|i| if i < rank { 1.0 } else { 0.0 })
            .collect::<Vec<_>>(),
    );
    &(&u * &d) * &u.adjoint()
}

/// Spectral projection of a random Hermitian matrix onto its positive
/// eigenvalues.
pub fn spectral_projection(rng: &mut TrialRng, n: usize) -> ComplexMatrix {
    let h = hermitian(rng, n);
    let (vals, vecs) = hermitian_eigen(&h, 1e-9).expect("random hermitian matrix");
    ComplexMatrix::from_fn(n, n, |i, j| {
        (0..n)
            .filter(|&k| vals[k] > 0.0)
            .map(|k| vecs[(i, k)] * vecs[(j, k)].conj())
            .sum()
    })
}

/// Element of random rank in `1..=min` with singular values in `[lo, hi]`.
pub fn regular_element(
    rng: &mut TrialRng,
    shape: (usize, usize),
    lo: f64,
    hi: f64,
) -> ComplexMatrix {
    let r = rank_between(rng, 1, shape.0.min(shape.1));
    let values: Vec<f64> = (0..r).map(|_| rng.gen_range(lo..=hi)).collect();
    with_singular_values(rng, shape, &values)
}

/// Rank-deficient element (rank `1..min-1`, or rank one for `min = 1`) with
/// singular values in `[lo, hi]`; nontrivial annihilators guaranteed.
pub fn deficient_element(
    rng: &mut TrialRng,
    shape: (usize, usize),
    lo: f64,
    hi: f64,
) -> ComplexMatrix {
    let k = shape.0.min(shape.1);
    let r = if k > 1 {
        rank_between(rng, 1, k - 1)
    } else {
        1
    };
    let values: Vec<f64> = (0..r).map(|_| rng.gen_range(lo..=hi)).collect();
    with_singular_values(rng, shape, &values)
}

/// Random real combination of a subspace basis.
pub fn in_subspace(rng: &mut TrialRng, s: &Subspace) -> ComplexMatrix {
    let coeffs: Vec<f64> = (0..s.dim()).map(|_| normal(rng)).collect();
    s.combine(&coeffs)
}

pub fn unit_scalar(rng: &mut TrialRng) -> C64 {
    C64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU))
}

pub fn uniform(rng: &mut TrialRng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo..hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_streams_repeat() {
        let a = element(&mut rng(7), (3, 2));
        let b = element(&mut rng(7), (3, 2));
        assert_eq!(a, b);
        assert_ne!(sub_seed(7, "x", 0), sub_seed(7, "x", 1));
        assert_ne!(sub_seed(7, "x", 0), sub_seed(7, "y", 0));
    }

    #[test]
    fn generators_have_their_shapes() {
        let mut r = rng(1);
        let u = unitary(&mut r, 4);
        assert!((&(&u.adjoint() * &u) - &ComplexMatrix::identity(4)).max_abs() < 1e-13);
        let p = projection(&mut r, 4, 2);
        assert!((&(&p * &p) - &p).max_abs() < 1e-13);
        assert!((p.trace().re - 2.0).abs() < 1e-12);
        let t = tripotent(&mut r, (3, 4), 2);
        assert!((&(&(&t * &t.adjoint()) * &t) - &t).max_abs() < 1e-13);
        let q = spectral_projection(&mut r, 3);
        assert!((&(&q * &q) - &q).max_abs() < 1e-12);
    }
}
