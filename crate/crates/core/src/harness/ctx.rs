use crate::linalg::{ComplexMatrix, Subspace};
use crate::model::TripleModel;
use crate::random::{self, TrialRng};

/// Outcome of one trial: a residual compared against the property tolerance
/// and a flag for conditions that are not residual bounds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Check {
    pub residual: f64,
    pub holds: bool,
}

impl Check {
    pub fn residual(residual: f64) -> Self {
        Self {
            residual,
            holds: true,
        }
    }

    pub fn holds(holds: bool) -> Self {
        Self {
            residual: 0.0,
            holds,
        }
    }

    pub fn both(residual: f64, holds: bool) -> Self {
        Self { residual, holds }
    }

    pub fn and(self, other: Check) -> Self {
        Self {
            residual: self.residual.max(other.residual),
            holds: self.holds && other.holds,
        }
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.holds && self.residual <= tol
    }
}

/// Per-trial state: the model under test, a private random stream, and a
/// running digest of every generated input.
pub struct TrialCtx {
    pub model: TripleModel,
    pub dim: usize,
    pub tol: f64,
    pub sub_seed: u64,
    rng: TrialRng,
    digest: u64,
}

impl TrialCtx {
    pub fn new(model: TripleModel, dim: usize, tol: f64, sub_seed: u64) -> Self {
        Self {
            model,
            dim,
            tol,
            sub_seed,
            rng: random::rng(sub_seed),
            digest: 0,
        }
    }

    pub fn input_hash(&self) -> u64 {
        self.digest
    }

    pub fn rng(&mut self) -> &mut TrialRng {
        &mut self.rng
    }

    pub fn shape(&self) -> (usize, usize) {
        self.model.shape()
    }

    /// Side length for square-only constructions.
    pub fn n(&self) -> usize {
        self.model.shape().0
    }

    pub fn min_dim(&self) -> usize {
        let (m, n) = self.shape();
        m.min(n)
    }

    pub fn record(&mut self, m: ComplexMatrix) -> ComplexMatrix {
        self.digest = random::digest_matrices(&[&m]) ^ self.digest.rotate_left(17);
        m
    }

    pub fn element(&mut self) -> ComplexMatrix {
        let s = self.shape();
        let m = random::element(&mut self.rng, s);
        self.record(m)
    }

    /// Random element scaled to norm one.
    pub fn unit_element(&mut self) -> ComplexMatrix {
        let s = self.shape();
        let m = random::element(&mut self.rng, s);
        let m = m.scale_real(1.0 / m.norm());
        self.record(m)
    }

    pub fn hermitian(&mut self) -> ComplexMatrix {
        let n = self.n();
        let m = random::hermitian(&mut self.rng, n);
        self.record(m)
    }

    pub fn positive(&mut self, delta: f64) -> ComplexMatrix {
        let n = self.n();
        let m = random::positive(&mut self.rng, n, delta);
        self.record(m)
    }

    /// Positive element of random rank `1..n-1` (rank one when `n = 1`).
    pub fn deficient_positive(&mut self) -> ComplexMatrix {
        let n = self.n();
        let r = if n > 1 {
            random::rank_between(&mut self.rng, 1, n - 1)
        } else {
            1
        };
        let u = random::unitary(&mut self.rng, n);
        let vals: Vec<f64> = (0..n)
            .map(|i| {
                if i < r {
                    random::uniform(&mut self.rng, 0.2, 2.0)
                } else {
                    0.0
                }
            })
            .collect();
        let m = (&(&u * &ComplexMatrix::real_diag(&vals)) * &u.adjoint()).hermitian_part();
        self.record(m)
    }

    pub fn unitary(&mut self, n: usize) -> ComplexMatrix {
        let m = random::unitary(&mut self.rng, n);
        self.record(m)
    }

    pub fn tripotent(&mut self) -> ComplexMatrix {
        let s = self.shape();
        let r = random::rank_between(&mut self.rng, 0, s.0.min(s.1));
        let m = random::tripotent(&mut self.rng, s, r);
        self.record(m)
    }

    pub fn projection(&mut self) -> ComplexMatrix {
        let n = self.n();
        let r = random::rank_between(&mut self.rng, 0, n);
        let m = random::projection(&mut self.rng, n, r);
        self.record(m)
    }

    pub fn spectral_projection(&mut self) -> ComplexMatrix {
        let n = self.n();
        let m = random::spectral_projection(&mut self.rng, n);
        self.record(m)
    }

    pub fn regular(&mut self, lo: f64, hi: f64) -> ComplexMatrix {
        let s = self.shape();
        let m = random::regular_element(&mut self.rng, s, lo, hi);
        self.record(m)
    }

    pub fn deficient(&mut self) -> ComplexMatrix {
        let s = self.shape();
        let m = random::deficient_element(&mut self.rng, s, 0.2, 2.0);
        self.record(m)
    }

    pub fn with_singular_values(&mut self, values: &[f64]) -> ComplexMatrix {
        let s = self.shape();
        let m = random::with_singular_values(&mut self.rng, s, values);
        self.record(m)
    }

    pub fn in_subspace(&mut self, s: &Subspace) -> ComplexMatrix {
        let m = random::in_subspace(&mut self.rng, s);
        self.record(m)
    }

    pub fn ginibre(&mut self, rows: usize, cols: usize) -> ComplexMatrix {
        let m = random::ginibre(&mut self.rng, rows, cols);
        self.record(m)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        random::uniform(&mut self.rng, lo, hi)
    }

    pub fn index(&mut self, lo: usize, hi: usize) -> usize {
        random::rank_between(&mut self.rng, lo, hi)
    }

    pub fn coin(&mut self) -> bool {
        self.uniform(0.0, 1.0) < 0.5
    }

    pub fn sub_seed(&mut self) -> u64 {
        use rand::Rng;
        self.rng.gen()
    }
}
