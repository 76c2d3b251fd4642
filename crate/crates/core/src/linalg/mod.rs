//! Dense complex linear algebra substrate.

pub mod jacobi;
pub mod matrix;
pub mod realify;
pub mod subspace;

pub use jacobi::{hermitian_eigen, singular_values, svd, SvdResult};
pub use matrix::{ComplexMatrix, C64, I, ONE, ZERO};
pub use realify::{derealify, kernel, realify, RealMatrix, RealifiedMap};
pub use subspace::Subspace;

/// A singular value `s` counts as zero iff `s <= TAU_RANK * s_max`.
pub const TAU_RANK: f64 = 1e-10;
