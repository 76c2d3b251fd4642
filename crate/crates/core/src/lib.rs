//! Finite-dimensional JB*-triples and their Rickart-type structure.
//!
//! Elements live in one of three concrete models ([`TripleModel`]):
//! rectangular complex matrices, the C*-algebra `M_n` and `M_n` as a JB*-algebra.
//! On top of a small dense backend the crate provides Peirce decompositions,
//! the odd functional calculus, orthogonal annihilators, witnesses for the
//! Rickart-type properties, approximation by projections and regular
//! elements, and a seeded harness that checks all of it on random inputs.
//!
//! ```
//! use peircelab::peirce::{peirce_decompose, PeirceIndex};
//! use peircelab::spectral::range_tripotent;
//! use peircelab::{ComplexMatrix, TripleModel, Tripotent};
//!
//! let model = TripleModel::CStar { n: 3 };
//! let e = Tripotent::certify(&model, ComplexMatrix::real_diag(&[1.0, 0.0, 0.0]), 1e-12)?;
//! let pd = peirce_decompose(&model, &e)?;
//! assert_eq!(pd.subspace(PeirceIndex::Two).dim(), 2); // real dimension
//!
//! let r = range_tripotent(&model, &ComplexMatrix::real_diag(&[0.0, 2.0, 0.5]), 1e-12)?;
//! assert_eq!(r.element(), &ComplexMatrix::real_diag(&[0.0, 1.0, 1.0]));
//! # Ok::<(), peircelab::Error>(())
//! ```

pub mod approx;
pub mod error;
pub mod harness;
pub mod ideals;
pub mod linalg;
pub mod model;
pub mod peirce;
pub mod random;
pub mod rickart;
pub mod spectral;

pub use error::{Error, Result};
pub use harness::{ModelKind, PropertySpec, VerificationReport};
pub use linalg::{ComplexMatrix, Subspace, C64, TAU_RANK};
pub use model::TripleModel;
pub use peirce::Tripotent;
pub use rickart::WitnessReport;
