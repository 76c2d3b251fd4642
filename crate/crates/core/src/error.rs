use thiserror::Error;

/// Errors raised by the toolkit.
///
/// Numerical *failures* of verified properties are never errors; they are
/// recorded in reports. These variants cover contract violations on inputs
/// and the rare non-convergence of an iterative kernel.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("shape mismatch: expected {expected:?}, got {got:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        got: (usize, usize),
    },
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },
    #[error("{algorithm} did not converge after {sweeps} sweeps")]
    ConvergenceFailure {
        algorithm: &'static str,
        sweeps: usize,
    },
    #[error("element is not a tripotent (residual {residual:.3e})")]
    NotTripotent { residual: f64 },
    #[error("element is not in the Peirce-2 subspace (residual {residual:.3e})")]
    NotInPeirce2 { residual: f64 },
    #[error("scalar is not of unit modulus (|lambda| = {modulus})")]
    NotUnitModulus { modulus: f64 },
    #[error("element does not have norm one (norm {norm})")]
    NotNormOne { norm: f64 },
    #[error("element is not von Neumann regular")]
    NotRegular,
    #[error("inputs are not orthogonal (residual {residual:.3e})")]
    NotOrthogonal { residual: f64 },
    #[error("subspace is not an inner ideal (residual {residual:.3e})")]
    NotInnerIdeal { residual: f64 },
    #[error("family is not mutually orthogonal: elements {0} and {1}")]
    NotMutuallyOrthogonal(usize, usize),
    #[error("inner ideal is not hereditary (residual {residual:.3e})")]
    NotHereditary { residual: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("element is not positive (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },
    #[error("eps must be positive, got {0}")]
    NonPositiveEps(f64),
    #[error("operation requires a {required} model, got {got}")]
    WrongModel { required: &'static str, got: String },
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
