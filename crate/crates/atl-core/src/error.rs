use thiserror::Error;

/// Errors surfaced by the exact-arithmetic and diagram kernels.
#[derive(Debug, Error)]
pub enum Error {
    #[error("coefficient domain mismatch: {0} vs {1}")]
    DomainMismatch(String, String),

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("{0} is not divisible by {1}")]
    NotDivisible(String, String),

    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("matrix dimension mismatch: {0}")]
    MatrixShape(String),

    #[error("arity mismatch: cannot compose {top} top points onto {bottom} bottom points")]
    ArityMismatch { bottom: usize, top: usize },

    #[error("k = {k} is not admissible for N = {n} (need 0 <= k <= N and k = N mod 2)")]
    InvalidK { k: i64, n: usize },

    #[error("diagram is not monic")]
    NotMonic,

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("polynomial is not symmetric in x and 1/x")]
    NotSymmetric,

    #[error("q value required to evaluate a polynomial with coefficients in q")]
    MissingQ,

    #[error("evaluation point must be nonzero")]
    ZeroEvaluationPoint,

    #[error("negative twist exponent {0} is not defined at k = 0")]
    NegativeExponentAtKZero(i64),

    #[error("delta is not available in the {0} domain")]
    UnsupportedDomain(String),

    #[error("determinant identity failed at k = {k}, N = {n}: det is neither G nor -G")]
    DetIdentityFailed { k: i64, n: usize },

    #[error(
        "zero-sheet obstruction: the component at k = 0 of the constructed element \
         is nonzero and not divisible by P_0, so it cannot be corrected"
    )]
    ZeroSheetObstruction,

    #[error("algebra coefficients must be constant in x")]
    NonConstantCoefficient,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
