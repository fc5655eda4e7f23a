use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate point: {0}")]
    DegeneratePoint(String),
    #[error("instance has no dilation structure")]
    NoDilation,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operator is singular")]
    SingularOperator,
    #[error("positive operator has eigenvalue {min:e} below the clamp threshold")]
    NonPositiveSpectrum { min: f64 },
    #[error("subspace is not standard")]
    NotStandard,
    #[error("modular relation J Delta J = Delta^-1 violated (residual {residual:e})")]
    ModularRelationViolated { residual: f64 },
    #[error("not a conjugation (residual {residual:e})")]
    NotConjugation { residual: f64 },
    #[error("generator is not skew-symmetric (residual {residual:e})")]
    NotSkew { residual: f64 },
    #[error("J U_t J = U_-t fails (residual {residual:e})")]
    InvertibilityConstraintViolated { residual: f64 },
    #[error("geodesic is not dilation invariant (best-fit alpha {alpha}, residual {residual:e})")]
    NotDilationInvariant { alpha: f64, residual: f64 },
    #[error("Jordan element is not invertible")]
    SingularElement,
    #[error("elements belong to different Jordan algebras")]
    AlgebraMismatch,
    #[error("point lies outside the domain of the conformal map")]
    PointOutsideDomain,
    #[error("grading differs between sample points")]
    InconsistentGrading,
    #[error("element is odd; expected an element of the identity-graded subgroup")]
    NotInG1,
    #[error("cone precondition violated: {0}")]
    ConePreconditionViolated(String),
    #[error("shift {shift} exceeds the grid budget {budget}")]
    ShiftOutOfRange { shift: f64, budget: f64 },
    #[error("spectral multiplier {multiplier:e} overflows on the signal support")]
    SpectralOverflow { multiplier: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
