//! Named tolerances shared by the library, the suites and the tests.
//!
//! | Constant | Value | Used for |
//! |----------|-------|----------|
//! | `POINT_EQ` | 1e-9 | default point equality in reflection spaces |
//! | `AXIOM` | 1e-10 | (S1)-(S3), (D1)-(D3) residuals |
//! | `MODEL_GAP` | 1e-8 | Phi/Psi round trips, bullet intertwining |
//! | `WORKED_CONSTANT` | 1e-12 | closed-form 2x2 modular operator |
//! | `JORDAN` | 1e-10 | Jordan identities on random samples |
//! | `FINITE_DIFF` | 1e-6 | finite-difference derivatives and brackets |

/// Default equality of points (Frobenius / Euclidean).
pub const POINT_EQ: f64 = 1e-9;

/// Reflection and dilation axiom residuals.
pub const AXIOM: f64 = 1e-10;

/// Gaps between standard subspaces obtained along two routes.
pub const MODEL_GAP: f64 = 1e-8;

/// Reproduction of the closed-form modular operator of span{e1, i e1 + e2}.
pub const WORKED_CONSTANT: f64 = 1e-12;

/// Geodesic morphism law.
pub const GEODESIC: f64 = 1e-10;

/// `J_gamma(t) = U_t J` and the G_alpha homomorphism law.
pub const GEODESIC_REL: f64 = 1e-9;

/// Fitted dilation exponent.
pub const ALPHA_FIT: f64 = 1e-6;

/// Jordan identity, trace-form symmetry, inverse formula.
pub const JORDAN: f64 = 1e-10;

/// Ad-grading of vector fields under gamma(r).
pub const GRADE_SCALING: f64 = 1e-8;

/// Finite-difference derivatives and vector-field brackets.
pub const FINITE_DIFF: f64 = 1e-6;

/// Extensional equality of conformal words.
pub const WORD_EQ: f64 = 1e-8;

/// Cone margin used by the compression test (relative to the spectral radius).
pub const CONE_MARGIN: f64 = 1e-9;

/// Eigenvalues of a positive operator below this are treated as zero.
pub const SPECTRAL_CLAMP: f64 = 1e-13;

/// Relative threshold on the Hadamard-normalised determinant deciding standardness.
pub const STANDARDNESS: f64 = 1e-10;

/// Borchers relation on the truncated grid.
pub const BORCHERS: f64 = 1e-9;

/// Inclusion `U_b V ⊆ V` on the grid for b >= 0.
pub const INCLUSION: f64 = 1e-6;

/// Lower bound on the violation distance for b < 0.
pub const VIOLATION: f64 = 1e-3;

/// Group law of Aff(R) on the grid.
pub const AFFINE_GROUP_LAW: f64 = 1e-8;
