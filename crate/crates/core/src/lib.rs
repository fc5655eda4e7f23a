//! Numerical geometry of standard subspaces of `C^n`.
//!
//! * [`reflection`]: reflection and dilation spaces, powers, geodesics, axiom harness.
//! * [`antilinear`], [`standard`]: antilinear calculus, modular objects, the three
//!   models of a standard subspace.
//! * [`geometry`]: the dilation-space structure on standard subspaces, Loos normal
//!   form, geodesics and `G_α` representations.
//! * [`jordan`], [`conformal`], [`semigroup`]: euclidean Jordan algebras, the conformal
//!   group as words, compression semigroups and the induced order.
//! * [`bgl`]: antiunitary representations and the map `γ ↦ V`.
//! * [`affine`]: a grid model of the positive energy representation of `Aff(R)`.
//! * [`suites`], [`report`]: the verification suites behind the command line tool.

pub mod affine;
pub mod antilinear;
pub mod bgl;
pub mod conformal;
pub mod error;
pub mod geometry;
pub mod jordan;
pub mod json;
pub mod linalg;
pub mod reflection;
pub mod report;
pub mod sampling;
pub mod semigroup;
pub mod standard;
pub mod suites;
pub mod tolerances;

pub use error::{Error, Result};
