//! Exact computations for symmetric conformal geometries.
//!
//! The crate realizes the flat model `PO(p+1,q+1)/P` of conformal geometry
//! in signature `(p,q)` over the real quadratic field `Q(sqrt d)`:
//!
//! * [`field`] and [`linalg`]: exact scalars, matrices, kernels and affine
//!   solution sets;
//! * [`flatmodel`]: the ambient form, null lines, orbit labels and
//!   transitive witnesses;
//! * [`symmetry`]: the symmetries `s_Z` at the origin and the solver for
//!   symmetries preserving or swapping two removed points;
//! * [`liealg`]: the graded algebra `so(p+1,q+1)` and abstract Lie algebras
//!   given by structure constants;
//! * [`weyl`]: algebraic Weyl tensors, annihilators and first prolongations;
//! * [`extension`]: extensions of homogeneous pairs and their curvature;
//! * [`cases`]: the worked removed-points examples as checked fixtures;
//! * [`io`]: the JSON input and report formats.

pub mod cases;
pub mod error;
pub mod extension;
pub mod field;
pub mod flatmodel;
pub mod io;
pub mod liealg;
pub mod linalg;
pub mod sample;
pub mod symmetry;
pub mod weyl;

pub use error::{Error, Result};
pub use field::Scalar;
pub use linalg::{AffineSubspace, Matrix, Vector};
