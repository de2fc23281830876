//! Exact exterior algebra on finite-dimensional vector spaces.
//!
//! The core types are generic over a [`Scalar`] field. Exact rational
//! arithmetic ([`Q`]) is the default throughout; `f64` and `f32` instances
//! exist for normalizations that need irrational roots.

pub mod error;
pub mod invariants;
pub mod io;
pub mod lie;
pub mod exterior;
pub mod linalg;
pub mod polyforms;
pub mod scalar;
pub mod threeform;

pub use error::{FormError, Result};
pub use exterior::{subsets, ExteriorForm, IndexSet, Variance};
pub use lie::LieAlgebra;
pub use linalg::{Mat, Subspace};
pub use polyforms::{PolyForm, Polynomial};
pub use scalar::{rat, Scalar};

/// Exact rational scalar.
pub type Q = num_rational::BigRational;
/// Exterior form or multivector with exact coefficients.
pub type Form = ExteriorForm<Q>;
/// Exact rational matrix.
pub type Matrix = Mat<Q>;
/// Floating-point exterior form.
pub type FormF64 = ExteriorForm<f64>;
/// Floating-point matrix.
pub type MatrixF64 = Mat<f64>;
