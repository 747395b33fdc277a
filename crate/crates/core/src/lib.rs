//! Torus fixed points of the components of the type-A equivalued affine
//! Springer fiber `Fl_{ts}`.
//!
//! Components are indexed by the fundamental box `F`; the fixed points of
//! the component of `x` are the `y <= w0 x`. The crate computes both sides
//! and checks them against each other through determinant certificates,
//! symbolic determinants, randomized evaluation and a lattice model.

pub mod affine_weyl;
pub mod certificate;
pub mod error;
pub mod exact_algebra;
pub mod oracle;
pub mod root_system;
pub mod springer_matrix;

pub use affine_weyl::AffineWeylElement;
pub use error::{AlgebraError, CertError, OracleError, RootError, SpringerError, WeylError};
pub use exact_algebra::{Monomial, Poly, PolyMatrix, Rational};
pub use springer_matrix::SpectralParameters;
