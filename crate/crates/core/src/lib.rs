//! Coadjoint orbits of nilpotent Lie algebras in coordinates.

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod family;
pub mod harmonic;
pub mod io;
pub mod linalg;
pub mod orbits;
pub mod polarization;
pub mod poly;
pub mod ratfunc;
pub mod sampling;
pub mod scalar;
pub mod stratification;
pub mod subspace;

pub use algebra::{Covector, LieAlgebra, Vector};
pub use error::{Error, Result};
pub use linalg::Matrix;
pub use poly::MultiPoly;
pub use ratfunc::RatFunction;
pub use scalar::{ExactField, Rational, Scalar};
pub use subspace::Subspace;

/// Nilpotent Lie algebra with exact rational structure constants.
pub type NilpotentLieAlgebra = LieAlgebra<Rational>;
/// Exact rational matrix.
pub type RatMatrix = Matrix<Rational>;
