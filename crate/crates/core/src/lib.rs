//! Rational homotopy of function spaces through derivation complexes of
//! Sullivan minimal models.
//!
//! The crate computes homology of the complexes `Der_*(A, B; φ)` of
//! φ-derivations between free DG algebras, the evaluation subgroups they
//! determine, the G-sequence of a map together with exactness diagnostics,
//! and a handful of cross-checks against independent descriptions.
//!
//! All computations are generic over an exact coefficient field implementing
//! [`Scalar`]. [`Rational`] (arbitrary precision) is the field used by the
//! command line tool and the aliases below.

pub mod algebra;
pub mod analysis;
pub mod derivation;
pub mod linalg;
pub mod models;
pub mod scalar;
pub mod sequences;

pub use scalar::Scalar;

/// Arbitrary-precision rationals.
pub type Rational = num_rational::BigRational;
pub type QMatrix = linalg::Matrix<Rational>;
pub type QSubspace = linalg::Subspace<Rational>;
pub type QElement = algebra::Element<Rational>;
pub type QAlgebra = algebra::FreeDga<Rational>;
pub type QMorphism = algebra::Morphism<Rational>;
pub type QDerivationComplex = derivation::DerivationComplex<Rational>;
