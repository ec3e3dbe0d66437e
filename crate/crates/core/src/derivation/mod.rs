//! Complexes of φ-derivations, the maps between them induced by composing
//! with DG algebra maps, relative complexes and long exact sequences.

mod chain;
mod complex;

use thiserror::Error;

pub use chain::{
    cone_map, connecting_map, mapping_cone, ChainComplex, Cone, GradedMap, Homology, MapSequence,
    SequenceTerm, TermAudit,
};
pub use complex::{
    augment_induced, precompose_induced, Derivation, DerivationComplex, Elementary,
};

use crate::linalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("δ∘δ ≠ 0 in degree {degree}")]
    DSquared { degree: usize },
    #[error("map does not commute with δ in degree {degree}")]
    NotChainMap { degree: usize },
    #[error("exactness failure: {what}")]
    NotExact { what: String },
    #[error("derivation of degree {degree} has a value on `{generator}` outside the basis")]
    OutsideBasis { degree: usize, generator: String },
    #[error("degree-{degree} derivation is not a cycle")]
    NotACycle { degree: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
