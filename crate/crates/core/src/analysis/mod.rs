//! Cohomology presentations and derivations of cohomology algebras, plus
//! executable checks of the structural theorems: the Thom and Grivel
//! descriptions of derivation homology, splitting of the G-sequence for
//! maps into H₀-spaces, and the trivialization criterion for fibrations
//! over odd spheres.

mod checks;
mod presentation;
mod tncz;

use thiserror::Error;

pub use checks::{
    check_f0, grivel_check, presentation_bound, splitting_check, thom_check, GrivelRow,
    SplittingRow, ThomRow,
};
pub use presentation::{
    cohomology_derivation_space, cohomology_presentation, evaluate_on_generators, phi_x_map,
    AlgebraPresentation, CohomologyDerivationSpace, CohomologyPresentation, PhiMap, PresentedMap,
};
pub use tncz::{tncz_analyze, TnczVerdict};

use crate::algebra::AlgebraError;
use crate::derivation::ComplexError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("relations must be nonzero and homogeneous")]
    ZeroRelation,
    #[error("degree {degree} is above the truncation degree {truncation}")]
    Truncation { degree: u32, truncation: u32 },
    #[error("invalid presented map: {0}")]
    InvalidPresentedMap(String),
    #[error("{element} is not a cocycle")]
    NotCocycle { element: String },
    #[error("{model} fails the F₀ check: {reason}")]
    NotF0 { model: String, reason: String },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("malformed relative model: {0}")]
    MalformedRelative(String),
}

#[cfg(test)]
mod tests;
