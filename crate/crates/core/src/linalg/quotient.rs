use super::subspace::{Frame, Subspace};
use super::LinalgError;
use crate::scalar::Scalar;

/// The quotient `cycles / boundaries` with a chosen set of representatives.
///
/// Representatives are taken greedily from the canonical cycle basis, so
/// for a fixed pair of subspaces the choice is deterministic.
#[derive(Clone, Debug)]
pub struct Quotient<F> {
    cycles: Subspace<F>,
    boundaries: Subspace<F>,
    representatives: Vec<Vec<F>>,
    frame: Frame<F>,
}

impl<F: Scalar> Quotient<F> {
    pub fn new(cycles: Subspace<F>, boundaries: Subspace<F>) -> Result<Self, LinalgError> {
        if cycles.ambient_dim() != boundaries.ambient_dim() {
            return Err(LinalgError::DimensionMismatch {
                left: cycles.ambient_dim(),
                right: boundaries.ambient_dim(),
            });
        }
        if let Some(bad) = boundaries
            .basis()
            .iter()
            .find(|b| !cycles.contains_vector(b))
        {
            return Err(LinalgError::NotContained {
                vector: bad.iter().map(|x| x.to_string()).collect(),
            });
        }
        let ambient = cycles.ambient_dim();
        let mut spanned = boundaries.clone();
        let mut representatives = Vec::new();
        for z in cycles.basis() {
            if representatives.len() + boundaries.dim() == cycles.dim() {
                break;
            }
            if !spanned.contains_vector(z) {
                representatives.push(z.clone());
                spanned = spanned.sum(&Subspace::span(ambient, vec![z.clone()]))?;
            }
        }
        let mut frame_vectors = boundaries.basis().to_vec();
        frame_vectors.extend(representatives.iter().cloned());
        let frame = Frame::new(ambient, frame_vectors)?;
        Ok(Quotient {
            cycles,
            boundaries,
            representatives,
            frame,
        })
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn cycles(&self) -> &Subspace<F> {
        &self.cycles
    }

    pub fn boundaries(&self) -> &Subspace<F> {
        &self.boundaries
    }

    pub fn representatives(&self) -> &[Vec<F>] {
        &self.representatives
    }

    /// Quotient coordinates of a cycle; `None` when `v` is not a cycle.
    pub fn project(&self, v: &[F]) -> Option<Vec<F>> {
        let coords = self.frame.coordinates(v)?;
        Some(coords[self.boundaries.dim()..].to_vec())
    }

    /// The cycle `sum c_i representative_i`.
    pub fn lift(&self, coords: &[F]) -> Vec<F> {
        super::subspace::combine(self.cycles.ambient_dim(), &self.representatives, coords)
    }
}

/// Quotient of `cycles` by `boundaries`; fails when a boundary basis vector
/// is not a cycle.
pub fn quotient_coordinates<F: Scalar>(
    cycles: &Subspace<F>,
    boundaries: &Subspace<F>,
) -> Result<Quotient<F>, LinalgError> {
    Quotient::new(cycles.clone(), boundaries.clone())
}
