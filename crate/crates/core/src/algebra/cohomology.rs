use std::sync::Arc;

use super::dga::{FreeDga, GradedPiece};
use super::element::Element;
use crate::linalg::{image, kernel, Matrix, Quotient, Subspace};
use crate::scalar::Scalar;

/// `H^k` of a free DG algebra in monomial coordinates.
#[derive(Clone, Debug)]
pub struct CohomologySpace<F> {
    pub degree: u32,
    piece: Arc<GradedPiece>,
    quotient: Quotient<F>,
}

impl<F: Scalar> CohomologySpace<F> {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn piece(&self) -> &GradedPiece {
        &self.piece
    }

    pub fn cocycles(&self) -> &Subspace<F> {
        self.quotient.cycles()
    }

    pub fn coboundaries(&self) -> &Subspace<F> {
        self.quotient.boundaries()
    }

    /// Cocycles whose classes form a basis.
    pub fn representatives(&self) -> Vec<Element<F>> {
        self.quotient
            .representatives()
            .iter()
            .map(|v| self.piece.element(v))
            .collect()
    }

    /// Class coordinates of a cocycle; `None` when `e` is not a cocycle of
    /// this degree.
    pub fn class_of(&self, e: &Element<F>) -> Option<Vec<F>> {
        let v = self.piece.coordinates(e).ok()?;
        self.quotient.project(&v)
    }

    pub fn lift(&self, coords: &[F]) -> Element<F> {
        self.piece.element(&self.quotient.lift(coords))
    }
}

pub fn cohomology_space<F: Scalar>(alg: &FreeDga<F>, k: u32) -> CohomologySpace<F> {
    let piece = alg.graded_piece(k);
    let cocycles = kernel(&alg.differential_matrix(k));
    let coboundaries = if k == 0 {
        Subspace::zero(piece.dim())
    } else {
        image(&alg.differential_matrix(k - 1))
    };
    let quotient = Quotient::new(cocycles, coboundaries)
        .expect("d∘d = 0 on a validated algebra");
    CohomologySpace {
        degree: k,
        piece,
        quotient,
    }
}

/// Dimensions of `H^0 .. H^max`.
pub fn betti_numbers<F: Scalar>(alg: &FreeDga<F>, max: u32) -> Vec<usize> {
    (0..=max).map(|k| cohomology_space(alg, k).dim()).collect()
}

/// Matrix of `x ↦ class(φ(x))` from `H^k(source)` to `H^k(target)`.
pub fn induced_on_cohomology<F: Scalar>(
    phi: &super::Morphism<F>,
    k: u32,
) -> Matrix<F> {
    let src = cohomology_space(phi.source(), k);
    let tgt = cohomology_space(phi.target(), k);
    let cols: Vec<Vec<F>> = src
        .representatives()
        .iter()
        .map(|z| {
            tgt.class_of(&phi.apply(z))
                .expect("a DG map sends cocycles to cocycles")
        })
        .collect();
    Matrix::from_columns(tgt.dim(), &cols)
}
