use std::collections::BTreeMap;
use std::sync::Arc;

use super::dga::FreeDga;
use super::element::Element;
use super::monomial::Monomial;
use super::AlgebraError;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Degree-preserving map of DG algebras determined by generator images.
#[derive(Clone, Debug)]
pub struct Morphism<F> {
    source: Arc<FreeDga<F>>,
    target: Arc<FreeDga<F>>,
    images: Vec<Element<F>>,
}

impl<F: Scalar> Morphism<F> {
    /// Validates degrees and `φ∘d = d∘φ` on generators.
    pub fn new(
        source: Arc<FreeDga<F>>,
        target: Arc<FreeDga<F>>,
        images: Vec<Element<F>>,
    ) -> Result<Self, AlgebraError> {
        let errors = Self::check(&source, &target, &images);
        if let Some(e) = errors.into_iter().next() {
            return Err(e);
        }
        Ok(Morphism {
            source,
            target,
            images,
        })
    }

    /// Every problem with a candidate morphism, not only the first.
    pub fn check(
        source: &FreeDga<F>,
        target: &FreeDga<F>,
        images: &[Element<F>],
    ) -> Vec<AlgebraError> {
        if images.len() != source.num_generators() {
            return vec![AlgebraError::ImageCount {
                expected: source.num_generators(),
                found: images.len(),
            }];
        }
        let mut errors = Vec::new();
        for (i, img) in images.iter().enumerate() {
            let g = &source.generators()[i];
            match target.homogeneous_degree(img) {
                Err(e) => errors.push(e),
                Ok(Some(d)) if d != g.degree => errors.push(AlgebraError::ImageDegree {
                    generator: g.name.clone(),
                    expected: g.degree,
                    found: d,
                }),
                _ => {}
            }
        }
        if !errors.is_empty() {
            return errors;
        }
        let unchecked = Morphism {
            source: Arc::new(source.clone()),
            target: Arc::new(target.clone()),
            images: images.to_vec(),
        };
        for (i, g) in source.generators().iter().enumerate() {
            let lhs = unchecked.apply(source.generator_differential(i));
            let rhs = target.differential(&images[i]);
            if lhs != rhs {
                errors.push(AlgebraError::NotChainMap(g.name.clone()));
            }
        }
        errors
    }

    pub fn identity(alg: Arc<FreeDga<F>>) -> Self {
        let images = (0..alg.num_generators()).map(|i| alg.gen(i)).collect();
        Morphism {
            source: Arc::clone(&alg),
            target: alg,
            images,
        }
    }

    /// The augmentation onto the ground field.
    pub fn augmentation(alg: Arc<FreeDga<F>>) -> Self {
        Self::zero(alg, Arc::new(FreeDga::ground()))
    }

    /// Sends every generator to zero. This is always a DG map because
    /// differentials of generators have no constant term.
    pub fn zero(source: Arc<FreeDga<F>>, target: Arc<FreeDga<F>>) -> Self {
        let images = vec![Element::zero(); source.num_generators()];
        Morphism {
            source,
            target,
            images,
        }
    }

    pub fn source(&self) -> &Arc<FreeDga<F>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FreeDga<F>> {
        &self.target
    }

    pub fn images(&self) -> &[Element<F>] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Element<F> {
        &self.images[i]
    }

    pub fn is_null(&self) -> bool {
        self.images.iter().all(Element::is_zero)
    }

    pub fn apply_monomial(&self, m: &Monomial) -> Element<F> {
        let mut out = Element::unit();
        for g in m.factors() {
            out = self.target.mul(&out, &self.images[g]);
            if out.is_zero() {
                break;
            }
        }
        out
    }

    pub fn apply(&self, a: &Element<F>) -> Element<F> {
        let mut out = Element::zero();
        for (m, c) in a.terms() {
            out.add_scaled(c, &self.apply_monomial(m));
        }
        out
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Morphism<F>) -> Result<Morphism<F>, AlgebraError> {
        if *self.target != *other.source {
            return Err(AlgebraError::Incompatible);
        }
        Ok(Morphism {
            source: Arc::clone(&self.source),
            target: Arc::clone(&other.target),
            images: self.images.iter().map(|e| other.apply(e)).collect(),
        })
    }

    /// Matrix of the induced map on indecomposables in each generator degree
    /// of the source. Rows are target generators of that degree, columns
    /// source generators, both in declaration order.
    pub fn linear_part(&self) -> Result<BTreeMap<u32, Matrix<F>>, AlgebraError> {
        if !self.source.is_minimal() || !self.target.is_minimal() {
            return Err(AlgebraError::NotMinimal);
        }
        let mut out = BTreeMap::new();
        let mut degrees: Vec<u32> = self.source.generators().iter().map(|g| g.degree).collect();
        degrees.sort_unstable();
        degrees.dedup();
        for deg in degrees {
            let cols: Vec<usize> = gens_of_degree(&self.source, deg);
            let rows: Vec<usize> = gens_of_degree(&self.target, deg);
            let mut m = Matrix::zeros(rows.len(), cols.len());
            for (c, &j) in cols.iter().enumerate() {
                for (r, &i) in rows.iter().enumerate() {
                    m.set(r, c, self.images[j].coefficient(&Monomial::generator(i)));
                }
            }
            out.insert(deg, m);
        }
        Ok(out)
    }

    /// `true` if the map is zero on indecomposables.
    pub fn has_zero_linear_part(&self) -> bool {
        self.images
            .iter()
            .all(|e| e.terms().all(|(m, _)| m.word_length() != 1))
    }
}

pub(crate) fn gens_of_degree<F: Scalar>(alg: &FreeDga<F>, degree: u32) -> Vec<usize> {
    (0..alg.num_generators())
        .filter(|&i| alg.generator_degree(i) == degree)
        .collect()
}

/// Applies `φ` to an element; the free-function form of [`Morphism::apply`].
pub fn apply_morphism<F: Scalar>(phi: &Morphism<F>, a: &Element<F>) -> Element<F> {
    phi.apply(a)
}
