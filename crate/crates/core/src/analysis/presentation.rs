use std::sync::Arc;

use super::AnalysisError;
use crate::algebra::{cohomology_space, Element, FreeDga, Generator, Monomial, Morphism};
use crate::derivation::{Derivation, DerivationComplex};
use crate::linalg::{image, kernel, solve_linear, Matrix, Quotient, Subspace};
use crate::scalar::Scalar;

/// A graded-commutative algebra `Λ(generators) / (relations)`, known in
/// degrees `0..=truncation`.
#[derive(Clone, Debug)]
pub struct AlgebraPresentation<F> {
    free: Arc<FreeDga<F>>,
    relations: Vec<Element<F>>,
    truncation: u32,
    /// Per degree, the free piece modulo the ideal.
    quotients: Vec<Quotient<F>>,
}

impl<F: Scalar> AlgebraPresentation<F> {
    pub fn new(
        generators: Vec<Generator>,
        relations: Vec<Element<F>>,
        truncation: u32,
    ) -> Result<Self, AnalysisError> {
        let free = Arc::new(FreeDga::new(generators, Vec::new())?);
        let mut degrees = Vec::with_capacity(relations.len());
        for r in &relations {
            match free.homogeneous_degree(r)? {
                Some(d) => degrees.push(d),
                None => return Err(AnalysisError::ZeroRelation),
            }
        }
        let quotients = (0..=truncation)
            .map(|k| {
                let piece = free.graded_piece(k);
                let mut spanning = Vec::new();
                for (r, &dr) in relations.iter().zip(&degrees) {
                    let Some(rest) = k.checked_sub(dr) else {
                        continue;
                    };
                    for m in free.graded_piece(rest).monomials() {
                        let prod = free.mul(&Element::monomial(m.clone()), r);
                        spanning.push(piece.coordinates(&prod).expect("degree k product"));
                    }
                }
                let ideal = Subspace::span(piece.dim(), spanning);
                Quotient::new(Subspace::full(piece.dim()), ideal).expect("ideal inside its piece")
            })
            .collect();
        Ok(AlgebraPresentation {
            free,
            relations,
            truncation,
            quotients,
        })
    }

    /// The free algebra on the generators, with zero differential.
    pub fn free(&self) -> &Arc<FreeDga<F>> {
        &self.free
    }

    pub fn generators(&self) -> &[Generator] {
        self.free.generators()
    }

    pub fn relations(&self) -> &[Element<F>] {
        &self.relations
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    fn quotient(&self, k: u32) -> Result<&Quotient<F>, AnalysisError> {
        self.quotients
            .get(k as usize)
            .ok_or(AnalysisError::Truncation {
                degree: k,
                truncation: self.truncation,
            })
    }

    /// Dimension in degree `k`; fails above the truncation.
    pub fn dim(&self, k: u32) -> Result<usize, AnalysisError> {
        Ok(self.quotient(k)?.dim())
    }

    /// Coordinates of a homogeneous element of degree `k` in the quotient.
    pub fn reduce(&self, k: u32, e: &Element<F>) -> Result<Vec<F>, AnalysisError> {
        let q = self.quotient(k)?;
        let v = self.free.graded_piece(k).coordinates(e)?;
        Ok(q.project(&v).expect("every vector is a cycle of the full space"))
    }

    /// A representative in the free algebra of quotient coordinates.
    pub fn element(&self, k: u32, coords: &[F]) -> Result<Element<F>, AnalysisError> {
        let q = self.quotient(k)?;
        Ok(self.free.graded_piece(k).element(&q.lift(coords)))
    }

    pub fn display_relations(&self) -> Vec<String> {
        self.relations.iter().map(|r| self.free.display(r)).collect()
    }
}

/// A presentation of `H*(A)` together with cocycle representatives of its
/// generators.
#[derive(Clone, Debug)]
pub struct CohomologyPresentation<F> {
    pub presentation: AlgebraPresentation<F>,
    algebra: Arc<FreeDga<F>>,
    representatives: Vec<Element<F>>,
}

impl<F: Scalar> CohomologyPresentation<F> {
    pub fn algebra(&self) -> &Arc<FreeDga<F>> {
        &self.algebra
    }

    /// Cocycle representing generator `i`.
    pub fn representative(&self, i: usize) -> &Element<F> {
        &self.representatives[i]
    }

    /// The algebra map from the free algebra on the presentation
    /// generators to `A`, sending each generator to its representative.
    pub fn evaluate(&self, e: &Element<F>) -> Element<F> {
        evaluate(&self.algebra, &self.representatives, e)
    }

    /// Presentation coordinates of the class with coordinates `class` in
    /// `H^k(A)`.
    pub fn from_class(&self, k: u32, class: &[F]) -> Result<Vec<F>, AnalysisError> {
        let m = evaluation_matrix(&self.algebra, &self.representatives, self.presentation.free(), k);
        let x = solve_linear(&m, class).ok_or(AnalysisError::Truncation {
            degree: k,
            truncation: self.presentation.truncation,
        })?;
        let piece = self.presentation.free().graded_piece(k);
        self.presentation.reduce(k, &piece.element(&x))
    }

    /// Presentation coordinates of the class of a cocycle of `A`.
    pub fn class_of(&self, k: u32, cocycle: &Element<F>) -> Result<Vec<F>, AnalysisError> {
        let h = cohomology_space(&self.algebra, k);
        let class = h.class_of(cocycle).ok_or(AnalysisError::NotCocycle {
            element: self.algebra.display(cocycle),
        })?;
        self.from_class(k, &class)
    }
}

fn evaluate<F: Scalar>(alg: &FreeDga<F>, reps: &[Element<F>], e: &Element<F>) -> Element<F> {
    let mut out = Element::zero();
    for (m, c) in e.terms() {
        let mut value = Element::unit();
        for (i, &p) in m.exponents().iter().enumerate() {
            if p > 0 {
                value = alg.mul(&value, &alg.power(&reps[i], p));
            }
        }
        out.add_scaled(c, &value);
    }
    out
}

/// Columns: classes in `H^k(A)` of the degree-`k` monomials of `free`.
fn evaluation_matrix<F: Scalar>(
    alg: &FreeDga<F>,
    reps: &[Element<F>],
    free: &FreeDga<F>,
    k: u32,
) -> Matrix<F> {
    let h = cohomology_space(alg, k);
    let cols: Vec<Vec<F>> = free
        .graded_piece(k)
        .monomials()
        .iter()
        .map(|m| {
            h.class_of(&evaluate(alg, reps, &Element::monomial(m.clone())))
                .expect("products of cocycles are cocycles")
        })
        .collect();
    Matrix::from_columns(h.dim(), &cols)
}

/// Degreewise greedy presentation of `H*(A)` up to `maxdeg`: in each
/// degree, classes not generated by earlier ones become generators and
/// kernel elements not in the ideal of earlier relations become relations.
pub fn cohomology_presentation<F: Scalar>(
    alg: &Arc<FreeDga<F>>,
    maxdeg: u32,
) -> Result<CohomologyPresentation<F>, AnalysisError> {
    let mut gens: Vec<Generator> = Vec::new();
    let mut reps: Vec<Element<F>> = Vec::new();
    let mut relations: Vec<Element<F>> = Vec::new();
    for k in 1..=maxdeg {
        let h = cohomology_space(alg, k);
        if h.dim() == 0 && reps.is_empty() {
            continue;
        }
        let free = FreeDga::new(gens.clone(), Vec::new())?;
        let m = evaluation_matrix(alg, &reps, &free, k);
        let mut decomposable = image(&m);
        let fresh: Vec<usize> = (0..h.dim())
            .filter(|&i| {
                let mut e = vec![F::zero(); h.dim()];
                e[i] = F::one();
                if decomposable.contains_vector(&e) {
                    return false;
                }
                let mut basis = decomposable.basis().to_vec();
                basis.push(e);
                decomposable = Subspace::span(h.dim(), basis);
                true
            })
            .collect();
        for (j, &i) in fresh.iter().enumerate() {
            let mut e = vec![F::zero(); h.dim()];
            e[i] = F::one();
            let rep = h.lift(&e);
            let name = rep
                .terms()
                .next()
                .filter(|(m, c)| rep.len() == 1 && c.is_one_value() && m.as_generator().is_some())
                .map(|(m, _)| alg.display_monomial(m))
                .filter(|n| !gens.iter().any(|g| &g.name == n))
                .unwrap_or_else(|| {
                    if fresh.len() == 1 {
                        format!("c{k}")
                    } else {
                        format!("c{k}_{}", j + 1)
                    }
                });
            gens.push(Generator::new(name, k));
            reps.push(rep);
        }

        // relations among the old monomials in degree k
        let free = FreeDga::new(gens.clone(), Vec::new())?;
        let relations_here = kernel(&evaluation_matrix(alg, &reps, &free, k));
        if relations_here.dim() == 0 {
            continue;
        }
        let earlier = AlgebraPresentation::new(gens.clone(), relations.clone(), k)?;
        let piece = free.graded_piece(k);
        let ideal = earlier.quotient(k)?.boundaries().clone();
        let mut spanned = ideal;
        for v in relations_here.basis() {
            if spanned.contains_vector(v) {
                continue;
            }
            relations.push(piece.element(v));
            let mut basis = spanned.basis().to_vec();
            basis.push(v.clone());
            spanned = Subspace::span(piece.dim(), basis);
        }
    }
    Ok(CohomologyPresentation {
        presentation: AlgebraPresentation::new(gens, relations, maxdeg)?,
        algebra: Arc::clone(alg),
        representatives: reps,
    })
}

/// An algebra map between presented algebras, given on generators.
#[derive(Clone, Debug)]
pub struct PresentedMap<F> {
    pub source: AlgebraPresentation<F>,
    pub target: AlgebraPresentation<F>,
    map: Morphism<F>,
}

impl<F: Scalar> PresentedMap<F> {
    /// Checks degrees and that every source relation lands in the target
    /// ideal.
    pub fn new(
        source: AlgebraPresentation<F>,
        target: AlgebraPresentation<F>,
        images: Vec<Element<F>>,
    ) -> Result<Self, AnalysisError> {
        let map = Morphism::new(Arc::clone(source.free()), Arc::clone(target.free()), images)
            .map_err(|e| AnalysisError::InvalidPresentedMap(e.to_string()))?;
        for r in source.relations() {
            let k = source.free().homogeneous_degree(r)?.unwrap_or(0);
            let image = map.apply(r);
            if target.reduce(k, &image)?.iter().any(|c| !c.is_zero()) {
                return Err(AnalysisError::InvalidPresentedMap(format!(
                    "relation {} maps to {}, which is nonzero",
                    source.free().display(r),
                    target.free().display(&image)
                )));
            }
        }
        Ok(PresentedMap {
            source,
            target,
            map,
        })
    }

    pub fn morphism(&self) -> &Morphism<F> {
        &self.map
    }

    /// `H(φ)` for a DG map `φ: A → B` between the algebras of two
    /// cohomology presentations.
    pub fn induced(
        phi: &Morphism<F>,
        source: &CohomologyPresentation<F>,
        target: &CohomologyPresentation<F>,
    ) -> Result<Self, AnalysisError> {
        let images = (0..source.presentation.generators().len())
            .map(|i| {
                let k = source.presentation.generators()[i].degree;
                let image = phi.apply(source.representative(i));
                let coords = target.class_of(k, &image)?;
                target.presentation.element(k, &coords)
            })
            .collect::<Result<Vec<_>, _>>()?;
        PresentedMap::new(
            source.presentation.clone(),
            target.presentation.clone(),
            images,
        )
    }
}

/// Degree-`n` `h`-derivations between presented algebras: values on
/// generators, in target quotient coordinates, that kill every relation.
#[derive(Clone, Debug)]
pub struct CohomologyDerivationSpace<F> {
    pub degree: u32,
    /// `offsets[i]..offsets[i + 1]` holds the value on generator `i`.
    offsets: Vec<usize>,
    space: Subspace<F>,
}

impl<F: Scalar> CohomologyDerivationSpace<F> {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        self.space.basis()
    }

    /// Coordinates in [`Self::basis`] of a packed value vector; `None` if
    /// it is not a derivation.
    pub fn coordinates(&self, packed: &[F]) -> Option<Vec<F>> {
        self.space.coordinates(packed)
    }

    pub fn value_range(&self, generator: usize) -> std::ops::Range<usize> {
        self.offsets[generator]..self.offsets[generator + 1]
    }

    pub fn packed_len(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }
}

pub fn cohomology_derivation_space<F: Scalar>(
    h: &PresentedMap<F>,
    n: u32,
) -> Result<CohomologyDerivationSpace<F>, AnalysisError> {
    let (src, tgt) = (&h.source, &h.target);
    let gens = src.generators();
    let mut offsets = vec![0];
    for g in gens {
        let dim = match g.degree.checked_sub(n) {
            Some(k) => tgt.dim(k)?,
            None => 0,
        };
        offsets.push(offsets.last().unwrap() + dim);
    }
    let total = *offsets.last().unwrap();

    let mut rows_per_relation = Vec::new();
    for r in src.relations() {
        let k = src.free().homogeneous_degree(r)?.unwrap_or(0);
        rows_per_relation.push(k.checked_sub(n));
    }
    let height: usize = rows_per_relation
        .iter()
        .map(|k| k.map_or(Ok(0), |k| tgt.dim(k)))
        .sum::<Result<usize, _>>()?;

    let mut cols = Vec::with_capacity(total);
    for (i, g) in gens.iter().enumerate() {
        let Some(k) = g.degree.checked_sub(n) else {
            continue;
        };
        for j in 0..tgt.dim(k)? {
            let mut unit = vec![F::zero(); tgt.dim(k)?];
            unit[j] = F::one();
            let mut theta = Derivation::zero(n, gens.len());
            theta.values[i] = tgt.element(k, &unit)?;
            let mut col = Vec::with_capacity(height);
            for (r, kr) in src.relations().iter().zip(&rows_per_relation) {
                if let Some(kr) = kr {
                    col.extend(tgt.reduce(*kr, &theta.evaluate(&h.map, r))?);
                }
            }
            cols.push(col);
        }
    }
    let m = Matrix::from_columns(height, &cols);
    Ok(CohomologyDerivationSpace {
        degree: n,
        offsets,
        space: kernel(&m),
    })
}

/// `φ_A: H_n(Der(A, A; 1)) → Der_n(H(A), H(A); 1)`, `[θ] ↦ ([χ] ↦ [θ(χ)])`,
/// as a matrix between homology class coordinates and the basis of the
/// derivation space.
#[derive(Clone, Debug)]
pub struct PhiMap<F> {
    pub matrix: Matrix<F>,
    pub homology_dim: usize,
    pub codomain: CohomologyDerivationSpace<F>,
}

pub fn phi_x_map<F: Scalar>(
    alg: &Arc<FreeDga<F>>,
    n: u32,
    maxdeg: u32,
) -> Result<PhiMap<F>, AnalysisError> {
    let pres = cohomology_presentation(alg, maxdeg)?;
    let identity_images = pres
        .presentation
        .generators()
        .iter()
        .enumerate()
        .map(|(i, _)| Element::monomial(Monomial::generator(i)))
        .collect();
    let id = PresentedMap::new(
        pres.presentation.clone(),
        pres.presentation.clone(),
        identity_images,
    )?;
    let codomain = cohomology_derivation_space(&id, n)?;
    let der = DerivationComplex::self_maps(Arc::clone(alg))?;
    let h = der.homology(n as usize);
    let mut cols = Vec::with_capacity(h.dim());
    for z in h.representatives() {
        let theta = der.derivation(n as usize, z);
        let packed = evaluate_on_generators(&pres, &der, &theta)?;
        cols.push(codomain.coordinates(&packed).ok_or_else(|| {
            AnalysisError::InvalidPresentedMap("θ does not induce a derivation".into())
        })?);
    }
    Ok(PhiMap {
        matrix: Matrix::from_columns(codomain.dim(), &cols),
        homology_dim: h.dim(),
        codomain,
    })
}

/// Packed presentation coordinates of `[θ(χ_i)]` for the presentation
/// generators `χ_i`.
pub fn evaluate_on_generators<F: Scalar>(
    pres: &CohomologyPresentation<F>,
    der: &DerivationComplex<F>,
    theta: &Derivation<F>,
) -> Result<Vec<F>, AnalysisError> {
    let mut packed = Vec::new();
    for (i, g) in pres.presentation.generators().iter().enumerate() {
        let Some(k) = g.degree.checked_sub(theta.degree) else {
            continue;
        };
        let value = theta.evaluate(der.morphism(), pres.representative(i));
        packed.extend(pres.class_of(k, &value)?);
    }
    Ok(packed)
}
