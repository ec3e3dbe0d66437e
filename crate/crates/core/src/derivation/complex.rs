use std::collections::HashMap;
use std::sync::Arc;

use super::chain::{ChainComplex, GradedMap, Homology};
use super::ComplexError;
use crate::algebra::{extend_between, signed_term, Element, FreeDga, Monomial, Morphism};
use crate::linalg::{Frame, Matrix};
use crate::scalar::{sign, Scalar};

/// The elementary derivation `P∂w`: generator `w` goes to the monomial
/// `P`, every other generator to zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Elementary {
    pub generator: usize,
    pub monomial: Monomial,
}

/// A φ-derivation of degree `n` given by its values on generators.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivation<F> {
    pub degree: u32,
    pub values: Vec<Element<F>>,
}

impl<F: Scalar> Derivation<F> {
    pub fn zero(degree: u32, generators: usize) -> Self {
        Derivation {
            degree,
            values: vec![Element::zero(); generators],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Element::is_zero)
    }

    /// Value on an arbitrary element of the source, by the derivation law
    /// `θ(xy) = θ(x)φ(y) + (-1)^{n|x|} φ(x)θ(y)`.
    pub fn evaluate(&self, phi: &Morphism<F>, a: &Element<F>) -> Element<F> {
        let mut out = Element::zero();
        for (m, c) in a.terms() {
            let v = extend_between(
                phi.source(),
                phi.target(),
                phi.images(),
                &self.values,
                self.degree as u64,
                m,
            );
            out.add_scaled(c, &v);
        }
        out
    }

    /// `δθ = d_B∘θ - (-1)^n θ∘d_A`, evaluated on generators.
    pub fn delta(&self, phi: &Morphism<F>) -> Derivation<F> {
        let s: F = sign(self.degree as u64);
        let values = (0..phi.source().num_generators())
            .map(|i| {
                let mut v = phi.target().differential(&self.values[i]);
                let t = self.evaluate(phi, phi.source().generator_differential(i));
                v.add_scaled(&-s.clone(), &t);
                v
            })
            .collect();
        Derivation {
            degree: self.degree.saturating_sub(1),
            values,
        }
    }

    /// `θ∘ψ` for `ψ: A' → A`; a `(φ∘ψ)`-derivation.
    pub fn precompose(&self, phi: &Morphism<F>, psi: &Morphism<F>) -> Derivation<F> {
        Derivation {
            degree: self.degree,
            values: psi.images().iter().map(|e| self.evaluate(phi, e)).collect(),
        }
    }

    /// `ψ∘θ` for `ψ: B → C`; a `(ψ∘φ)`-derivation.
    pub fn postcompose(&self, psi: &Morphism<F>) -> Derivation<F> {
        Derivation {
            degree: self.degree,
            values: self.values.iter().map(|e| psi.apply(e)).collect(),
        }
    }
}

/// `Der_*(A, B; φ)` in elementary coordinates. With `reduced` set the
/// target is the augmentation ideal of `B`: unit-valued components are
/// dropped.
///
/// Degree 1 holds only the δ-cycles of the full `Der_1`; complex
/// coordinates there are taken in a fixed basis of that cycle space.
#[derive(Clone, Debug)]
pub struct DerivationComplex<F> {
    phi: Morphism<F>,
    reduced: bool,
    bases: Vec<Vec<Elementary>>,
    index: Vec<HashMap<Elementary, usize>>,
    full_delta: Vec<Matrix<F>>,
    z1: Frame<F>,
    complex: ChainComplex<F>,
}

impl<F: Scalar> DerivationComplex<F> {
    pub fn new(phi: Morphism<F>) -> Result<Self, ComplexError> {
        Self::build(phi, false)
    }

    /// `Der_*(A, B̃; φ̃)` for the augmentation ideal `B̃`.
    pub fn augmentation_ideal(phi: Morphism<F>) -> Result<Self, ComplexError> {
        Self::build(phi, true)
    }

    /// `Der_*(A, A; 1)`.
    pub fn self_maps(alg: Arc<FreeDga<F>>) -> Result<Self, ComplexError> {
        Self::new(Morphism::identity(alg))
    }

    /// `Der_*(A, ℚ; ε)`.
    pub fn augmented(alg: Arc<FreeDga<F>>) -> Result<Self, ComplexError> {
        Self::new(Morphism::augmentation(alg))
    }

    fn build(phi: Morphism<F>, reduced: bool) -> Result<Self, ComplexError> {
        let a = phi.source();
        let b = phi.target();
        let top = a.max_generator_degree() as usize;
        let mut bases = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let mut basis = Vec::new();
            for (i, g) in a.generators().iter().enumerate() {
                let Some(k) = (g.degree as usize).checked_sub(n) else {
                    continue;
                };
                if reduced && k == 0 {
                    continue;
                }
                for m in b.graded_piece(k as u32).monomials() {
                    basis.push(Elementary {
                        generator: i,
                        monomial: m.clone(),
                    });
                }
            }
            bases.push(basis);
        }
        let index = bases
            .iter()
            .map(|b| b.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect())
            .collect();
        let mut this = DerivationComplex {
            phi,
            reduced,
            bases,
            index,
            full_delta: Vec::new(),
            z1: Frame::new(0, Vec::new()).expect("empty frame"),
            complex: ChainComplex::new(vec![0], vec![Matrix::zeros(0, 0)])?,
        };
        let mut full_delta = vec![Matrix::zeros(0, this.bases[0].len())];
        for n in 1..=top {
            full_delta.push(this.delta_matrix(n)?);
        }
        this.full_delta = full_delta;

        let z1_vectors = if top >= 1 {
            crate::linalg::kernel(&this.full_delta[1]).basis().to_vec()
        } else {
            Vec::new()
        };
        this.z1 = Frame::new(this.full_dim(1), z1_vectors)?;

        let mut dims = vec![0usize; top + 1];
        let mut diffs = vec![Matrix::zeros(0, 0)];
        for n in 1..=top {
            dims[n] = if n == 1 { this.z1.len() } else { this.full_dim(n) };
        }
        for n in 1..=top {
            let m = match n {
                1 => Matrix::zeros(0, dims[1]),
                2 => {
                    let cols: Vec<Vec<F>> = this.full_delta[2]
                        .columns()
                        .iter()
                        .map(|c| {
                            this.z1
                                .coordinates(c)
                                .ok_or(ComplexError::DSquared { degree: 2 })
                        })
                        .collect::<Result<_, _>>()?;
                    Matrix::from_columns(dims[1], &cols)
                }
                _ => this.full_delta[n].clone(),
            };
            diffs.push(m);
        }
        this.complex = ChainComplex::new(dims, diffs)?;
        Ok(this)
    }

    /// δ from the full `Der_n` to the full `Der_{n-1}`.
    fn delta_matrix(&self, n: usize) -> Result<Matrix<F>, ComplexError> {
        let cols: Vec<Vec<F>> = self.bases[n]
            .iter()
            .map(|e| {
                let theta = self.elementary(n as u32, e);
                self.full_coordinates(n - 1, &theta.delta(&self.phi))
            })
            .collect::<Result<_, _>>()?;
        Ok(Matrix::from_columns(self.full_dim(n - 1), &cols))
    }

    pub fn morphism(&self) -> &Morphism<F> {
        &self.phi
    }

    pub fn source(&self) -> &Arc<FreeDga<F>> {
        self.phi.source()
    }

    pub fn target(&self) -> &Arc<FreeDga<F>> {
        self.phi.target()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Largest degree with a possibly nonzero chain group.
    pub fn top(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn chain_complex(&self) -> &ChainComplex<F> {
        &self.complex
    }

    /// Elementary basis of the full `Der_n` (for `n = 1` this is larger than
    /// the complex, which keeps only cycles).
    pub fn full_basis(&self, n: usize) -> &[Elementary] {
        self.bases.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn full_dim(&self, n: usize) -> usize {
        self.full_basis(n).len()
    }

    /// Dimension of the chain group in degree `n`.
    pub fn dim(&self, n: usize) -> usize {
        self.complex.dim(n)
    }

    /// Matrix of δ on the full spaces, `Der_n → Der_{n-1}`.
    pub fn full_delta(&self, n: usize) -> Matrix<F> {
        match self.full_delta.get(n) {
            Some(m) if n >= 1 => m.clone(),
            _ => Matrix::zeros(self.full_dim(n.saturating_sub(1)), self.full_dim(n)),
        }
    }

    pub fn elementary(&self, n: u32, e: &Elementary) -> Derivation<F> {
        let mut d = Derivation::zero(n, self.source().num_generators());
        d.values[e.generator] = Element::monomial(e.monomial.clone());
        d
    }

    /// Coordinates of a derivation of degree `n` in the full elementary
    /// basis.
    pub fn full_coordinates(&self, n: usize, d: &Derivation<F>) -> Result<Vec<F>, ComplexError> {
        let mut v = vec![F::zero(); self.full_dim(n)];
        for (i, value) in d.values.iter().enumerate() {
            for (m, c) in value.terms() {
                let key = Elementary {
                    generator: i,
                    monomial: m.clone(),
                };
                let pos = self
                    .index
                    .get(n)
                    .and_then(|idx| idx.get(&key).copied())
                    .ok_or_else(|| ComplexError::OutsideBasis {
                        degree: n,
                        generator: self.source().generators()[i].name.clone(),
                    })?;
                v[pos] = c.clone();
            }
        }
        Ok(v)
    }

    /// Derivation with the given full-basis coordinates.
    pub fn from_full(&self, n: usize, v: &[F]) -> Derivation<F> {
        let mut d = Derivation::zero(n as u32, self.source().num_generators());
        for (e, c) in self.full_basis(n).iter().zip(v) {
            d.values[e.generator].add_term(e.monomial.clone(), c.clone());
        }
        d
    }

    /// Complex coordinates to full-basis coordinates.
    pub fn embed(&self, n: usize, v: &[F]) -> Vec<F> {
        if n == 1 {
            self.z1.combine(v)
        } else {
            v.to_vec()
        }
    }

    /// Full-basis coordinates to complex coordinates; `None` in degree 1
    /// when the vector is not a cycle.
    pub fn restrict(&self, n: usize, v: &[F]) -> Option<Vec<F>> {
        if n == 1 {
            self.z1.coordinates(v)
        } else {
            Some(v.to_vec())
        }
    }

    /// Matrix from complex coordinates to full coordinates in degree `n`.
    pub fn embedding(&self, n: usize) -> Matrix<F> {
        if n == 1 {
            Matrix::from_columns(self.full_dim(1), self.z1.vectors())
        } else {
            Matrix::identity(self.full_dim(n))
        }
    }

    pub fn derivation(&self, n: usize, v: &[F]) -> Derivation<F> {
        self.from_full(n, &self.embed(n, v))
    }

    pub fn coordinates(&self, d: &Derivation<F>) -> Result<Vec<F>, ComplexError> {
        let n = d.degree as usize;
        let full = self.full_coordinates(n, d)?;
        self.restrict(n, &full).ok_or(ComplexError::NotACycle { degree: n })
    }

    pub fn homology(&self, n: usize) -> Homology<F> {
        self.complex.homology(n)
    }

    /// Renders complex coordinates in `P∂w` notation.
    pub fn render(&self, n: usize, v: &[F]) -> String {
        self.render_full(n, &self.embed(n, v))
    }

    pub fn render_full(&self, n: usize, v: &[F]) -> String {
        let mut out = String::new();
        for (e, c) in self.full_basis(n).iter().zip(v) {
            if c.is_zero() {
                continue;
            }
            let body = self.render_elementary(e);
            out.push_str(&signed_term(out.is_empty(), c, Some(&body)));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn render_elementary(&self, e: &Elementary) -> String {
        let w = &self.source().generators()[e.generator].name;
        if e.monomial.is_unit() {
            format!("{w}*")
        } else {
            format!("{}∂{w}", self.target().display_monomial(&e.monomial))
        }
    }

    pub fn render_derivation(&self, d: &Derivation<F>) -> String {
        match self.full_coordinates(d.degree as usize, d) {
            Ok(v) => self.render_full(d.degree as usize, &v),
            Err(_) => "<outside basis>".to_string(),
        }
    }

    /// The chain map `θ ↦ θ∘ψ` from this complex `Der(A, B; φ)` to
    /// `to = Der(A', B; φ∘ψ)`.
    pub fn precompose(
        &self,
        psi: &Morphism<F>,
        to: &DerivationComplex<F>,
    ) -> Result<GradedMap<F>, ComplexError> {
        self.induced_map(to, |theta| theta.precompose(&self.phi, psi))
    }

    /// The chain map `θ ↦ ψ∘θ` from this complex `Der(A, B; φ)` to
    /// `to = Der(A, C; ψ∘φ)`.
    pub fn postcompose(
        &self,
        psi: &Morphism<F>,
        to: &DerivationComplex<F>,
    ) -> Result<GradedMap<F>, ComplexError> {
        self.induced_map(to, |theta| theta.postcompose(psi))
    }

    /// `ε_*: Der(A, B; φ) → Der(A, ℚ; ε)`.
    pub fn augment(&self, to: &DerivationComplex<F>) -> Result<GradedMap<F>, ComplexError> {
        let eps = Morphism::augmentation(Arc::clone(self.target()));
        self.postcompose(&eps, to)
    }

    /// Inclusion `Der(A, B̃; φ̃) → Der(A, B; φ)` from a reduced complex.
    pub fn inclusion(&self, to: &DerivationComplex<F>) -> Result<GradedMap<F>, ComplexError> {
        self.induced_map(to, Derivation::clone)
    }

    fn induced_map(
        &self,
        to: &DerivationComplex<F>,
        f: impl Fn(&Derivation<F>) -> Derivation<F>,
    ) -> Result<GradedMap<F>, ComplexError> {
        let mut maps = Vec::with_capacity(self.top() + 1);
        for n in 0..=self.top() {
            let mut cols = Vec::with_capacity(self.dim(n));
            for j in 0..self.dim(n) {
                let mut unit = vec![F::zero(); self.dim(n)];
                unit[j] = F::one();
                let image = f(&self.derivation(n, &unit));
                let full = to.full_coordinates(n, &image)?;
                cols.push(
                    to.restrict(n, &full)
                        .ok_or(ComplexError::NotChainMap { degree: n })?,
                );
            }
            maps.push(Matrix::from_columns(to.dim(n), &cols));
        }
        let g = GradedMap::new(0, maps);
        g.check(&self.complex, &to.complex)?;
        Ok(g)
    }
}

/// `φ*: Der(B, B; 1) → Der(A, B; φ)` for `φ: A → B`, as a chain map between
/// the two complexes.
pub fn precompose_induced<F: Scalar>(
    self_maps: &DerivationComplex<F>,
    derivations: &DerivationComplex<F>,
) -> Result<GradedMap<F>, ComplexError> {
    self_maps.precompose(derivations.morphism(), derivations)
}

/// `ε_*: Der(A, B; φ) → Der(A, ℚ; ε)`.
pub fn augment_induced<F: Scalar>(
    from: &DerivationComplex<F>,
    to: &DerivationComplex<F>,
) -> Result<GradedMap<F>, ComplexError> {
    from.augment(to)
}
