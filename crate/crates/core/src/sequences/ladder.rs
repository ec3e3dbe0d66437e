use std::sync::Arc;

use crate::algebra::Morphism;
use crate::derivation::{
    cone_map, mapping_cone, ChainComplex, ComplexError, Cone, DerivationComplex, GradedMap,
    Homology, MapSequence, SequenceTerm,
};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::Scalar;

/// Display names for the two models and the map. `source` is the model
/// of the domain of `φ`, which is the model of the target space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Names {
    pub source: String,
    pub target: String,
    pub map: String,
}

impl Default for Names {
    fn default() -> Self {
        Names {
            source: "A".into(),
            target: "B".into(),
            map: "φ".into(),
        }
    }
}

impl Names {
    pub fn new(source: &str, target: &str, map: &str) -> Self {
        Names {
            source: source.into(),
            target: target.into(),
            map: map.into(),
        }
    }
}

/// A subspace of the homology of some complex, in class coordinates.
#[derive(Clone, Debug)]
pub struct SubgroupInHomology<F> {
    pub label: String,
    pub degree: usize,
    pub ambient: Homology<F>,
    pub subspace: Subspace<F>,
    /// The map whose image this is.
    pub provenance: &'static str,
}

impl<F: Scalar> SubgroupInHomology<F> {
    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient.dim()
    }

    /// A cycle representing the class with the given subgroup coordinates.
    pub fn representative(&self, coords: &[F]) -> Vec<F> {
        self.ambient.lift(&self.subspace.combine(coords))
    }
}

/// Image of `H_n(f): H_n(X) → H_n(Y)` together with `H_n(Y)`.
pub fn image_in_homology<F: Scalar>(
    f: &GradedMap<F>,
    n: usize,
    src: &ChainComplex<F>,
    tgt: &ChainComplex<F>,
) -> (Homology<F>, Subspace<F>) {
    let h_src = src.homology(n);
    let h_tgt = tgt.homology(n);
    let m = f.induced(n, src, tgt, &h_src, &h_tgt);
    let image = crate::linalg::image(&m);
    (h_tgt, image)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermKind {
    /// `G_n(B)`
    Gottlieb,
    /// `G_n(A, B; φ)`
    Evaluation,
    /// `G^rel_n(A, B; φ)`
    Relative,
}

/// Exactness verdict at one term of a sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermVerdict {
    pub label: String,
    pub kind: TermKind,
    pub degree: usize,
    pub dim: usize,
    /// False at the low end of the sequence and at a truncated top.
    pub audited: bool,
    pub exact: bool,
    /// Dimension of the homology of the sequence at this term.
    pub defect: usize,
    pub witnesses: Vec<String>,
}

/// The G-sequence restricted to the degree window `[2, window]`:
///
/// `… → G^rel_{n+1} → G_n(B) → G_n(A,B;φ) → G^rel_n → G_{n-1}(B) → … → G_2(A,B;φ)`.
#[derive(Clone, Debug)]
pub struct GSequence<F> {
    pub window: usize,
    pub terms: Vec<(TermKind, SubgroupInHomology<F>)>,
    /// `maps[i]` goes from `terms[i]` to `terms[i + 1]`, in subgroup
    /// coordinates.
    pub maps: Vec<Matrix<F>>,
    pub verdicts: Vec<TermVerdict>,
}

impl<F: Scalar> GSequence<F> {
    pub fn is_exact(&self) -> bool {
        self.verdicts.iter().filter(|v| v.audited).all(|v| v.exact)
    }

    pub fn non_exact(&self) -> impl Iterator<Item = &TermVerdict> {
        self.verdicts.iter().filter(|v| v.audited && !v.exact)
    }

    pub fn verdict(&self, kind: TermKind, degree: usize) -> Option<&TermVerdict> {
        self.verdicts
            .iter()
            .find(|v| v.kind == kind && v.degree == degree)
    }
}

/// `ker{G_n(B) → G_n(A,B;φ)} / im{G^rel_{n+1} → G_n(B)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaHomology {
    pub degree: usize,
    pub dim: usize,
    pub witnesses: Vec<String>,
}

/// The homology ladder of a DG algebra map `φ: A → B`.
#[derive(Clone, Debug)]
pub struct Ladder<F> {
    names: Names,
    window: usize,
    pub d_bb: DerivationComplex<F>,
    pub d_ab: DerivationComplex<F>,
    pub e_b: DerivationComplex<F>,
    pub e_a: DerivationComplex<F>,
    /// `φ*: Der(B,B;1) → Der(A,B;φ)`
    pub fstar: GradedMap<F>,
    /// `φ̂*: Der(B,ℚ;ε) → Der(A,ℚ;ε)`
    pub fhat: GradedMap<F>,
    pub eps_b: GradedMap<F>,
    pub eps_a: GradedMap<F>,
    pub rel: Cone<F>,
    pub rel_hat: Cone<F>,
    /// `(ε_*, ε_*): Rel(φ*) → Rel(φ̂*)`
    pub eps_rel: GradedMap<F>,
}

impl<F: Scalar> Ladder<F> {
    pub fn new(phi: Morphism<F>, names: Names) -> Result<Self, ComplexError> {
        let a = Arc::clone(phi.source());
        let b = Arc::clone(phi.target());
        let window = Self::default_window(&phi);
        let d_bb = DerivationComplex::self_maps(Arc::clone(&b))?;
        let d_ab = DerivationComplex::new(phi.clone())?;
        let e_b = DerivationComplex::augmented(b)?;
        let e_a = DerivationComplex::augmented(a)?;
        let fstar = d_bb.precompose(&phi, &d_ab)?;
        let fhat = e_b.precompose(&phi, &e_a)?;
        let eps_b = d_bb.augment(&e_b)?;
        let eps_a = d_ab.augment(&e_a)?;
        let rel = mapping_cone(&fstar, d_bb.chain_complex(), d_ab.chain_complex())?;
        let rel_hat = mapping_cone(&fhat, e_b.chain_complex(), e_a.chain_complex())?;
        let eps_rel = cone_map(
            &eps_b,
            &eps_a,
            (d_bb.chain_complex(), e_b.chain_complex()),
            (d_ab.chain_complex(), e_a.chain_complex()),
            &rel,
            &rel_hat,
        )?;
        Ok(Ladder {
            names,
            window,
            d_bb,
            d_ab,
            e_b,
            e_a,
            fstar,
            fhat,
            eps_b,
            eps_a,
            rel,
            rel_hat,
            eps_rel,
        })
    }

    /// `2 · (largest generator degree of either algebra) + 2`.
    pub fn default_window(phi: &Morphism<F>) -> usize {
        let top = phi
            .source()
            .max_generator_degree()
            .max(phi.target().max_generator_degree());
        2 * top as usize + 2
    }

    pub fn with_window(mut self, window: usize) -> Self {
        self.window = window;
        self
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn names(&self) -> &Names {
        &self.names
    }

    pub fn morphism(&self) -> &Morphism<F> {
        self.d_ab.morphism()
    }

    /// Largest degree in which any complex of the ladder is nonzero.
    pub fn top(&self) -> usize {
        self.rel.complex.top().max(self.rel_hat.complex.top())
    }

    pub fn label(&self, kind: TermKind, n: usize) -> String {
        let Names {
            source,
            target,
            map,
        } = &self.names;
        match kind {
            TermKind::Gottlieb => format!("G_{n}({target})"),
            TermKind::Evaluation => format!("G_{n}({source},{target};{map})"),
            TermKind::Relative => format!("Grel_{n}({source},{target};{map})"),
        }
    }

    /// `G_n(B)`, the image of `H(ε_*)` on `Der(B, B; 1)`.
    pub fn gottlieb(&self, n: usize) -> SubgroupInHomology<F> {
        let (ambient, subspace) = image_in_homology(
            &self.eps_b,
            n,
            self.d_bb.chain_complex(),
            self.e_b.chain_complex(),
        );
        SubgroupInHomology {
            label: self.label(TermKind::Gottlieb, n),
            degree: n,
            ambient,
            subspace,
            provenance: "H(ε_*): H(Der(B,B;1)) → H(Der(B,ℚ;ε))",
        }
    }

    /// `G_n(A, B; φ)`, the image of `H(ε_*)` on `Der(A, B; φ)`.
    pub fn evaluation(&self, n: usize) -> SubgroupInHomology<F> {
        let (ambient, subspace) = image_in_homology(
            &self.eps_a,
            n,
            self.d_ab.chain_complex(),
            self.e_a.chain_complex(),
        );
        SubgroupInHomology {
            label: self.label(TermKind::Evaluation, n),
            degree: n,
            ambient,
            subspace,
            provenance: "H(ε_*): H(Der(A,B;φ)) → H(Der(A,ℚ;ε))",
        }
    }

    /// `G^rel_n(A, B; φ)`, the image of `H(ε_*, ε_*)` on `Rel(φ*)`.
    pub fn relative(&self, n: usize) -> SubgroupInHomology<F> {
        let (ambient, subspace) =
            image_in_homology(&self.eps_rel, n, &self.rel.complex, &self.rel_hat.complex);
        SubgroupInHomology {
            label: self.label(TermKind::Relative, n),
            degree: n,
            ambient,
            subspace,
            provenance: "H(ε_*, ε_*): H(Rel(φ*)) → H(Rel(φ̂*))",
        }
    }

    pub fn subgroup(&self, kind: TermKind, n: usize) -> SubgroupInHomology<F> {
        match kind {
            TermKind::Gottlieb => self.gottlieb(n),
            TermKind::Evaluation => self.evaluation(n),
            TermKind::Relative => self.relative(n),
        }
    }

    /// Renders a chain of the ambient complex of a G-sequence term.
    pub fn render(&self, kind: TermKind, n: usize, chain: &[F]) -> String {
        match kind {
            TermKind::Gottlieb => self.e_b.render(n, chain),
            TermKind::Evaluation => self.e_a.render(n, chain),
            TermKind::Relative => {
                let split = self.rel_hat.split(n);
                let a = self.e_b.render(n.saturating_sub(1), &chain[..split]);
                let b = self.e_a.render(n, &chain[split..]);
                format!("({a}, {b})")
            }
        }
    }

    /// The ladder map leaving a term of the G-sequence, on ambient
    /// homology: `H(φ̂*)`, `H(Ĵ)` or `H(P̂)`.
    fn ambient_map(&self, kind: TermKind, n: usize) -> Matrix<F> {
        let (eb, ea, r) = (
            self.e_b.chain_complex(),
            self.e_a.chain_complex(),
            &self.rel_hat.complex,
        );
        match kind {
            TermKind::Gottlieb => self.fhat.induced(n, eb, ea, &eb.homology(n), &ea.homology(n)),
            TermKind::Evaluation => {
                self.rel_hat
                    .j
                    .induced(n, ea, r, &ea.homology(n), &r.homology(n))
            }
            TermKind::Relative => {
                let low = n.saturating_sub(1);
                self.rel_hat
                    .p
                    .induced(n, r, eb, &r.homology(n), &eb.homology(low))
            }
        }
    }

    /// Restriction of the ladder map to `from → to`, in subgroup
    /// coordinates.
    fn restricted(
        &self,
        kind: TermKind,
        from: &SubgroupInHomology<F>,
        to: &SubgroupInHomology<F>,
    ) -> Result<Matrix<F>, ComplexError> {
        let m = self.ambient_map(kind, from.degree);
        let cols = from
            .subspace
            .basis()
            .iter()
            .map(|v| {
                to.subspace
                    .coordinates(&m.apply(v))
                    .ok_or_else(|| ComplexError::NotExact {
                        what: format!("{} does not map into {}", from.label, to.label),
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_columns(to.dim(), &cols))
    }

    /// Term order from the top of the window down to `G_2(A, B; φ)`.
    fn term_order(&self) -> Vec<(TermKind, usize)> {
        let mut order = vec![(TermKind::Relative, self.window + 1)];
        for n in (2..=self.window).rev() {
            order.push((TermKind::Gottlieb, n));
            order.push((TermKind::Evaluation, n));
            if n > 2 {
                order.push((TermKind::Relative, n));
            }
        }
        order
    }

    /// Builds the G-sequence with restricted maps and exactness verdicts.
    /// Fails if two consecutive maps do not compose to zero.
    pub fn g_sequence(&self) -> Result<GSequence<F>, ComplexError> {
        let order = self.term_order();
        let terms: Vec<(TermKind, SubgroupInHomology<F>)> = order
            .iter()
            .map(|&(k, n)| (k, self.subgroup(k, n)))
            .collect();
        let maps = terms
            .windows(2)
            .map(|w| self.restricted(w[0].0, &w[0].1, &w[1].1))
            .collect::<Result<Vec<_>, _>>()?;

        // A zero term in front makes the top term auditable when
        // G_{window+1}(A,B;φ) vanishes for degree reasons.
        let complete = self.window + 1 > self.e_a.top();
        let mut seq_terms = vec![SequenceTerm {
            label: "0".into(),
            degree: self.window + 2,
            dim: 0,
        }];
        seq_terms.extend(terms.iter().map(|(_, s)| SequenceTerm {
            label: s.label.clone(),
            degree: s.degree,
            dim: s.dim(),
        }));
        let mut seq_maps = vec![Matrix::zeros(terms[0].1.dim(), 0)];
        seq_maps.extend(maps.iter().cloned());
        let seq = MapSequence::new(seq_terms, seq_maps)?;
        if !seq.is_chain_complex() {
            let i = (0..seq.maps.len() - 1)
                .find(|&i| !seq.maps[i + 1].mul(&seq.maps[i]).is_zero())
                .unwrap_or(0);
            return Err(ComplexError::NotExact {
                what: format!("G-sequence composite through {} is nonzero", seq.terms[i + 1].label),
            });
        }

        let last = terms.len() - 1;
        let verdicts = terms
            .iter()
            .enumerate()
            .map(|(i, (kind, s))| {
                let audited = i < last && (i > 0 || complete);
                let mut v = TermVerdict {
                    label: s.label.clone(),
                    kind: *kind,
                    degree: s.degree,
                    dim: s.dim(),
                    audited,
                    exact: true,
                    defect: 0,
                    witnesses: Vec::new(),
                };
                if audited {
                    let audit = seq.audit(i + 1);
                    v.exact = audit.is_exact();
                    v.defect = audit.defect;
                    v.witnesses = audit
                        .witnesses
                        .iter()
                        .map(|w| self.render(*kind, s.degree, &s.representative(w)))
                        .collect();
                }
                v
            })
            .collect();
        Ok(GSequence {
            window: self.window,
            terms,
            maps,
            verdicts,
        })
    }

    /// ω-homology at the `G_n(B)` term.
    pub fn omega_homology(&self, n: usize) -> Result<OmegaHomology, ComplexError> {
        let g = self.gottlieb(n);
        let rel = self.relative(n + 1);
        let down = self.evaluation(n);
        let incoming = self.restricted(TermKind::Relative, &rel, &g)?;
        let outgoing = self.restricted(TermKind::Gottlieb, &g, &down)?;
        let seq = MapSequence::new(
            vec![
                SequenceTerm {
                    label: rel.label.clone(),
                    degree: n + 1,
                    dim: rel.dim(),
                },
                SequenceTerm {
                    label: g.label.clone(),
                    degree: n,
                    dim: g.dim(),
                },
                SequenceTerm {
                    label: down.label.clone(),
                    degree: n,
                    dim: down.dim(),
                },
            ],
            vec![incoming, outgoing],
        )?;
        let audit = seq.audit(1);
        Ok(OmegaHomology {
            degree: n,
            dim: audit.defect,
            witnesses: audit
                .witnesses
                .iter()
                .map(|w| self.render(TermKind::Gottlieb, n, &g.representative(w)))
                .collect(),
        })
    }
}
