use super::ladder::{Ladder, Names};
use crate::derivation::{
    connecting_map, ChainComplex, ComplexError, Cone, DerivationComplex, GradedMap, MapSequence,
    SequenceTerm,
};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesTerm {
    pub label: String,
    /// Homotopy-theoretic reading of the term, where there is one.
    pub meaning: Option<String>,
    pub degree: usize,
    pub dim: usize,
    pub audited: bool,
    pub exact: bool,
}

/// A long exact sequence in homology, read from the top degree down, with
/// its exactness audit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesReport {
    pub name: String,
    pub terms: Vec<LesTerm>,
}

impl LesReport {
    pub fn is_exact(&self) -> bool {
        self.terms.iter().all(|t| !t.audited || t.exact)
    }

    pub fn term(&self, label: &str) -> Option<&LesTerm> {
        self.terms.iter().find(|t| t.label == label)
    }

    /// Audits `seq` (whose first term is a zero placeholder) and fails on
    /// the first inexact term, since these sequences are exact by theory.
    fn from_sequence<F: Scalar>(
        name: String,
        seq: &MapSequence<F>,
        meanings: Vec<Option<String>>,
    ) -> Result<Self, ComplexError> {
        let n = seq.terms.len();
        let mut terms = Vec::with_capacity(n - 1);
        for (i, (t, meaning)) in seq.terms.iter().zip(meanings).enumerate().skip(1) {
            let audited = i + 1 < n;
            let exact = !audited || seq.audit(i).is_exact();
            if !exact {
                return Err(ComplexError::NotExact {
                    what: format!("{name} at {}", t.label),
                });
            }
            terms.push(LesTerm {
                label: t.label.clone(),
                meaning,
                degree: t.degree,
                dim: t.dim,
                audited,
                exact,
            });
        }
        Ok(LesReport { name, terms })
    }
}

struct Term<F> {
    label: String,
    meaning: Option<String>,
    degree: usize,
    dim: usize,
    /// Map to the next term.
    out: Option<Matrix<F>>,
}

fn assemble<F: Scalar>(
    name: String,
    terms: Vec<Term<F>>,
) -> Result<LesReport, ComplexError> {
    let first = terms.first().map_or(0, |t| t.dim);
    let mut seq_terms = vec![SequenceTerm {
        label: "0".into(),
        degree: terms.first().map_or(0, |t| t.degree + 1),
        dim: 0,
    }];
    let mut maps = vec![Matrix::zeros(first, 0)];
    let mut meanings = vec![None];
    for t in terms {
        seq_terms.push(SequenceTerm {
            label: t.label,
            degree: t.degree,
            dim: t.dim,
        });
        meanings.push(t.meaning);
        if let Some(m) = t.out {
            maps.push(m);
        }
    }
    let seq = MapSequence::new(seq_terms, maps)?;
    LesReport::from_sequence(name, &seq, meanings)
}

type Labeler<'a> = &'a dyn Fn(usize) -> (String, Option<String>);

/// `… → H_n(C) → H_n(D) → H_n(Rel) → H_{n-1}(C) → … → H_2(D) → H_2(Rel)`.
fn cone_les<F: Scalar>(
    name: String,
    f: &GradedMap<F>,
    (c, d): (&ChainComplex<F>, &ChainComplex<F>),
    rel: &Cone<F>,
    labels: [Labeler<'_>; 3],
) -> Result<LesReport, ComplexError> {
    let r = &rel.complex;
    let top = r.top().max(c.top()).max(d.top());
    let mut terms = Vec::new();
    for n in (2..=top).rev() {
        let (hc, hd, hr) = (c.homology(n), d.homology(n), r.homology(n));
        let term = |which: usize, dim: usize, out: Option<Matrix<F>>| {
            let (label, meaning) = labels[which](n);
            Term {
                label,
                meaning,
                degree: n,
                dim,
                out,
            }
        };
        terms.push(term(0, hc.dim(), Some(f.induced(n, c, d, &hc, &hd))));
        terms.push(term(1, hd.dim(), Some(rel.j.induced(n, d, r, &hd, &hr))));
        let down = (n > 2).then(|| rel.p.induced(n, r, c, &hr, &c.homology(n - 1)));
        terms.push(term(2, hr.dim(), down));
    }
    assemble(name, terms)
}

fn der(a: &str, b: &str, phi: &str, n: usize) -> String {
    format!("H_{n}(Der({a},{b};{phi}))")
}

impl<F: Scalar> Ladder<F> {
    /// `H(Der(B,B;1)) → H(Der(A,B;φ)) → H(Rel(φ*))`, the homotopy sequence
    /// of composing with `f` on mapping spaces.
    pub fn les_of_fstar(&self) -> Result<LesReport, ComplexError> {
        let Names {
            source,
            target,
            map,
        } = self.names();
        let c = |n| (der(target, target, "1", n), None);
        let d = |n| (der(source, target, map, n), None);
        let r = |n| (format!("H_{n}(Rel({map}*))"), None);
        cone_les(
            format!("homology sequence of {map}*"),
            &self.fstar,
            (self.d_bb.chain_complex(), self.d_ab.chain_complex()),
            &self.rel,
            [&c, &d, &r],
        )
    }

    /// `H(Der(B,ℚ;ε)) → H(Der(A,ℚ;ε)) → H(Rel(φ̂*))`, the rational
    /// homotopy sequence of the map itself.
    pub fn les_of_f(&self) -> Result<LesReport, ComplexError> {
        let Names {
            source,
            target,
            map,
        } = self.names();
        let c = |n| (der(target, "ℚ", "ε", n), Some(format!("π_{n}({target})⊗ℚ")));
        let d = |n| (der(source, "ℚ", "ε", n), Some(format!("π_{n}({source})⊗ℚ")));
        let r = |n| (format!("H_{n}(Rel({map}^*))"), Some(format!("π_{n}({map})⊗ℚ")));
        cone_les(
            format!("homotopy sequence of {map}"),
            &self.fhat,
            (self.e_b.chain_complex(), self.e_a.chain_complex()),
            &self.rel_hat,
            [&c, &d, &r],
        )
    }

    /// `H(Der(A,B̃;φ̃)) → H(Der(A,B;φ)) → H(Der(A,ℚ;ε)) →Δ …`, the sequence
    /// of the evaluation fibration. Audited in degrees `≥ 2`.
    pub fn les_of_eval_fibration(&self) -> Result<LesReport, ComplexError> {
        let Names {
            source,
            target,
            map,
        } = self.names();
        let reduced = DerivationComplex::augmentation_ideal(self.morphism().clone())?;
        let full = &self.d_ab;
        let aug = &self.e_a;
        let i = reduced.inclusion(full)?;
        let q = &self.eps_a;
        let (k, c, e) = (
            reduced.chain_complex(),
            full.chain_complex(),
            aug.chain_complex(),
        );
        let top = k.top().max(c.top()).max(e.top());
        let mut terms = Vec::new();
        for n in (2..=top).rev() {
            let (hk, hc, he) = (k.homology(n), c.homology(n), e.homology(n));
            terms.push(Term {
                label: der(source, &format!("{target}~"), &format!("{map}~"), n),
                meaning: Some(format!("π_{n}(map_*)⊗ℚ")),
                degree: n,
                dim: hk.dim(),
                out: Some(i.induced(n, k, c, &hk, &hc)),
            });
            terms.push(Term {
                label: der(source, target, map, n),
                meaning: Some(format!("π_{n}(map)⊗ℚ")),
                degree: n,
                dim: hc.dim(),
                out: Some(q.induced(n, c, e, &hc, &he)),
            });
            let delta = if n > 2 {
                Some(connecting_map(&i, q, (k, c, e), n)?)
            } else {
                None
            };
            terms.push(Term {
                label: der(source, "ℚ", "ε", n),
                meaning: Some(format!("π_{n}({source})⊗ℚ")),
                degree: n,
                dim: he.dim(),
                out: delta,
            });
        }
        assemble(format!("evaluation fibration of {map}"), terms)
    }
}
