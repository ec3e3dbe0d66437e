use std::collections::BTreeMap;

use super::monomial::Monomial;
use crate::scalar::Scalar;

/// Finite linear combination of monomials with nonzero coefficients.
///
/// Elements carry no reference to an algebra; operations that need degrees
/// or parities go through [`super::FreeDga`].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Element<F> {
    terms: BTreeMap<Monomial, F>,
}

impl<F: Scalar> Element<F> {
    pub fn zero() -> Self {
        Element {
            terms: BTreeMap::new(),
        }
    }

    pub fn unit() -> Self {
        Self::term(Monomial::unit(), F::one())
    }

    pub fn scalar(c: F) -> Self {
        Self::term(Monomial::unit(), c)
    }

    pub fn term(m: Monomial, c: F) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, F::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    /// Coefficient of the unit monomial: the augmentation.
    pub fn constant_term(&self) -> F {
        self.coefficient(&Monomial::unit())
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_assign(&mut self, other: &Element<F>) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &F, other: &Element<F>) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(m.clone(), c.clone() * x.clone());
        }
    }

    pub fn add(&self, other: &Element<F>) -> Element<F> {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Element<F>) -> Element<F> {
        let mut out = self.clone();
        out.add_scaled(&-F::one(), other);
        out
    }

    pub fn scale(&self, c: &F) -> Element<F> {
        if c.is_zero() {
            return Self::zero();
        }
        Element {
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn neg(&self) -> Element<F> {
        self.scale(&-F::one())
    }

    /// Largest generator index + 1 across all terms.
    pub fn support_len(&self) -> usize {
        self.terms.keys().map(Monomial::support_len).max().unwrap_or(0)
    }

    /// Drops every term whose monomial satisfies `pred`.
    pub fn without(&self, pred: impl Fn(&Monomial) -> bool) -> Element<F> {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !pred(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

impl<F: Scalar> FromIterator<(Monomial, F)> for Element<F> {
    fn from_iter<I: IntoIterator<Item = (Monomial, F)>>(iter: I) -> Self {
        let mut e = Element::zero();
        for (m, c) in iter {
            e.add_term(m, c);
        }
        e
    }
}
