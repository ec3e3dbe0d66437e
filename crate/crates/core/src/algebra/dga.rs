use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, Mutex};

use super::element::Element;
use super::monomial::Monomial;
use super::AlgebraError;
use crate::linalg::Matrix;
use crate::scalar::{is_odd, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Generator {
            name: name.into(),
            degree,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// The monomials of one degree with a reverse index, used as coordinates.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub degree: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl GradedPiece {
    fn new(degree: u32, monomials: Vec<Monomial>) -> Self {
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        GradedPiece {
            degree,
            monomials,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of an element concentrated in this degree.
    pub fn coordinates<F: Scalar>(&self, e: &Element<F>) -> Result<Vec<F>, AlgebraError> {
        let mut v = vec![F::zero(); self.dim()];
        for (m, c) in e.terms() {
            let i = self
                .position(m)
                .ok_or(AlgebraError::NotHomogeneous { expected: self.degree })?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn element<F: Scalar>(&self, coords: &[F]) -> Element<F> {
        self.monomials
            .iter()
            .zip(coords)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect()
    }
}

/// Outcome of [`validate_dga`]; never an error by itself.
#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport<F> {
    /// Generators whose `d(d(g))` is nonzero, with the offending value.
    pub d_squared_failures: Vec<(String, Element<F>)>,
    /// Generators whose differential has terms of the wrong degree.
    pub degree_violations: Vec<DegreeViolation>,
    /// Generators whose differential has a linear or constant part.
    pub indecomposable_differentials: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeViolation {
    pub generator: String,
    pub expected: u32,
    pub found: Vec<u32>,
}

impl<F> ValidationReport<F> {
    pub fn is_valid(&self) -> bool {
        self.d_squared_failures.is_empty() && self.degree_violations.is_empty()
    }

    pub fn is_minimal(&self) -> bool {
        self.indecomposable_differentials.is_empty()
    }
}

/// Free graded-commutative algebra on finitely many generators with a
/// degree +1 differential. Odd generators square to zero.
pub struct FreeDga<F> {
    generators: Vec<Generator>,
    differential: Vec<Element<F>>,
    pieces: Mutex<HashMap<u32, Arc<GradedPiece>>>,
}

impl<F: Scalar> Clone for FreeDga<F> {
    fn clone(&self) -> Self {
        FreeDga {
            generators: self.generators.clone(),
            differential: self.differential.clone(),
            pieces: Mutex::new(HashMap::new()),
        }
    }
}

impl<F: std::fmt::Debug> std::fmt::Debug for FreeDga<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FreeDga")
            .field("generators", &self.generators)
            .field("differential", &self.differential)
            .finish()
    }
}

impl<F: Scalar> PartialEq for FreeDga<F> {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators && self.differential == other.differential
    }
}

impl<F: Scalar> FreeDga<F> {
    /// Builds and validates an algebra. `differential[i]` is `d` of
    /// generator `i`; missing trailing entries default to zero.
    pub fn new(
        generators: Vec<Generator>,
        differential: Vec<Element<F>>,
    ) -> Result<Self, AlgebraError> {
        let alg = Self::unvalidated(generators, differential)?;
        let report = validate_dga(&alg);
        if let Some(v) = report.degree_violations.first() {
            return Err(AlgebraError::DifferentialDegree {
                generator: v.generator.clone(),
                expected: v.expected,
                found: v.found.clone(),
            });
        }
        if let Some((g, _)) = report.d_squared_failures.first() {
            return Err(AlgebraError::DSquaredNonzero(g.clone()));
        }
        Ok(alg)
    }

    /// Checks only the structural invariants (names, degrees, references);
    /// `d∘d = 0` and differential degrees are left to [`validate_dga`].
    pub fn unvalidated(
        generators: Vec<Generator>,
        mut differential: Vec<Element<F>>,
    ) -> Result<Self, AlgebraError> {
        for (i, g) in generators.iter().enumerate() {
            if g.degree == 0 {
                return Err(AlgebraError::ZeroDegree(g.name.clone()));
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(AlgebraError::DuplicateGenerator(g.name.clone()));
            }
        }
        if differential.len() > generators.len() {
            return Err(AlgebraError::ForeignElement);
        }
        differential.resize(generators.len(), Element::zero());
        if differential.iter().any(|e| e.support_len() > generators.len()) {
            return Err(AlgebraError::ForeignElement);
        }
        Ok(FreeDga {
            generators,
            differential,
            pieces: Mutex::new(HashMap::new()),
        })
    }

    /// The ground field as a DG algebra with no generators.
    pub fn ground() -> Self {
        FreeDga {
            generators: Vec::new(),
            differential: Vec::new(),
            pieces: Mutex::new(HashMap::new()),
        }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn generator_degree(&self, i: usize) -> u32 {
        self.generators[i].degree
    }

    pub fn max_generator_degree(&self) -> u32 {
        self.generators.iter().map(|g| g.degree).max().unwrap_or(0)
    }

    /// The element consisting of generator `i`.
    pub fn gen(&self, i: usize) -> Element<F> {
        Element::monomial(Monomial::generator(i))
    }

    /// The generator called `name`; panics when absent.
    pub fn gen_named(&self, name: &str) -> Element<F> {
        let i = self
            .generator_index(name)
            .unwrap_or_else(|| panic!("no generator named {name}"));
        self.gen(i)
    }

    pub fn generator_differential(&self, i: usize) -> &Element<F> {
        &self.differential[i]
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        m.exponents()
            .iter()
            .zip(&self.generators)
            .map(|(&e, g)| e * g.degree)
            .sum()
    }

    /// `true` if the monomial is nonzero in this algebra (odd exponents ≤ 1).
    pub fn is_admissible(&self, m: &Monomial) -> bool {
        m.support_len() <= self.generators.len()
            && m
                .exponents()
                .iter()
                .zip(&self.generators)
                .all(|(&e, g)| !g.is_odd() || e <= 1)
    }

    /// Common degree of all terms; `Ok(None)` for zero, error when mixed.
    pub fn homogeneous_degree(&self, e: &Element<F>) -> Result<Option<u32>, AlgebraError> {
        self.check_member(e)?;
        let mut deg = None;
        for (m, _) in e.terms() {
            let d = self.monomial_degree(m);
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => return Err(AlgebraError::MixedDegrees),
                _ => {}
            }
        }
        Ok(deg)
    }

    pub fn check_member(&self, e: &Element<F>) -> Result<(), AlgebraError> {
        if e.support_len() > self.generators.len() {
            return Err(AlgebraError::ForeignElement);
        }
        Ok(())
    }

    /// Product of two monomials in normal order, with its Koszul sign.
    /// `None` when an odd generator would appear twice.
    pub fn multiply_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(Monomial, bool)> {
        let n = a.support_len().max(b.support_len());
        let mut exps = vec![0u32; n];
        // Each odd factor of `b` moves left past the odd factors of `a` with
        // larger index.
        let mut odd_in_a_after = 0u64;
        let mut transpositions = 0u64;
        for i in (0..n).rev() {
            let ea = a.exponent(i);
            let eb = b.exponent(i);
            let odd = self.generators.get(i).is_some_and(Generator::is_odd);
            if odd {
                if ea + eb > 1 {
                    return None;
                }
                if eb == 1 {
                    transpositions += odd_in_a_after;
                }
                if ea == 1 {
                    odd_in_a_after += 1;
                }
            }
            exps[i] = ea + eb;
        }
        Some((Monomial::from_exponents(exps), is_odd(transpositions)))
    }

    /// Graded-commutative product.
    pub fn multiply(&self, a: &Element<F>, b: &Element<F>) -> Result<Element<F>, AlgebraError> {
        self.check_member(a)?;
        self.check_member(b)?;
        Ok(self.mul(a, b))
    }

    pub(crate) fn mul(&self, a: &Element<F>, b: &Element<F>) -> Element<F> {
        let mut out = Element::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                if let Some((m, neg)) = self.multiply_monomials(ma, mb) {
                    let c = ca.clone() * cb.clone();
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        out
    }

    pub fn power(&self, a: &Element<F>, k: u32) -> Element<F> {
        let mut out = Element::unit();
        for _ in 0..k {
            out = self.mul(&out, a);
        }
        out
    }

    /// All admissible monomials of degree `k` in ascending lexicographic
    /// order of exponent vectors (generator declaration order).
    pub fn graded_piece(&self, k: u32) -> Arc<GradedPiece> {
        if let Some(p) = self.pieces.lock().unwrap().get(&k) {
            return Arc::clone(p);
        }
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.generators.len()];
        self.enumerate(0, k, &mut exps, &mut out);
        out.sort();
        let piece = Arc::new(GradedPiece::new(k, out));
        self.pieces
            .lock()
            .unwrap()
            .insert(k, Arc::clone(&piece));
        piece
    }

    fn enumerate(&self, i: usize, remaining: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == self.generators.len() {
            if remaining == 0 {
                out.push(Monomial::from_exponents(exps.clone()));
            }
            return;
        }
        let g = &self.generators[i];
        let max = if g.is_odd() { 1 } else { remaining / g.degree };
        for e in 0..=max.min(remaining / g.degree) {
            exps[i] = e;
            self.enumerate(i + 1, remaining - e * g.degree, exps, out);
        }
        exps[i] = 0;
    }

    pub fn monomial_basis(&self, k: u32) -> Vec<Monomial> {
        self.graded_piece(k).monomials().to_vec()
    }

    /// Extends the stored generator differentials to `a` by the Leibniz rule.
    pub fn differential(&self, a: &Element<F>) -> Element<F> {
        let identity: Vec<Element<F>> = (0..self.num_generators()).map(|i| self.gen(i)).collect();
        let mut out = Element::zero();
        for (m, c) in a.terms() {
            let dm = extend_on_monomial(self, &identity, &self.differential, 1, m);
            out.add_scaled(c, &dm);
        }
        out
    }

    /// Matrix of `d` from degree `k` to degree `k + 1` in monomial coordinates.
    pub fn differential_matrix(&self, k: u32) -> Matrix<F> {
        let src = self.graded_piece(k);
        let tgt = self.graded_piece(k + 1);
        let columns: Vec<Vec<F>> = src
            .monomials()
            .iter()
            .map(|m| {
                let d = self.differential(&Element::monomial(m.clone()));
                tgt.coordinates(&d)
                    .expect("differential of a homogeneous element is homogeneous")
            })
            .collect();
        Matrix::from_columns(tgt.dim(), &columns)
    }

    pub fn is_minimal(&self) -> bool {
        validate_dga(self).is_minimal()
    }

    /// Human-readable form, e.g. `-3 x4^2*x11 + y8`.
    pub fn display(&self, e: &Element<F>) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<(&Monomial, &F)> = e.terms().collect();
        terms.sort_by(|(a, _), (b, _)| {
            self.monomial_degree(b)
                .cmp(&self.monomial_degree(a))
                .then_with(|| b.cmp(a))
        });
        let mut out = String::new();
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let mono = self.display_monomial(m);
            out.push_str(&signed_term(k == 0, c, if m.is_unit() { None } else { Some(&mono) }));
        }
        out
    }

    pub fn display_monomial(&self, m: &Monomial) -> String {
        if m.is_unit() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let name = self
                .generators
                .get(i)
                .map(|g| g.name.clone())
                .unwrap_or_else(|| format!("g{i}"));
            if e == 1 {
                parts.push(name);
            } else {
                parts.push(format!("{name}^{e}"));
            }
        }
        parts.join("*")
    }
}

/// Formats `c * body` as a term of a sum: `body` is omitted for constants.
pub(crate) fn signed_term<F: Scalar>(first: bool, c: &F, body: Option<&str>) -> String {
    let negative = c.to_string().starts_with('-');
    let abs = if negative { -c.clone() } else { c.clone() };
    let mut s = String::new();
    match (first, negative) {
        (true, true) => s.push('-'),
        (true, false) => {}
        (false, true) => s.push_str(" - "),
        (false, false) => s.push_str(" + "),
    }
    match body {
        None => {
            let _ = write!(s, "{abs}");
        }
        Some(b) if abs.is_one_value() => s.push_str(b),
        Some(b) => {
            let _ = write!(s, "{abs} {b}");
        }
    }
    s
}

/// Evaluates on the monomial `m` of `source` the map `D` determined by
/// generator values `values` (in `target`) and the rule
/// `D(xy) = D(x)·ρ(y) + (-1)^{parity·|x|} ρ(x)·D(y)`, where `ρ` is the
/// algebra map with generator images `rho`.
///
/// With `ρ = id`, `parity = 1` this is the Leibniz extension of a
/// differential; with `parity = n` it is the extension of a degree-`n`
/// `ρ`-derivation.
pub fn extend_on_monomial<F: Scalar>(
    source_and_target: &FreeDga<F>,
    rho: &[Element<F>],
    values: &[Element<F>],
    parity: u64,
    m: &Monomial,
) -> Element<F> {
    extend_between(source_and_target, source_and_target, rho, values, parity, m)
}

pub(crate) fn extend_between<F: Scalar>(
    source: &FreeDga<F>,
    target: &FreeDga<F>,
    rho: &[Element<F>],
    values: &[Element<F>],
    parity: u64,
    m: &Monomial,
) -> Element<F> {
    let factors = m.factors();
    if factors.iter().all(|&g| values[g].is_zero()) {
        return Element::zero();
    }
    let k = factors.len();
    // suffix[t] = ρ(g_t … g_{k-1})
    let mut suffix = vec![Element::unit(); k + 1];
    for t in (0..k).rev() {
        suffix[t] = target.mul(&rho[factors[t]], &suffix[t + 1]);
    }
    let mut out = Element::zero();
    let mut prefix = Element::unit();
    let mut prefix_degree = 0u64;
    for t in 0..k {
        let g = factors[t];
        if !values[g].is_zero() {
            let term = target.mul(&target.mul(&prefix, &values[g]), &suffix[t + 1]);
            let s = if is_odd(parity * prefix_degree) { -F::one() } else { F::one() };
            out.add_scaled(&s, &term);
        }
        prefix = target.mul(&prefix, &rho[g]);
        if prefix.is_zero() && t + 1 < k {
            // ρ(prefix) = 0 kills every later term.
            break;
        }
        prefix_degree += source.generator_degree(g) as u64;
    }
    out
}

/// Checks `d∘d = 0`, differential degrees and decomposability.
pub fn validate_dga<F: Scalar>(alg: &FreeDga<F>) -> ValidationReport<F> {
    let mut report = ValidationReport {
        d_squared_failures: Vec::new(),
        degree_violations: Vec::new(),
        indecomposable_differentials: Vec::new(),
    };
    for (i, g) in alg.generators.iter().enumerate() {
        let d = &alg.differential[i];
        let mut found: Vec<u32> = d
            .terms()
            .map(|(m, _)| alg.monomial_degree(m))
            .filter(|&deg| deg != g.degree + 1)
            .collect();
        found.sort_unstable();
        found.dedup();
        if !found.is_empty() {
            report.degree_violations.push(DegreeViolation {
                generator: g.name.clone(),
                expected: g.degree + 1,
                found,
            });
        }
        if d.terms().any(|(m, _)| m.word_length() < 2) {
            report.indecomposable_differentials.push(g.name.clone());
        }
    }
    for (i, g) in alg.generators.iter().enumerate() {
        let dd = alg.differential(&alg.differential[i]);
        if !dd.is_zero() {
            report.d_squared_failures.push((g.name.clone(), dd));
        }
    }
    report
}
