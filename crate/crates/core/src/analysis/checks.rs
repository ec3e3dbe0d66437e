use std::sync::Arc;

use super::presentation::{cohomology_derivation_space, cohomology_presentation, PresentedMap};
use super::AnalysisError;
use crate::algebra::{cohomology_space, Element, FreeDga, Generator, Morphism};
use crate::derivation::DerivationComplex;
use crate::linalg::kernel;
use crate::scalar::Scalar;
use crate::sequences::{Ladder, Names, TermKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThomRow {
    pub degree: usize,
    /// `dim H_n(Der(Λ(z_m), X; φ))`
    pub derivation_dim: usize,
    /// `dim H^{m-n}(X)`
    pub cohomology_dim: usize,
}

impl ThomRow {
    pub fn agrees(&self) -> bool {
        self.derivation_dim == self.cohomology_dim
    }
}

/// Compares `H_n(Der(Λ(z_m), X; φ))` with `H^{m-n}(X)` for `n` in
/// `range`, where `φ(z_m)` is `image` (zero by default).
pub fn thom_check<F: Scalar>(
    x: &Arc<FreeDga<F>>,
    m: u32,
    image: Option<Element<F>>,
    range: std::ops::RangeInclusive<usize>,
) -> Result<Vec<ThomRow>, AnalysisError> {
    let z = Arc::new(FreeDga::new(vec![Generator::new(format!("z{m}"), m)], Vec::new())?);
    let image = image.unwrap_or_else(Element::zero);
    if !x.differential(&image).is_zero() {
        return Err(AnalysisError::NotCocycle {
            element: x.display(&image),
        });
    }
    let phi = Morphism::new(z, Arc::clone(x), vec![image])?;
    let der = DerivationComplex::new(phi)?;
    Ok(range
        .map(|n| ThomRow {
            degree: n,
            derivation_dim: der.homology(n).dim(),
            cohomology_dim: (m as usize)
                .checked_sub(n)
                .map_or(0, |k| cohomology_space(x, k as u32).dim()),
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrivelRow {
    pub degree: usize,
    /// `dim H_{2r}(Der(M_Y, M_X; φ))`
    pub derivation_dim: usize,
    /// `dim Der_{2r}(H*(Y), H*(X); H(f))`
    pub cohomology_dim: usize,
}

impl GrivelRow {
    pub fn agrees(&self) -> bool {
        self.derivation_dim == self.cohomology_dim
    }
}

/// Truncation used for cohomology presentations: past the degree of
/// every relation of a pure model and past twice the top class seen.
pub fn presentation_bound<F: Scalar>(alg: &FreeDga<F>) -> u32 {
    2 * alg.max_generator_degree() + 2
}

/// Checks the necessary F₀ conditions visible below `bound`: no odd
/// cohomology and nothing in the upper half of the range.
pub fn check_f0<F: Scalar>(alg: &FreeDga<F>, name: &str, bound: u32) -> Result<(), AnalysisError> {
    for k in 1..=bound {
        let d = cohomology_space(alg, k).dim();
        if d > 0 && k % 2 == 1 {
            return Err(AnalysisError::NotF0 {
                model: name.to_string(),
                reason: format!("H^{k} ≠ 0"),
            });
        }
        if d > 0 && k > bound / 2 {
            return Err(AnalysisError::NotF0 {
                model: name.to_string(),
                reason: format!("cohomology in degree {k} suggests it is not finite"),
            });
        }
    }
    Ok(())
}

/// Compares derivation homology of the models with derivations of the
/// cohomology algebras in each even degree of `degrees`.
pub fn grivel_check<F: Scalar>(
    phi: &Morphism<F>,
    degrees: impl IntoIterator<Item = usize>,
) -> Result<Vec<GrivelRow>, AnalysisError> {
    let (a, b) = (phi.source(), phi.target());
    let bound = presentation_bound(a).max(presentation_bound(b));
    check_f0(a, "source", bound)?;
    check_f0(b, "target", bound)?;
    let pa = cohomology_presentation(a, bound)?;
    let pb = cohomology_presentation(b, bound)?;
    let h = PresentedMap::induced(phi, &pa, &pb)?;
    let der = DerivationComplex::new(phi.clone())?;
    degrees
        .into_iter()
        .filter(|n| n % 2 == 0 && *n >= 2)
        .map(|n| {
            Ok(GrivelRow {
                degree: n,
                derivation_dim: der.homology(n).dim(),
                cohomology_dim: cohomology_derivation_space(&h, n as u32)?.dim(),
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingRow {
    pub degree: usize,
    /// `G_{n+1}(A,B;φ) → G^rel_{n+1}` is injective.
    pub injective: bool,
    /// `G^rel_{n+1} → G_n(B)` is onto.
    pub surjective: bool,
    /// The sequence is exact at `G^rel_{n+1}`.
    pub middle_exact: bool,
}

impl SplittingRow {
    pub fn holds(&self) -> bool {
        self.injective && self.surjective && self.middle_exact
    }
}

/// Verifies that the G-sequence breaks into short exact sequences
/// `0 → G_{n+1}(A,B;φ) → G^rel_{n+1} → G_n(B) → 0`. Refuses unless the
/// source has zero differential, `φ` has zero linear part and the target
/// passes the F₀ checks.
pub fn splitting_check<F: Scalar>(
    phi: &Morphism<F>,
    window: Option<usize>,
) -> Result<Vec<SplittingRow>, AnalysisError> {
    let a = phi.source();
    if (0..a.num_generators()).any(|i| !a.generator_differential(i).is_zero()) {
        return Err(AnalysisError::Hypothesis(
            "source differential is nonzero".into(),
        ));
    }
    if !phi.target().is_minimal() {
        return Err(AnalysisError::Hypothesis("target is not minimal".into()));
    }
    if !phi.has_zero_linear_part() {
        return Err(AnalysisError::Hypothesis("nonzero linear part".into()));
    }
    let b = phi.target();
    check_f0(b, "target", presentation_bound(b))?;

    let mut ladder = Ladder::new(phi.clone(), Names::default())?;
    if let Some(w) = window {
        ladder = ladder.with_window(w);
    }
    let g = ladder.g_sequence()?;
    let mut rows = Vec::new();
    for (i, (kind, term)) in g.terms.iter().enumerate() {
        if *kind != TermKind::Relative || i == 0 || i + 1 >= g.terms.len() {
            continue;
        }
        let j = &g.maps[i - 1];
        let p = &g.maps[i];
        let verdict = &g.verdicts[i];
        rows.push(SplittingRow {
            degree: term.degree - 1,
            injective: kernel(j).dim() == 0,
            surjective: p.rank() == p.rows(),
            middle_exact: !verdict.audited || verdict.exact,
        });
    }
    rows.sort_by_key(|r| r.degree);
    Ok(rows)
}
