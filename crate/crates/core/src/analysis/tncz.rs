use std::sync::Arc;

use super::AnalysisError;
use crate::algebra::{Element, FreeDga, Monomial, Morphism};
use crate::derivation::{Derivation, DerivationComplex};
use crate::linalg::{solve_linear, Matrix};
use crate::models::product;
use crate::scalar::Scalar;

/// Outcome of the search for a trivialization of `Λ(u) ⊗ ΛV → ΛV`.
#[derive(Clone, Debug)]
pub struct TnczVerdict<F> {
    /// A δ-cycle `ψ` of degree `|u|` with `ψ(u) = 1`.
    pub psi: Option<Derivation<F>>,
    /// `ψ` in `P∂w` notation.
    pub psi_display: Option<String>,
    /// `Φ: (Λ(u)⊗ΛV, D) → (Λ(u)⊗ΛV, d)`, `Φ(v) = v + u·ψ(v)`.
    pub trivialization: Option<Morphism<F>>,
    /// When no `ψ` exists: the nonzero values `u*(Dw)` that no correction
    /// can cancel.
    pub obstruction: Vec<String>,
    pub audit: Vec<String>,
}

impl<F> TnczVerdict<F> {
    pub fn trivializes(&self) -> bool {
        self.trivialization.is_some()
    }
}

/// `total` is `Λ(u) ⊗ ΛV` with `u` its first generator, the remaining
/// generators being those of `fiber` in the same order.
pub fn tncz_analyze<F: Scalar>(
    total: &Arc<FreeDga<F>>,
    fiber: &Arc<FreeDga<F>>,
) -> Result<TnczVerdict<F>, AnalysisError> {
    let malformed = |s: &str| AnalysisError::MalformedRelative(s.to_string());
    let Some(u) = total.generators().first() else {
        return Err(malformed("total space has no generators"));
    };
    if !u.is_odd() {
        return Err(malformed("base generator must have odd degree"));
    }
    if !total.generator_differential(0).is_zero() {
        return Err(malformed("base generator must be a cycle"));
    }
    let same_gens = total.generators()[1..] == *fiber.generators();
    if !same_gens {
        return Err(malformed("generators after u must be the fibre generators"));
    }
    let k = fiber.num_generators();
    let projection_images: Vec<Element<F>> = std::iter::once(Element::zero())
        .chain((0..k).map(|i| fiber.gen(i)))
        .collect();
    let pi = Morphism::new(Arc::clone(total), Arc::clone(fiber), projection_images)
        .map_err(|e| malformed(&format!("projection is not a DG map: {e}")))?;

    let n = u.degree as usize;
    let der = DerivationComplex::new(pi.clone())?;
    let basis = der.full_basis(n);
    let u_star = basis
        .iter()
        .position(|e| e.generator == 0 && e.monomial.is_unit())
        .expect("u* is an elementary derivation");
    let delta = der.full_delta(n);
    let mut rows: Vec<Vec<F>> = delta.row_vectors();
    let mut constraint = vec![F::zero(); basis.len()];
    constraint[u_star] = F::one();
    rows.push(constraint);
    let mut rhs = vec![F::zero(); delta.rows()];
    rhs.push(F::one());
    let system = Matrix::from_rows(basis.len(), rows);

    let mut audit = vec![format!(
        "solving δψ = 0, ψ({}) = 1 in Der_{n} ({} unknowns, {} equations)",
        u.name,
        basis.len(),
        system.rows()
    )];
    let Some(x) = solve_linear(&system, &rhs) else {
        let mut e = vec![F::zero(); basis.len()];
        e[u_star] = F::one();
        let psi0 = der.from_full(n, &e);
        let obstruction = (0..total.num_generators())
            .filter_map(|i| {
                let dw = total.generator_differential(i);
                let v = psi0.evaluate(&pi, dw);
                (!v.is_zero()).then(|| format!("ψ({}) = {}", total.display(dw), fiber.display(&v)))
            })
            .collect();
        audit.push("no solution: the system is inconsistent".into());
        return Ok(TnczVerdict {
            psi: None,
            psi_display: None,
            trivialization: None,
            obstruction,
            audit,
        });
    };
    let psi = der.from_full(n, &x);
    let psi_display = der.render_full(n, &x);
    audit.push(format!("ψ = {psi_display}"));

    let base = Arc::new(FreeDga::new(vec![u.clone()], Vec::new())?);
    let split = Arc::new(product(&base, fiber)?);
    let uel = total.gen(0);
    let lift = |e: &Element<F>| -> Element<F> {
        e.terms()
            .map(|(m, c)| {
                let mut exps = vec![0];
                exps.extend_from_slice(m.exponents());
                (Monomial::from_exponents(exps), c.clone())
            })
            .collect()
    };
    let mut forward = vec![uel.clone()];
    let mut backward = vec![uel.clone()];
    for i in 0..k {
        let v = total.gen(i + 1);
        let correction = total.mul(&uel, &lift(&psi.values[i + 1]));
        forward.push(v.add(&correction));
        backward.push(v.sub(&correction));
    }
    let phi = Morphism::new(Arc::clone(total), Arc::clone(&split), forward)?;
    audit.push("Φ∘D = d∘Φ on every generator".into());
    let inverse = Morphism::new(Arc::clone(&split), Arc::clone(total), backward)?;
    let round = phi.then(&inverse)?;
    let back = inverse.then(&phi)?;
    let identity = (0..total.num_generators()).all(|i| {
        round.image(i) == &total.gen(i) && back.image(i) == &split.gen(i)
    });
    if !identity {
        return Err(AnalysisError::Hypothesis(
            "constructed Φ is not invertible".into(),
        ));
    }
    audit.push("Φ is invertible, Φ(u) = u and π∘Φ = π".into());
    Ok(TnczVerdict {
        psi: Some(psi),
        psi_display: Some(psi_display),
        trivialization: Some(phi),
        obstruction: Vec::new(),
        audit,
    })
}
