//! Minimal models of a few standard spaces.
//!
//! Generator names are a prefix followed by the degree, so `sphere(4, "x")`
//! has generators `x4` and `x7`.

use crate::algebra::{AlgebraError, Element, FreeDga, Generator, Monomial};
use crate::scalar::Scalar;

fn model<F: Scalar>(gens: &[(String, u32)], d: Vec<Element<F>>) -> FreeDga<F> {
    let gens = gens.iter().map(|(n, k)| Generator::new(n.clone(), *k)).collect();
    FreeDga::new(gens, d).expect("builtin models are valid")
}

/// `S^n`: one odd generator, or `x_n, x_{2n-1}` with `d x_{2n-1} = x_n^2`.
pub fn sphere<F: Scalar>(n: u32, prefix: &str) -> FreeDga<F> {
    assert!(n >= 1, "sphere dimension must be positive");
    if n % 2 == 1 {
        model(&[(format!("{prefix}{n}"), n)], vec![])
    } else {
        truncated_polynomial(n, 1, prefix)
    }
}

/// `ℂP^n`: `x_2, x_{2n+1}` with `d x_{2n+1} = x_2^{n+1}`.
pub fn complex_projective<F: Scalar>(n: u32, prefix: &str) -> FreeDga<F> {
    truncated_polynomial(2, n, prefix)
}

/// `ℍP^n`: `x_4, x_{4n+3}` with `d x_{4n+3} = x_4^{n+1}`.
pub fn quaternionic_projective<F: Scalar>(n: u32, prefix: &str) -> FreeDga<F> {
    truncated_polynomial(4, n, prefix)
}

/// Model of a space with cohomology `ℚ[x]/(x^{n+1})`, `|x| = k` even.
pub fn truncated_polynomial<F: Scalar>(k: u32, n: u32, prefix: &str) -> FreeDga<F> {
    assert!(k % 2 == 0 && n >= 1);
    let top = k * (n + 1) - 1;
    model(
        &[(format!("{prefix}{k}"), k), (format!("{prefix}{top}"), top)],
        vec![
            Element::zero(),
            Element::monomial(Monomial::generator_power(0, n + 1)),
        ],
    )
}

/// `K(ℚ, m)`: a single generator with zero differential.
pub fn eilenberg_maclane<F: Scalar>(m: u32, prefix: &str) -> FreeDga<F> {
    model(&[(format!("{prefix}{m}"), m)], vec![])
}

/// `ΛV ⊗ ΛW` with generators of `a` first.
pub fn product<F: Scalar>(a: &FreeDga<F>, b: &FreeDga<F>) -> Result<FreeDga<F>, AlgebraError> {
    let mut gens = a.generators().to_vec();
    gens.extend(b.generators().iter().cloned());
    let shift = a.num_generators();
    let mut d: Vec<Element<F>> = (0..a.num_generators())
        .map(|i| a.generator_differential(i).clone())
        .collect();
    for i in 0..b.num_generators() {
        d.push(
            b.generator_differential(i)
                .terms()
                .map(|(m, c)| {
                    let mut e = vec![0; shift];
                    e.extend_from_slice(m.exponents());
                    (Monomial::from_exponents(e), c.clone())
                })
                .collect(),
        );
    }
    FreeDga::new(gens, d)
}

/// Looks up a builtin by name: `S<n>`, `CP<n>`, `HP<n>` or `K<m>`.
pub fn builtin<F: Scalar>(name: &str, prefix: &str) -> Option<FreeDga<F>> {
    let (kind, rest) = if let Some(r) = name.strip_prefix("CP") {
        ("CP", r)
    } else if let Some(r) = name.strip_prefix("HP") {
        ("HP", r)
    } else if let Some(r) = name.strip_prefix('S') {
        ("S", r)
    } else if let Some(r) = name.strip_prefix('K') {
        ("K", r)
    } else {
        return None;
    };
    let n: u32 = rest.parse().ok().filter(|&n| n >= 1)?;
    Some(match kind {
        "CP" => complex_projective(n, prefix),
        "HP" => quaternionic_projective(n, prefix),
        "S" => sphere(n, prefix),
        _ if n >= 2 => eilenberg_maclane(n, prefix),
        _ => return None,
    })
}

pub const BUILTIN_NAMES: &str = "S<n>, CP<n>, HP<n>, K<m>";
