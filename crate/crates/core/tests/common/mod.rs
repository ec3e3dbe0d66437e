#![allow(dead_code)]

use std::sync::Arc;

use gseq_core::algebra::{parse_element, Element, FreeDga, Generator, Morphism};
use gseq_core::linalg::{kernel, Matrix};
use gseq_core::models;
use gseq_core::{QAlgebra, QMorphism, Rational};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub struct Case {
    pub name: &'static str,
    pub phi: QMorphism,
}

fn q(alg: QAlgebra) -> Arc<QAlgebra> {
    Arc::new(alg)
}

fn map(source: &Arc<QAlgebra>, target: &Arc<QAlgebra>, images: &[&str]) -> QMorphism {
    let images = images
        .iter()
        .map(|s| parse_element(target, s).unwrap_or_else(|e| panic!("{s}: {e}")))
        .collect();
    Morphism::new(Arc::clone(source), Arc::clone(target), images).unwrap()
}

/// `X = Λ(x4, x11)`, `Y = Λ(y8, y15, y4, y19)` and the map between them
/// with three non-exact terms in its G-sequence.
pub fn pinch() -> QMorphism {
    let x = q(models::quaternionic_projective(2, "x"));
    let y = q(FreeDga::new(
        vec![
            Generator::new("y8", 8),
            Generator::new("y15", 15),
            Generator::new("y4", 4),
            Generator::new("y19", 19),
        ],
        Vec::new(),
    )
    .unwrap());
    let d = |s: &str| parse_element(&y, s).unwrap();
    let y = q(FreeDga::new(
        y.generators().to_vec(),
        vec![Element::zero(), d("y8^2"), Element::zero(), d("y4^5")],
    )
    .unwrap());
    map(&y, &x, &["x4^2", "x4*x11", "x4", "x4^2*x11"])
}

/// Model/morphism pairs covering spheres of both parities, projective
/// spaces, products, inclusions, null maps and identities.
pub fn corpus() -> Vec<Case> {
    let s2 = q(models::sphere(2, "x"));
    let s3 = q(models::sphere(3, "x"));
    let s4 = q(models::sphere(4, "x"));
    let s5 = q(models::sphere(5, "y"));
    let s7 = q(models::sphere(7, "y"));
    let cp2 = q(models::complex_projective(2, "x"));
    let cp3 = q(models::complex_projective(3, "y"));
    let hp2 = q(models::quaternionic_projective(2, "x"));
    let hp4 = q(models::quaternionic_projective(4, "y"));
    let k4 = q(models::eilenberg_maclane(4, "z"));
    let s2s3 = q(models::product(&models::sphere(2, "a"), &models::sphere(3, "b")).unwrap());
    let s2b = q(models::sphere(2, "a"));
    let s3s5 = q(models::product(&models::sphere(3, "x"), &models::sphere(5, "y")).unwrap());

    vec![
        Case { name: "pinch Y -> HP2", phi: pinch() },
        Case { name: "identity S2", phi: Morphism::identity(Arc::clone(&s2)) },
        Case { name: "identity S3", phi: Morphism::identity(Arc::clone(&s3)) },
        Case { name: "identity S4", phi: Morphism::identity(Arc::clone(&s4)) },
        Case { name: "identity CP2", phi: Morphism::identity(Arc::clone(&cp2)) },
        Case { name: "identity HP2", phi: Morphism::identity(Arc::clone(&hp2)) },
        Case { name: "identity S2 x S3", phi: Morphism::identity(Arc::clone(&s2s3)) },
        Case { name: "identity S3 x S5", phi: Morphism::identity(Arc::clone(&s3s5)) },
        Case { name: "inclusion HP2 -> HP4", phi: map(&hp4, &hp2, &["x4", "x4^2*x11"]) },
        Case { name: "inclusion S2 -> CP3", phi: map(&cp3, &s2, &["x2", "x2^2*x3"]) },
        Case { name: "projection S2 x S3 -> S2", phi: map(&s2b, &s2s3, &["a2", "a3"]) },
        Case { name: "hopf S7 -> S4", phi: map(&s4, &s7, &["0", "y7"]) },
        Case { name: "square S2 -> K4", phi: map(&k4, &s2, &["x2^2"]) },
        Case { name: "null CP2 -> S5", phi: Morphism::zero(Arc::clone(&s5), Arc::clone(&cp2)) },
        Case { name: "null S4 -> HP2", phi: Morphism::zero(Arc::clone(&hp2), Arc::clone(&s4)) },
    ]
}

/// A random minimal model with one to four generators in degrees 2..=12.
/// Each differential is a random cocycle among the decomposables of the
/// earlier generators. Degrees are biased towards one less than the degree
/// of a product of earlier generators, so that most models are not free.
pub fn random_model(rng: &mut ChaCha8Rng, tag: &str) -> QAlgebra {
    let count = rng.gen_range(1..=4);
    let mut gens: Vec<Generator> = Vec::new();
    let mut d: Vec<Element<Rational>> = Vec::new();
    for i in 0..count {
        let mut k = if i == 0 { rng.gen_range(2..=6) } else { rng.gen_range(2..=12) };
        if i > 0 && rng.gen_bool(0.8) {
            let a = gens[rng.gen_range(0..i)].degree;
            let b = gens[rng.gen_range(0..i)].degree;
            if (3..=13).contains(&(a + b)) {
                k = a + b - 1;
            }
        }
        let prefix = FreeDga::new(gens.clone(), d.clone()).unwrap();
        d.push(random_decomposable_cocycle(rng, &prefix, k + 1));
        gens.push(Generator::new(format!("{tag}{i}_{k}"), k));
    }
    FreeDga::new(gens, d).unwrap()
}

fn random_decomposable_cocycle(rng: &mut ChaCha8Rng, alg: &QAlgebra, k: u32) -> Element<Rational> {
    if rng.gen_bool(0.15) {
        return Element::zero();
    }
    let piece = alg.graded_piece(k);
    let decomposable: Vec<usize> = (0..piece.dim())
        .filter(|&j| piece.monomials()[j].word_length() >= 2)
        .collect();
    if decomposable.is_empty() {
        return Element::zero();
    }
    let full = alg.differential_matrix(k);
    let columns: Vec<Vec<Rational>> = decomposable.iter().map(|&j| full.column(j)).collect();
    let cycles = kernel(&Matrix::from_columns(full.rows(), &columns));
    let mut coords = vec![Rational::zero(); piece.dim()];
    for b in cycles.basis() {
        let c = Rational::from_integer(rng.gen_range(-2..=2).into());
        for (slot, v) in decomposable.iter().zip(b) {
            coords[*slot] += &c * v;
        }
    }
    piece.element(&coords)
}

pub fn random_models(seed: u64, count: usize) -> Vec<QAlgebra> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|i| random_model(&mut rng, &format!("r{i}g"))).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
