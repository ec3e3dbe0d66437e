use std::sync::Arc;

use num_traits::Zero;

use super::*;
use crate::algebra::tests::algebra;
use crate::algebra::{parse_element, FreeDga, Generator, Morphism};
use crate::derivation::tests::{hp2, morphism};
use crate::derivation::DerivationComplex;
use crate::models;
use crate::Rational as Q;

fn arc(a: FreeDga<Q>) -> Arc<FreeDga<Q>> {
    Arc::new(a)
}

fn presented(gen: (&str, u32), relation: &str, truncation: u32) -> AlgebraPresentation<Q> {
    let shell = FreeDga::<Q>::new(vec![Generator::new(gen.0, gen.1)], Vec::new()).unwrap();
    let r = parse_element(&shell, relation).unwrap();
    AlgebraPresentation::new(shell.generators().to_vec(), vec![r], truncation).unwrap()
}

#[test]
fn presentation_of_hp2() {
    let x = hp2();
    let p = cohomology_presentation(&x, 16).unwrap();
    let names: Vec<_> = p.presentation.generators().iter().map(|g| (g.name.clone(), g.degree)).collect();
    assert_eq!(names, vec![("x4".to_string(), 4)]);
    assert_eq!(p.presentation.display_relations(), vec!["x4^3"]);
    for k in 0..=16 {
        assert_eq!(p.presentation.dim(k).unwrap(), usize::from(k == 0 || k == 4 || k == 8));
    }
    assert!(p.presentation.dim(17).is_err());
}

#[test]
fn presentation_of_free_and_truncated() {
    let s3 = arc(models::sphere(3, "x"));
    let p = cohomology_presentation(&s3, 10).unwrap();
    assert_eq!(p.presentation.generators().len(), 1);
    assert!(p.presentation.relations().is_empty());

    let s2 = arc(algebra(&[("x2", 2), ("y3", 3)], &[("y3", "x2^2")]));
    let p = cohomology_presentation(&s2, 10).unwrap();
    assert_eq!(p.presentation.display_relations(), vec!["x2^2"]);
}

#[test]
fn presented_dims_match_cohomology() {
    let corpus = [
        arc(models::complex_projective(3, "x")),
        arc(models::product(&models::sphere(3, "a"), &models::sphere(4, "b")).unwrap()),
        arc(models::product(&models::sphere(2, "a"), &models::sphere(2, "b")).unwrap()),
    ];
    for a in &corpus {
        let p = cohomology_presentation(a, 14).unwrap();
        for k in 0..=14 {
            assert_eq!(
                p.presentation.dim(k).unwrap(),
                crate::algebra::cohomology_space(a, k).dim(),
                "degree {k}"
            );
        }
    }
}

#[test]
fn derivations_of_truncated_polynomials() {
    let y = presented(("y4", 4), "y4^5", 24);
    let x = presented(("x4", 4), "x4^3", 24);
    let image = parse_element(x.free(), "x4").unwrap();
    let h = PresentedMap::new(y, x, vec![image]).unwrap();
    assert_eq!(cohomology_derivation_space(&h, 4).unwrap().dim(), 1);

    let s4 = presented(("x4", 4), "x4^2", 16);
    let image = parse_element(s4.free(), "x4").unwrap();
    let id = PresentedMap::new(s4.clone(), s4, vec![image]).unwrap();
    for n in 1..=8 {
        assert_eq!(cohomology_derivation_space(&id, n).unwrap().dim(), 0, "degree {n}");
    }
}

#[test]
fn presented_map_must_respect_relations() {
    let y = presented(("y4", 4), "y4^2", 16);
    let x = presented(("x4", 4), "x4^3", 16);
    let image = parse_element(x.free(), "x4").unwrap();
    assert!(matches!(
        PresentedMap::new(y, x, vec![image]),
        Err(AnalysisError::InvalidPresentedMap(_))
    ));
}

#[test]
fn free_target_derivations_are_unconstrained() {
    let free = AlgebraPresentation::<Q>::new(
        vec![Generator::new("a", 2), Generator::new("b", 4)],
        Vec::new(),
        10,
    )
    .unwrap();
    let images = vec![
        parse_element(free.free(), "a").unwrap(),
        parse_element(free.free(), "b").unwrap(),
    ];
    let id = PresentedMap::new(free.clone(), free, images).unwrap();
    // degree 2: a ↦ 1, b ↦ a
    assert_eq!(cohomology_derivation_space(&id, 2).unwrap().dim(), 2);
}

#[test]
fn phi_x_examples() {
    let s4 = arc(models::sphere(4, "x"));
    for n in 1..=7 {
        let phi = phi_x_map(&s4, n, 16).unwrap();
        assert_eq!(phi.codomain.dim(), 0);
    }
    let s3 = arc(models::sphere(3, "x"));
    let phi = phi_x_map(&s3, 3, 8).unwrap();
    assert_eq!((phi.matrix.rows(), phi.matrix.cols(), phi.matrix.rank()), (1, 1, 1));

    let phi = phi_x_map(&hp2(), 7, 24).unwrap();
    assert_eq!(phi.homology_dim, 1);
    assert_eq!(phi.matrix.rank(), 0);
}

#[test]
fn phi_x_ignores_boundaries() {
    // δ(x3∂y6) = x2²∂y6, which is nonzero on the cocycle y6 at chain level.
    let a = arc(algebra(
        &[("a2", 2), ("x2", 2), ("x3", 3), ("y6", 6)],
        &[("x3", "x2^2")],
    ));
    let pres = cohomology_presentation(&a, 12).unwrap();
    let der = DerivationComplex::self_maps(Arc::clone(&a)).unwrap();
    let id = Morphism::identity(Arc::clone(&a));
    let b = {
        let mut t = crate::derivation::Derivation::zero(3, 4);
        t.values[3] = parse_element(&a, "x3").unwrap();
        t.delta(&id)
    };
    assert!(!b.is_zero());
    for z in der.homology(2).representatives() {
        let theta = der.derivation(2, z);
        let mut perturbed = theta.clone();
        for (v, w) in perturbed.values.iter_mut().zip(&b.values) {
            *v = v.add(w);
        }
        assert_eq!(
            evaluate_on_generators(&pres, &der, &theta).unwrap(),
            evaluate_on_generators(&pres, &der, &perturbed).unwrap()
        );
    }
    assert!(evaluate_on_generators(&pres, &der, &b).unwrap().iter().all(Zero::is_zero));
}

#[test]
fn thom_examples() {
    let s2 = arc(models::sphere(2, "x"));
    let rows = thom_check(&s2, 4, None, 2..=6).unwrap();
    let dims: Vec<_> = rows.iter().map(|r| (r.derivation_dim, r.cohomology_dim)).collect();
    assert_eq!(dims, vec![(1, 1), (0, 0), (1, 1), (0, 0), (0, 0)]);

    let rows = thom_check(&hp2(), 12, None, 2..=12).unwrap();
    assert!(rows.iter().all(ThomRow::agrees));
    assert_eq!(rows.iter().find(|r| r.degree == 4).unwrap().derivation_dim, 1);

    let image = parse_element(&hp2(), "x4").unwrap();
    let rows = thom_check(&hp2(), 4, Some(image), 2..=4).unwrap();
    assert!(rows.iter().all(ThomRow::agrees));

    let bad = parse_element(&hp2(), "x11").unwrap();
    assert!(matches!(
        thom_check(&hp2(), 11, Some(bad), 2..=11),
        Err(AnalysisError::NotCocycle { .. })
    ));
}

#[test]
fn grivel_examples() {
    let y = arc(models::quaternionic_projective(4, "y"));
    let phi = morphism(&y, &hp2(), &["x4", "x4^2*x11"]);
    let rows = grivel_check(&phi, 2..=40).unwrap();
    assert!(rows.iter().all(GrivelRow::agrees), "{rows:?}");
    let r4 = rows.iter().find(|r| r.degree == 4).unwrap();
    assert_eq!((r4.derivation_dim, r4.cohomology_dim), (1, 1));

    let rows = grivel_check(&Morphism::identity(hp2()), 2..=24).unwrap();
    assert!(rows.iter().all(GrivelRow::agrees));
    assert_eq!(rows.iter().find(|r| r.degree == 4).unwrap().derivation_dim, 0);
}

#[test]
fn grivel_rejects_odd_cohomology() {
    let s3 = arc(models::sphere(3, "x"));
    assert!(matches!(
        grivel_check(&Morphism::identity(s3), [2]),
        Err(AnalysisError::NotF0 { .. })
    ));
}

#[test]
fn splitting_examples() {
    let z = arc(models::eilenberg_maclane(4, "z"));
    let s2 = arc(models::sphere(2, "x"));
    let rows = splitting_check(&morphism(&z, &s2, &["x2^2"]), None).unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(SplittingRow::holds), "{rows:?}");

    let rows = splitting_check(&Morphism::zero(Arc::clone(&z), hp2()), None).unwrap();
    assert!(rows.iter().all(SplittingRow::holds));

    let y = arc(algebra(&[("y4", 4)], &[]));
    let s4 = arc(models::sphere(4, "x"));
    let err = splitting_check(&morphism(&y, &s4, &["x4"]), None).unwrap_err();
    assert_eq!(err, AnalysisError::Hypothesis("nonzero linear part".into()));

    let err = splitting_check(&Morphism::identity(s2), None).unwrap_err();
    assert!(matches!(err, AnalysisError::Hypothesis(_)));
}

#[test]
fn tncz_product_trivializes() {
    let total = arc(algebra(&[("u3", 3), ("x2", 2), ("y3", 3)], &[("y3", "x2^2")]));
    let fiber = arc(algebra(&[("x2", 2), ("y3", 3)], &[("y3", "x2^2")]));
    let v = tncz_analyze(&total, &fiber).unwrap();
    assert!(v.trivializes());
    let phi = v.trivialization.unwrap();
    assert_eq!(phi.image(0), &total.gen(0));
    assert_eq!(v.psi.unwrap().values[0], crate::algebra::Element::unit());
}

#[test]
fn tncz_twisted_is_obstructed() {
    let total = arc(algebra(&[("u3", 3), ("y3", 3), ("z5", 5)], &[("z5", "u3*y3")]));
    let fiber = arc(algebra(&[("y3", 3), ("z5", 5)], &[]));
    let v = tncz_analyze(&total, &fiber).unwrap();
    assert!(!v.trivializes());
    assert_eq!(v.obstruction, vec!["ψ(u3*y3) = y3"]);
}

#[test]
fn tncz_rejects_malformed_models() {
    let fiber = arc(algebra(&[("x2", 2), ("y3", 3)], &[("y3", "x2^2")]));
    let even = arc(algebra(&[("u2", 2), ("x2", 2), ("y3", 3)], &[("y3", "x2^2")]));
    assert!(matches!(
        tncz_analyze(&even, &fiber),
        Err(AnalysisError::MalformedRelative(_))
    ));
    let wrong = arc(algebra(&[("u3", 3), ("x2", 2), ("y3", 3)], &[]));
    assert!(matches!(
        tncz_analyze(&wrong, &fiber),
        Err(AnalysisError::MalformedRelative(_))
    ));
}
