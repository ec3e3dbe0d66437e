//! Free graded-commutative DG algebras over a field, their morphisms and
//! cohomology.

mod cohomology;
mod dga;
mod element;
mod expr;
mod monomial;
mod morphism;

use thiserror::Error;

pub use cohomology::{betti_numbers, cohomology_space, induced_on_cohomology, CohomologySpace};
pub use dga::{
    extend_on_monomial, validate_dga, DegreeViolation, FreeDga, Generator, GradedPiece,
    ValidationReport,
};
pub(crate) use dga::{extend_between, signed_term};
pub use element::Element;
pub use expr::{parse_element, ExprError};
pub use monomial::Monomial;
pub use morphism::{apply_morphism, Morphism};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("generator `{0}` has degree 0")]
    ZeroDegree(String),
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
    #[error("element refers to generators outside the algebra")]
    ForeignElement,
    #[error("element has terms of different degrees")]
    MixedDegrees,
    #[error("element is not homogeneous of degree {expected}")]
    NotHomogeneous { expected: u32 },
    #[error("d({generator}) should have degree {expected}, found terms of degree {found:?}")]
    DifferentialDegree {
        generator: String,
        expected: u32,
        found: Vec<u32>,
    },
    #[error("d(d({0})) is nonzero")]
    DSquaredNonzero(String),
    #[error("expected {expected} generator images, found {found}")]
    ImageCount { expected: usize, found: usize },
    #[error("image of `{generator}` has degree {found}, expected {expected}")]
    ImageDegree {
        generator: String,
        expected: u32,
        found: u32,
    },
    #[error("map does not commute with the differentials on `{0}`")]
    NotChainMap(String),
    #[error("morphisms cannot be composed")]
    Incompatible,
    #[error("linear part requires minimal source and target")]
    NotMinimal,
}

/// Extends the generator differentials of `alg` to `a` by the Leibniz rule.
pub fn extend_differential<F: Scalar>(alg: &FreeDga<F>, a: &Element<F>) -> Element<F> {
    alg.differential(a)
}

/// Degree-`k` monomials in ascending lexicographic order.
pub fn monomial_basis<F: Scalar>(alg: &FreeDga<F>, k: u32) -> Vec<Monomial> {
    alg.monomial_basis(k)
}

use crate::scalar::Scalar;

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use num_rational::BigRational;
    use num_traits::Zero;
    use proptest::prelude::*;
    use std::sync::Arc;

    type Q = BigRational;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    pub(crate) fn algebra(gens: &[(&str, u32)], diffs: &[(&str, &str)]) -> FreeDga<Q> {
        let gens: Vec<Generator> = gens.iter().map(|&(n, d)| Generator::new(n, d)).collect();
        let shell = FreeDga::<Q>::unvalidated(gens.clone(), vec![]).unwrap();
        let mut d = vec![Element::zero(); gens.len()];
        for (name, expr) in diffs {
            d[shell.generator_index(name).unwrap()] = parse_element(&shell, expr).unwrap();
        }
        FreeDga::new(gens, d).unwrap()
    }

    fn hp2() -> FreeDga<Q> {
        algebra(&[("x4", 4), ("x11", 11)], &[("x11", "x4^3")])
    }

    fn e(alg: &FreeDga<Q>, s: &str) -> Element<Q> {
        parse_element(alg, s).unwrap()
    }

    #[test]
    fn multiply_examples() {
        let a = algebra(&[("x4", 4), ("y3", 3), ("a3", 3), ("b5", 5)], &[]);
        assert_eq!(a.mul(&e(&a, "x4"), &e(&a, "x4")), e(&a, "x4^2"));
        assert!(a.mul(&e(&a, "y3"), &e(&a, "y3")).is_zero());
        assert_eq!(a.mul(&e(&a, "b5"), &e(&a, "a3")), e(&a, "a3*b5").neg());
        let other = algebra(&[("p", 2), ("r", 2), ("s", 2), ("t", 2), ("u", 2)], &[]);
        assert!(matches!(
            a.multiply(&e(&a, "x4"), &other.gen(4)),
            Err(AlgebraError::ForeignElement)
        ));
    }

    #[test]
    fn monomial_basis_examples() {
        let x = hp2();
        assert_eq!(x.monomial_basis(15), vec![Monomial::from_exponents(vec![1, 1])]);
        assert!(x.monomial_basis(22).is_empty());
        assert_eq!(x.monomial_basis(0), vec![Monomial::unit()]);
        assert_eq!(FreeDga::<Q>::ground().monomial_basis(0), vec![Monomial::unit()]);
    }

    #[test]
    fn differential_examples() {
        let x = hp2();
        assert_eq!(x.differential(&e(&x, "x11")), e(&x, "x4^3"));
        assert_eq!(x.differential(&e(&x, "x4*x11")), e(&x, "x4^4"));
        assert!(x.differential(&Element::unit()).is_zero());
    }

    #[test]
    fn validation_examples() {
        let r = validate_dga(&hp2());
        assert!(r.is_valid() && r.is_minimal());

        let c = algebra(&[("x2", 2), ("y3", 3)], &[("y3", "x2^2")]);
        assert!(c.is_minimal());
        let gens = vec![Generator::new("x2", 2), Generator::new("y3", 3)];
        let contractible = FreeDga::<Q>::unvalidated(gens.clone(), vec![]).unwrap();
        let dy = parse_element(&contractible, "x2").unwrap();
        let bad = FreeDga::unvalidated(gens, vec![Element::zero(), dy]).unwrap();
        let r = validate_dga(&bad);
        assert!(!r.degree_violations.is_empty());

        let gens = vec![Generator::new("x2", 2), Generator::new("y1", 1)];
        let shell = FreeDga::<Q>::unvalidated(gens.clone(), vec![]).unwrap();
        let dy = parse_element(&shell, "x2").unwrap();
        let r = validate_dga(&FreeDga::unvalidated(gens, vec![Element::zero(), dy]).unwrap());
        assert!(r.is_valid());
        assert!(!r.is_minimal());

        // d(a3) = b4, d(b4) = c5 has the right degrees but d(d(a3)) = c5.
        let gens = vec![Generator::new("a3", 3), Generator::new("b4", 4), Generator::new("c5", 5)];
        let shell = FreeDga::<Q>::unvalidated(gens.clone(), vec![]).unwrap();
        let da = parse_element(&shell, "b4").unwrap();
        let db = parse_element(&shell, "c5").unwrap();
        let bad = FreeDga::unvalidated(gens, vec![da, db]).unwrap();
        let r = validate_dga(&bad);
        assert_eq!(r.d_squared_failures.len(), 1);
        assert_eq!(r.d_squared_failures[0].0, "a3");
        assert!(matches!(
            FreeDga::new(bad.generators().to_vec(), vec![parse_element(&bad, "b4").unwrap(), parse_element(&bad, "c5").unwrap()]),
            Err(AlgebraError::DSquaredNonzero(_))
        ));
    }

    fn example_phi() -> Morphism<Q> {
        let x = Arc::new(hp2());
        let y = Arc::new(algebra(
            &[("y8", 8), ("y15", 15), ("y4", 4), ("y19", 19)],
            &[("y15", "y8^2"), ("y19", "y4^5")],
        ));
        let images = ["x4^2", "x4*x11", "x4", "x4^2*x11"]
            .iter()
            .map(|s| e(&x, s))
            .collect();
        Morphism::new(y, x, images).unwrap()
    }

    #[test]
    fn morphism_examples() {
        let phi = example_phi();
        let y = phi.source().clone();
        let x = phi.target().clone();
        assert_eq!(phi.apply(&e(&y, "y19")), e(&x, "x4^2*x11"));
        assert_eq!(phi.apply(&e(&y, "y8*y4")), e(&x, "x4^3"));
        let id = Morphism::identity(x.clone());
        assert_eq!(id.apply(&e(&x, "x4*x11 + 2 x4^2")), e(&x, "x4*x11 + 2 x4^2"));

        let lp = phi.linear_part().unwrap();
        assert_eq!(lp[&4], Matrix::identity(1));
        for d in [8, 15, 19] {
            assert!(lp[&d].is_zero(), "degree {d}");
        }
        let idl = id.linear_part().unwrap();
        assert_eq!(idl[&4], Matrix::identity(1));
        assert_eq!(idl[&11], Matrix::identity(1));

        let s2 = Arc::new(algebra(&[("x2", 2), ("x3", 3)], &[("x3", "x2^2")]));
        let z = Arc::new(algebra(&[("z4", 4)], &[]));
        let f = Morphism::new(z, s2.clone(), vec![e(&s2, "x2^2")]).unwrap();
        assert!(f.linear_part().unwrap()[&4].is_zero());
    }

    #[test]
    fn morphism_rejects_non_chain_map() {
        let x = Arc::new(hp2());
        let y = Arc::new(algebra(&[("y4", 4), ("y11", 11)], &[]));
        let err = Morphism::new(y, x.clone(), vec![e(&x, "x4"), e(&x, "x11")]).unwrap_err();
        assert_eq!(err, AlgebraError::NotChainMap("y11".into()));
    }

    #[test]
    fn linear_part_rejects_non_minimal() {
        let gens = vec![Generator::new("x2", 2), Generator::new("y1", 1)];
        let shell = FreeDga::<Q>::unvalidated(gens.clone(), vec![]).unwrap();
        let dy = parse_element(&shell, "x2").unwrap();
        let a = Arc::new(FreeDga::new(gens, vec![Element::zero(), dy]).unwrap());
        assert_eq!(
            Morphism::identity(a).linear_part().unwrap_err(),
            AlgebraError::NotMinimal
        );
    }

    #[test]
    fn cohomology_examples() {
        let x = hp2();
        let dims: Vec<usize> = (0..=8).map(|k| cohomology_space(&x, k).dim()).collect();
        assert_eq!(dims, vec![1, 0, 0, 0, 1, 0, 0, 0, 1]);
        assert_eq!(cohomology_space(&x, 11).dim(), 0);
        assert_eq!(cohomology_space(&x, 12).dim(), 0);

        let s3 = algebra(&[("x3", 3)], &[]);
        for k in 0..10 {
            let expected = usize::from(k == 0 || k == 3);
            assert_eq!(cohomology_space(&s3, k).dim(), expected);
        }

        let s2 = algebra(&[("x2", 2), ("y3", 3)], &[("y3", "x2^2")]);
        for k in 0..=8 {
            let expected = usize::from(k == 0 || k == 2);
            assert_eq!(cohomology_space(&s2, k).dim(), expected, "k = {k}");
        }
        let h4 = cohomology_space(&x, 4);
        assert_eq!(h4.class_of(&e(&x, "x4")), Some(vec![q(1)]));
        assert_eq!(h4.class_of(&e(&x, "x4 + x4")), Some(vec![q(2)]));
        let h12 = cohomology_space(&x, 12);
        assert_eq!(h12.class_of(&e(&x, "x4^3")), Some(vec![]));
    }

    #[test]
    fn display_round_trips() {
        let x = hp2();
        for s in ["-3 x4^2*x11", "x4^3 + 1/2 x4*x11", "0", "-1", "x4 - 2"] {
            let v = e(&x, s);
            assert_eq!(e(&x, &x.display(&v)), v, "{s}");
        }
        assert_eq!(x.display(&e(&x, "-3 x4^2*x11")), "-3 x4^2*x11");
    }

    #[test]
    fn parse_errors_carry_offsets() {
        let x = hp2();
        let err = parse_element(&x, "x4 + q7").unwrap_err();
        assert_eq!(err.offset, 5);
        assert!(parse_element(&x, "x4 +").is_err());
        assert!(parse_element(&x, "1/0 x4").is_err());
    }

    // --- properties -------------------------------------------------------

    fn test_algebra() -> FreeDga<Q> {
        algebra(
            &[("a2", 2), ("b3", 3), ("c3", 3), ("e4", 4), ("f5", 5), ("g7", 7)],
            &[("b3", "a2^2"), ("f5", "e4*a2 - a2^3"), ("g7", "e4^2 - a2^4")],
        )
    }

    fn homogeneous(deg: u32) -> impl Strategy<Value = Element<Q>> {
        let basis = test_algebra().monomial_basis(deg);
        let n = basis.len();
        proptest::collection::vec(-3i64..4, n).prop_map(move |cs| {
            basis
                .iter()
                .zip(cs)
                .map(|(m, c)| (m.clone(), q(c)))
                .collect()
        })
    }

    fn any_homogeneous() -> impl Strategy<Value = (u32, Element<Q>)> {
        (0u32..10).prop_flat_map(|d| homogeneous(d).prop_map(move |e| (d, e)))
    }

    proptest! {
        #[test]
        fn associative_distributive_commutative(
            (da, a) in any_homogeneous(), (db, b) in any_homogeneous(), (_, c) in any_homogeneous()
        ) {
            let alg = test_algebra();
            prop_assert_eq!(alg.mul(&alg.mul(&a, &b), &c), alg.mul(&a, &alg.mul(&b, &c)));
            prop_assert_eq!(alg.mul(&a, &b.add(&c)), alg.mul(&a, &b).add(&alg.mul(&a, &c)));
            let ab = alg.mul(&a, &b);
            let ba = alg.mul(&b, &a);
            let s = crate::scalar::koszul::<Q>(da as u64, db as u64);
            prop_assert_eq!(ab, ba.scale(&s));
        }

        #[test]
        fn differential_laws((da, a) in any_homogeneous(), (_, b) in any_homogeneous()) {
            let alg = test_algebra();
            prop_assert!(alg.differential(&alg.differential(&a)).is_zero());
            let lhs = alg.differential(&alg.mul(&a, &b));
            let mut rhs = alg.mul(&alg.differential(&a), &b);
            rhs.add_scaled(&crate::scalar::sign(da as u64), &alg.mul(&a, &alg.differential(&b)));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn morphism_commutes_with_d((_, a) in any_homogeneous()) {
            let alg = Arc::new(test_algebra());
            let s2 = Arc::new(algebra(&[("x2", 2), ("x3", 3)], &[("x3", "x2^2")]));
            let images = ["x2", "x3", "0", "x2^2", "0", "0"]
                .iter().map(|s| e(&s2, s)).collect();
            let f = Morphism::new(alg.clone(), s2.clone(), images).unwrap();
            prop_assert_eq!(f.apply(&alg.differential(&a)), s2.differential(&f.apply(&a)));
        }

        #[test]
        fn coboundaries_have_zero_class((d, a) in any_homogeneous()) {
            let alg = test_algebra();
            let h = cohomology_space(&alg, d + 1);
            let cls = h.class_of(&alg.differential(&a)).unwrap();
            prop_assert!(cls.iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn poincare_series_matches_basis_sizes() {
        let alg = test_algebra();
        let bound = 24usize;
        let mut series = vec![0i64; bound + 1];
        series[0] = 1;
        for g in alg.generators() {
            let d = g.degree as usize;
            if g.is_odd() {
                for k in (d..=bound).rev() {
                    series[k] += series[k - d];
                }
            } else {
                for k in d..=bound {
                    series[k] += series[k - d];
                }
            }
        }
        for (k, &expected) in series.iter().enumerate() {
            assert_eq!(alg.monomial_basis(k as u32).len() as i64, expected, "degree {k}");
        }
    }
}
