//! Exact linear algebra over a field: echelon forms, kernels and images,
//! subspaces in canonical form, and quotients of subspaces.

mod echelon;
mod matrix;
mod quotient;
mod subspace;

use thiserror::Error;

pub use matrix::Matrix;
pub use quotient::{quotient_coordinates, Quotient};
pub use subspace::{subspace_ops, unit_vector, Frame, Subspace, SubspaceOps};

use crate::scalar::Scalar;
use echelon::Echelon;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("ambient dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("boundary vector {vector:?} is not contained in the cycle space")]
    NotContained { vector: Vec<String> },
    #[error("frame vectors are linearly dependent")]
    Dependent,
}

/// Rank together with kernel (in the source) and image (in the target).
#[derive(Clone, Debug)]
pub struct KernelImage<F> {
    pub rank: usize,
    pub kernel: Subspace<F>,
    pub image: Subspace<F>,
}

pub fn rank_kernel_image<F: Scalar>(m: &Matrix<F>) -> KernelImage<F> {
    let rows = Echelon::reduce(m.row_vectors(), m.cols(), false);
    let kernel = Subspace::span(m.cols(), rows.null_space(m.cols()));
    let image = Subspace::span(m.rows(), m.columns());
    debug_assert_eq!(rows.rank(), image.dim());
    KernelImage {
        rank: rows.rank(),
        kernel,
        image,
    }
}

/// Kernel of `m` as a subspace of the source.
pub fn kernel<F: Scalar>(m: &Matrix<F>) -> Subspace<F> {
    let rows = Echelon::reduce(m.row_vectors(), m.cols(), false);
    Subspace::span(m.cols(), rows.null_space(m.cols()))
}

/// Column space of `m`.
pub fn image<F: Scalar>(m: &Matrix<F>) -> Subspace<F> {
    Subspace::span(m.rows(), m.columns())
}

/// One solution `x` of `m x = b`, or `None` if the system is inconsistent.
/// Free variables are set to zero.
pub fn solve_linear<F: Scalar>(m: &Matrix<F>, b: &[F]) -> Option<Vec<F>> {
    assert_eq!(b.len(), m.rows(), "right-hand side length does not match row count");
    let n = m.cols();
    let augmented: Vec<Vec<F>> = (0..m.rows())
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.push(b[i].clone());
            row
        })
        .collect();
    let ech = Echelon::reduce(augmented, n + 1, false);
    if ech.pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![F::zero(); n];
    for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
        x[p] = row[n].clone();
    }
    Some(x)
}

/// Image of the subspace `s` under `m`.
pub fn map_subspace<F: Scalar>(m: &Matrix<F>, s: &Subspace<F>) -> Subspace<F> {
    Subspace::span(m.rows(), s.basis().iter().map(|v| m.apply(v)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Zero;
    use proptest::prelude::*;

    type Q = BigRational;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    fn mat(rows: &[&[i64]]) -> Matrix<Q> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    #[test]
    fn zero_matrix() {
        let ki = rank_kernel_image(&Matrix::<Q>::zeros(3, 3));
        assert_eq!(ki.rank, 0);
        assert_eq!(ki.kernel, Subspace::full(3));
        assert!(ki.image.is_zero());
    }

    #[test]
    fn identity_matrix() {
        let ki = rank_kernel_image(&Matrix::<Q>::identity(4));
        assert_eq!(ki.rank, 4);
        assert!(ki.kernel.is_zero());
        assert_eq!(ki.image, Subspace::full(4));
    }

    #[test]
    fn one_by_one_delta() {
        let ki = rank_kernel_image(&mat(&[&[-3]]));
        assert_eq!(ki.rank, 1);
        assert!(ki.kernel.is_zero());
    }

    #[test]
    fn solve_cases() {
        let b = vec![q(2), q(-5), q(7)];
        assert_eq!(solve_linear(&Matrix::identity(3), &b), Some(b.clone()));
        assert_eq!(solve_linear(&Matrix::<Q>::zeros(3, 3), &b), None);
        let m = mat(&[&[2, 4], &[1, 2]]);
        let x = solve_linear(&m, &[q(6), q(3)]).expect("consistent");
        assert_eq!(m.apply(&x), vec![q(6), q(3)]);
        assert_eq!(solve_linear(&m, &[q(6), q(4)]), None);
    }

    #[test]
    fn quotient_cases() {
        let z = Subspace::span(2, vec![vec![q(1), q(0)], vec![q(0), q(1)]]);
        let same = quotient_coordinates(&z, &z).unwrap();
        assert_eq!(same.dim(), 0);
        assert_eq!(same.project(&[q(3), q(4)]), Some(vec![]));

        let zero = Subspace::zero(2);
        let free = quotient_coordinates(&z, &zero).unwrap();
        assert_eq!(free.dim(), 2);
        assert_eq!(free.project(&[q(3), q(4)]), Some(vec![q(3), q(4)]));

        // cycles span{a, b}, boundaries span{b}
        let b = Subspace::span(2, vec![vec![q(0), q(1)]]);
        let quo = quotient_coordinates(&z, &b).unwrap();
        assert_eq!(quo.dim(), 1);
        assert_eq!(quo.project(&[q(0), q(5)]), Some(vec![q(0)]));
        assert_eq!(quo.project(&[q(2), q(5)]), Some(vec![q(2)]));
    }

    #[test]
    fn quotient_rejects_non_containment() {
        let z = Subspace::span(2, vec![vec![q(1), q(0)]]);
        let b = Subspace::span(2, vec![vec![q(0), q(1)]]);
        assert!(matches!(
            quotient_coordinates(&z, &b),
            Err(LinalgError::NotContained { .. })
        ));
    }

    #[test]
    fn subspace_cases() {
        let a = Subspace::span(2, vec![vec![q(1), q(0)]]);
        let b = Subspace::span(2, vec![vec![q(1), q(1)]]);
        let ops = subspace_ops(&a, &b).unwrap();
        assert_eq!(ops.sum, Subspace::full(2));
        assert!(ops.intersection.is_zero());
        assert!(!ops.contains);

        let same = subspace_ops(&a, &a).unwrap();
        assert_eq!(same.sum, a);
        assert_eq!(same.intersection, a);
        assert!(same.contains);

        let other = Subspace::<Q>::zero(3);
        assert!(matches!(
            subspace_ops(&a, &other),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn frame_coordinates_in_given_basis() {
        let frame = Frame::new(2, vec![vec![q(1), q(1)], vec![q(1), q(-1)]]).unwrap();
        assert_eq!(frame.coordinates(&[q(3), q(1)]), Some(vec![q(2), q(1)]));
        assert!(Frame::new(2, vec![vec![q(1), q(1)], vec![q(2), q(2)]]).is_err());
    }

    #[test]
    fn generic_over_small_rationals() {
        use num_rational::Ratio;
        let m = Matrix::from_rows(2, vec![
            vec![Ratio::new(1i64, 2), Ratio::new(1, 3)],
            vec![Ratio::new(3, 2), Ratio::new(1, 1)],
        ]);
        let ki = rank_kernel_image(&m);
        assert_eq!(ki.rank, 1);
        assert_eq!(ki.kernel.dim(), 1);
    }

    fn small_matrix() -> impl Strategy<Value = Matrix<Q>> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..4, r * c).prop_map(move |entries| {
                Matrix::from_rows(
                    c,
                    entries.chunks(c).map(|row| row.iter().map(|&x| q(x)).collect()).collect(),
                )
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let ki = rank_kernel_image(&m);
            prop_assert_eq!(ki.rank + ki.kernel.dim(), m.cols());
            prop_assert_eq!(ki.image.dim(), ki.rank);
            for v in ki.kernel.basis() {
                prop_assert!(m.apply(v).iter().all(|x| x.is_zero()));
            }
        }

        #[test]
        fn sum_intersection_dimensions(m in small_matrix(), n in small_matrix()) {
            let a = image(&m);
            let b = Subspace::span(m.rows(), n.columns().into_iter()
                .map(|mut c| { c.resize(m.rows(), q(0)); c }).collect());
            let ops = subspace_ops(&a, &b).unwrap();
            prop_assert_eq!(ops.sum.dim() + ops.intersection.dim(), a.dim() + b.dim());
            prop_assert!(a.contains(&ops.intersection) && b.contains(&ops.intersection));
        }

        #[test]
        fn projection_kills_exactly_boundaries(m in small_matrix(), pick in proptest::collection::vec(-2i64..3, 6)) {
            let z = Subspace::full(m.rows());
            let b = image(&m);
            let quo = quotient_coordinates(&z, &b).unwrap();
            let v: Vec<Q> = (0..m.rows()).map(|i| q(pick[i % pick.len()])).collect();
            let p = quo.project(&v).unwrap();
            prop_assert_eq!(p.iter().all(|x| x.is_zero()), b.contains_vector(&v));
            let back = quo.project(&quo.lift(&p)).unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn exact_field_round_trips(a in -50i64..50, b in 1i64..50, c in -50i64..50) {
            let x = Q::new(a.into(), b.into());
            let y = Q::new(c.into(), b.into()) + q(1);
            prop_assert_eq!((x.clone() + y.clone()) - y.clone(), x.clone());
            if !y.is_zero() {
                prop_assert_eq!((x.clone() * y.clone()) / y, x);
            }
        }
    }
}
