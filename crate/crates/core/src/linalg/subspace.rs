use super::echelon::Echelon;
use super::LinalgError;
use crate::scalar::Scalar;

/// A linear subspace of `F^n`, stored by its reduced row-echelon basis so
/// that equal subspaces compare equal structurally.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Scalar> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(
            ambient,
            (0..ambient).map(|i| unit_vector(ambient, i)).collect(),
        )
    }

    /// Span of arbitrary (possibly dependent) vectors of length `ambient`.
    pub fn span(ambient: usize, vectors: Vec<Vec<F>>) -> Self {
        for v in &vectors {
            assert_eq!(v.len(), ambient, "vector length does not match ambient dimension");
        }
        let ech = Echelon::reduce(vectors, ambient, false);
        Subspace {
            ambient,
            basis: ech.rows,
            pivots: ech.pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// The canonical (reduced echelon) basis.
    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    fn as_echelon(&self) -> Echelon<F> {
        Echelon {
            rows: self.basis.clone(),
            pivots: self.pivots.clone(),
            transform: Vec::new(),
        }
    }

    /// Coordinates of `v` in the canonical basis, or `None` when `v` lies
    /// outside the subspace.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        assert_eq!(v.len(), self.ambient, "vector length does not match ambient dimension");
        let mut residual = v.to_vec();
        let coeffs = self.as_echelon().reduce_vector(&mut residual);
        residual.iter().all(|x| x.is_zero()).then_some(coeffs)
    }

    pub fn contains_vector(&self, v: &[F]) -> bool {
        self.coordinates(v).is_some()
    }

    /// `true` when `other` is a subspace of `self`.
    pub fn contains(&self, other: &Subspace<F>) -> bool {
        other.basis.iter().all(|v| self.contains_vector(v))
    }

    pub fn sum(&self, other: &Subspace<F>) -> Result<Subspace<F>, LinalgError> {
        self.check_ambient(other)?;
        let mut vectors = self.basis.clone();
        vectors.extend(other.basis.iter().cloned());
        Ok(Subspace::span(self.ambient, vectors))
    }

    pub fn intersection(&self, other: &Subspace<F>) -> Result<Subspace<F>, LinalgError> {
        self.check_ambient(other)?;
        let p = self.dim();
        let q = other.dim();
        if p == 0 || q == 0 {
            return Ok(Subspace::zero(self.ambient));
        }
        // Solve sum x_i a_i - sum y_j b_j = 0; rows of the system are the
        // ambient coordinates.
        let rows: Vec<Vec<F>> = (0..self.ambient)
            .map(|k| {
                self.basis
                    .iter()
                    .map(|a| a[k].clone())
                    .chain(other.basis.iter().map(|b| -b[k].clone()))
                    .collect()
            })
            .collect();
        let kernel = Echelon::reduce(rows, p + q, false).null_space(p + q);
        let vectors = kernel
            .iter()
            .map(|xy| self.combine(&xy[..p]))
            .collect();
        Ok(Subspace::span(self.ambient, vectors))
    }

    /// The vector `sum c_i basis_i`.
    pub fn combine(&self, coeffs: &[F]) -> Vec<F> {
        combine(self.ambient, &self.basis, coeffs)
    }

    fn check_ambient(&self, other: &Subspace<F>) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::DimensionMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }
}

pub(crate) fn combine<F: Scalar>(ambient: usize, vectors: &[Vec<F>], coeffs: &[F]) -> Vec<F> {
    let mut out = vec![F::zero(); ambient];
    for (v, c) in vectors.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                *o = o.clone() + c.clone() * x.clone();
            }
        }
    }
    out
}

pub fn unit_vector<F: Scalar>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

/// Result of [`subspace_ops`].
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceOps<F> {
    pub sum: Subspace<F>,
    pub intersection: Subspace<F>,
    /// `b ⊆ a`
    pub contains: bool,
}

pub fn subspace_ops<F: Scalar>(
    a: &Subspace<F>,
    b: &Subspace<F>,
) -> Result<SubspaceOps<F>, LinalgError> {
    Ok(SubspaceOps {
        sum: a.sum(b)?,
        intersection: a.intersection(b)?,
        contains: a.contains(b),
    })
}

/// A fixed list of linearly independent vectors with fast coordinate
/// solving in exactly that basis (not the canonical one).
#[derive(Clone, Debug)]
pub struct Frame<F> {
    ambient: usize,
    vectors: Vec<Vec<F>>,
    echelon: Echelon<F>,
}

impl<F: Scalar> Frame<F> {
    pub fn new(ambient: usize, vectors: Vec<Vec<F>>) -> Result<Self, LinalgError> {
        let echelon = Echelon::reduce(vectors.clone(), ambient, true);
        if echelon.rank() != vectors.len() {
            return Err(LinalgError::Dependent);
        }
        Ok(Frame {
            ambient,
            vectors,
            echelon,
        })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<F>] {
        &self.vectors
    }

    /// Coefficients `c` with `v = sum c_i vectors_i`, if they exist.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        assert_eq!(v.len(), self.ambient);
        let mut residual = v.to_vec();
        let reduced = self.echelon.reduce_vector(&mut residual);
        if !residual.iter().all(|x| x.is_zero()) {
            return None;
        }
        // v = sum_r reduced_r * R_r and R = T * V.
        let k = self.vectors.len();
        let mut out = vec![F::zero(); k];
        for (c, trow) in reduced.iter().zip(&self.echelon.transform) {
            if c.is_zero() {
                continue;
            }
            for (o, t) in out.iter_mut().zip(trow) {
                if !t.is_zero() {
                    *o = o.clone() + c.clone() * t.clone();
                }
            }
        }
        Some(out)
    }

    pub fn combine(&self, coeffs: &[F]) -> Vec<F> {
        combine(self.ambient, &self.vectors, coeffs)
    }
}
