use crate::scalar::Scalar;

/// Reduced row-echelon form of a list of row vectors.
///
/// Pivots are chosen by position: the first row (in current order) with a
/// nonzero entry in the leftmost unreduced column. When `track` is set the
/// reduction also records `transform` with `reduced = transform * original`.
#[derive(Clone, Debug)]
pub(crate) struct Echelon<F> {
    /// Nonzero rows of the reduced form, one per pivot.
    pub rows: Vec<Vec<F>>,
    pub pivots: Vec<usize>,
    /// Rows of the transform matching `rows`, each of length `original.len()`.
    pub transform: Vec<Vec<F>>,
}

impl<F: Scalar> Echelon<F> {
    pub fn reduce(mut rows: Vec<Vec<F>>, ncols: usize, track: bool) -> Self {
        let m = rows.len();
        let mut transform: Vec<Vec<F>> = if track {
            (0..m)
                .map(|i| {
                    let mut e = vec![F::zero(); m];
                    e[i] = F::one();
                    e
                })
                .collect()
        } else {
            Vec::new()
        };
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..ncols {
            if r >= m {
                break;
            }
            let Some(found) = (r..m).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(r, found);
            if track {
                transform.swap(r, found);
            }
            let inv = F::one() / rows[r][col].clone();
            if !inv.is_one_value() {
                for x in rows[r].iter_mut() {
                    if !x.is_zero() {
                        *x = x.clone() * inv.clone();
                    }
                }
                if track {
                    for x in transform[r].iter_mut() {
                        if !x.is_zero() {
                            *x = x.clone() * inv.clone();
                        }
                    }
                }
            }
            for i in 0..m {
                if i == r || rows[i][col].is_zero() {
                    continue;
                }
                let factor = rows[i][col].clone();
                let (pivot_row, target) = borrow_two(&mut rows, r, i);
                axpy(target, &factor, pivot_row);
                if track {
                    let (pt, tt) = borrow_two(&mut transform, r, i);
                    axpy(tt, &factor, pt);
                }
            }
            pivots.push(col);
            r += 1;
        }
        transform.truncate(r);
        rows.truncate(r);
        Echelon {
            rows,
            pivots,
            transform,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the solution space of `rows * x = 0` in `ncols` unknowns.
    pub fn null_space(&self, ncols: usize) -> Vec<Vec<F>> {
        let mut is_pivot = vec![false; ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..ncols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![F::zero(); ncols];
            v[free] = F::one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                let a = &row[free];
                if !a.is_zero() {
                    v[p] = -a.clone();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Reduces `v` against the rows; returns the coefficients of the rows
    /// used and leaves the residual in `v`.
    pub fn reduce_vector(&self, v: &mut [F]) -> Vec<F> {
        let mut coeffs = Vec::with_capacity(self.rows.len());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p].clone();
            if !c.is_zero() {
                axpy(v, &c, row);
            }
            coeffs.push(c);
        }
        coeffs
    }
}

/// `target -= factor * source`
pub(crate) fn axpy<F: Scalar>(target: &mut [F], factor: &F, source: &[F]) {
    for (t, s) in target.iter_mut().zip(source) {
        if !s.is_zero() {
            *t = t.clone() - factor.clone() * s.clone();
        }
    }
}

fn borrow_two<T>(v: &mut [T], a: usize, b: usize) -> (&T, &mut T) {
    assert_ne!(a, b);
    if a < b {
        let (lo, hi) = v.split_at_mut(b);
        (&lo[a], &mut hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(a);
        (&hi[0], &mut lo[b])
    }
}
