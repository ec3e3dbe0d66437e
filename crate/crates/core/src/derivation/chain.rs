//! Finite chain complexes of finite-dimensional vector spaces, chain maps,
//! mapping cones and long exact sequences.

use std::borrow::Cow;

use super::ComplexError;
use crate::linalg::{kernel, rank_kernel_image, solve_linear, Matrix, Quotient, Subspace};
use crate::scalar::{sign, Scalar};

/// A chain complex `C_0 ← C_1 ← … ← C_top` with differentials lowering
/// degree by one. Degrees above `top` are zero.
#[derive(Clone, Debug)]
pub struct ChainComplex<F> {
    dims: Vec<usize>,
    diffs: Vec<Matrix<F>>,
}

impl<F: Scalar> ChainComplex<F> {
    /// `diffs[n]` is the matrix of `C_n → C_{n-1}`; `diffs[0]` must have no
    /// rows. Fails when shapes disagree or `δ∘δ ≠ 0`.
    pub fn new(dims: Vec<usize>, diffs: Vec<Matrix<F>>) -> Result<Self, ComplexError> {
        if dims.len() != diffs.len() {
            return Err(ComplexError::Shape(format!(
                "{} degrees but {} differentials",
                dims.len(),
                diffs.len()
            )));
        }
        for (n, m) in diffs.iter().enumerate() {
            let rows = if n == 0 { 0 } else { dims[n - 1] };
            if m.rows() != rows || m.cols() != dims[n] {
                return Err(ComplexError::Shape(format!(
                    "differential in degree {n} is {}x{}, expected {rows}x{}",
                    m.rows(),
                    m.cols(),
                    dims[n]
                )));
            }
        }
        let c = ChainComplex { dims, diffs };
        for n in 2..c.dims.len() {
            if !c.diffs[n - 1].mul(&c.diffs[n]).is_zero() {
                return Err(ComplexError::DSquared { degree: n });
            }
        }
        Ok(c)
    }

    pub fn top(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `C_n → C_{n-1}`.
    pub fn diff(&self, n: usize) -> Cow<'_, Matrix<F>> {
        match self.diffs.get(n) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(Matrix::zeros(self.dim(n.saturating_sub(1)), 0)),
        }
    }

    pub fn cycles(&self, n: usize) -> Subspace<F> {
        if n == 0 {
            return Subspace::full(self.dim(0));
        }
        kernel(&self.diff(n))
    }

    pub fn boundaries(&self, n: usize) -> Subspace<F> {
        crate::linalg::image(&self.diff(n + 1))
    }

    pub fn homology(&self, n: usize) -> Homology<F> {
        let quotient = Quotient::new(self.cycles(n), self.boundaries(n))
            .expect("δ∘δ = 0 is checked on construction");
        Homology {
            degree: n,
            quotient,
        }
    }

    /// `dim H_n` for `n = 0..=top`.
    pub fn betti(&self) -> Vec<usize> {
        (0..=self.top()).map(|n| self.homology(n).dim()).collect()
    }
}

/// Homology in one degree with chosen cycle representatives.
#[derive(Clone, Debug)]
pub struct Homology<F> {
    pub degree: usize,
    quotient: Quotient<F>,
}

impl<F: Scalar> Homology<F> {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn cycles(&self) -> &Subspace<F> {
        self.quotient.cycles()
    }

    pub fn boundaries(&self) -> &Subspace<F> {
        self.quotient.boundaries()
    }

    pub fn representatives(&self) -> &[Vec<F>] {
        self.quotient.representatives()
    }

    /// Class coordinates of a cycle; `None` if `v` is not a cycle.
    pub fn project(&self, v: &[F]) -> Option<Vec<F>> {
        self.quotient.project(v)
    }

    pub fn lift(&self, coords: &[F]) -> Vec<F> {
        self.quotient.lift(coords)
    }
}

/// A family of linear maps `X_n → Y_{n + shift}`.
#[derive(Clone, Debug)]
pub struct GradedMap<F> {
    pub shift: isize,
    maps: Vec<Matrix<F>>,
}

impl<F: Scalar> GradedMap<F> {
    /// `maps[n]` is the component on `X_n`; missing components are zero.
    pub fn new(shift: isize, maps: Vec<Matrix<F>>) -> Self {
        GradedMap { shift, maps }
    }

    pub fn target_degree(&self, n: usize) -> Option<usize> {
        usize::try_from(n as isize + self.shift).ok()
    }

    /// The component on `X_n` as a `dim Y_{n+shift} × dim X_n` matrix.
    pub fn at(&self, n: usize, src: &ChainComplex<F>, tgt: &ChainComplex<F>) -> Matrix<F> {
        let rows = self.target_degree(n).map_or(0, |m| tgt.dim(m));
        match self.maps.get(n) {
            Some(m) if m.rows() == rows && m.cols() == src.dim(n) => m.clone(),
            _ => Matrix::zeros(rows, src.dim(n)),
        }
    }

    /// Checks shapes and `δ∘f = f∘δ` in every degree.
    pub fn check(&self, src: &ChainComplex<F>, tgt: &ChainComplex<F>) -> Result<(), ComplexError> {
        for (n, m) in self.maps.iter().enumerate() {
            let rows = self.target_degree(n).map_or(0, |t| tgt.dim(t));
            if m.cols() != src.dim(n) || m.rows() != rows {
                return Err(ComplexError::Shape(format!(
                    "map component in degree {n} is {}x{}, expected {rows}x{}",
                    m.rows(),
                    m.cols(),
                    src.dim(n)
                )));
            }
        }
        let top = src.top().max(tgt.top()) + 1;
        for n in 1..=top {
            let Some(t) = self.target_degree(n - 1) else {
                continue;
            };
            let lhs = tgt.diff(t + 1).mul(&self.at(n, src, tgt));
            let rhs = self.at(n - 1, src, tgt).mul(&src.diff(n));
            if lhs != rhs {
                return Err(ComplexError::NotChainMap { degree: n });
            }
        }
        Ok(())
    }

    /// Matrix of the induced map `H_n(X) → H_{n+shift}(Y)` in class
    /// coordinates.
    pub fn induced(
        &self,
        n: usize,
        src: &ChainComplex<F>,
        tgt: &ChainComplex<F>,
        src_h: &Homology<F>,
        tgt_h: &Homology<F>,
    ) -> Matrix<F> {
        let m = self.at(n, src, tgt);
        let cols: Vec<Vec<F>> = src_h
            .representatives()
            .iter()
            .map(|z| {
                tgt_h
                    .project(&m.apply(z))
                    .expect("a chain map sends cycles to cycles")
            })
            .collect();
        Matrix::from_columns(tgt_h.dim(), &cols)
    }

    /// `other ∘ self`.
    pub fn then(
        &self,
        other: &GradedMap<F>,
        x: &ChainComplex<F>,
        y: &ChainComplex<F>,
        z: &ChainComplex<F>,
    ) -> GradedMap<F> {
        let maps = (0..=x.top())
            .map(|n| {
                let first = self.at(n, x, y);
                match self.target_degree(n) {
                    Some(t) => other.at(t, y, z).mul(&first),
                    None => Matrix::zeros(0, x.dim(n)),
                }
            })
            .collect();
        GradedMap::new(self.shift + other.shift, maps)
    }
}

/// The mapping cone `Rel_n = C_{n-1} ⊕ D_n` of a chain map `f: C → D`
/// together with the inclusion `J` and projection `P`.
#[derive(Clone, Debug)]
pub struct Cone<F> {
    pub complex: ChainComplex<F>,
    pub j: GradedMap<F>,
    pub p: GradedMap<F>,
    upstream_dims: Vec<usize>,
}

impl<F: Scalar> Cone<F> {
    /// Dimension of the `C_{n-1}` block of `Rel_n`.
    pub fn split(&self, n: usize) -> usize {
        if n == 0 {
            0
        } else {
            self.upstream_dims.get(n - 1).copied().unwrap_or(0)
        }
    }
}

/// Builds `Rel(f)` with `δ(a, b) = (δa, δb - (-1)^n f(a))` on `Rel_n`.
pub fn mapping_cone<F: Scalar>(
    f: &GradedMap<F>,
    c: &ChainComplex<F>,
    d: &ChainComplex<F>,
) -> Result<Cone<F>, ComplexError> {
    if f.shift != 0 {
        return Err(ComplexError::Shape("mapping cone of a shifting map".into()));
    }
    f.check(c, d)?;
    let top = (c.top() + 1).max(d.top());
    let upstream = |n: usize| if n == 0 { 0 } else { c.dim(n - 1) };
    let dims: Vec<usize> = (0..=top).map(|n| upstream(n) + d.dim(n)).collect();
    let mut diffs = Vec::with_capacity(top + 1);
    diffs.push(Matrix::zeros(0, dims[0]));
    for n in 1..=top {
        let mut m = Matrix::zeros(dims[n - 1], dims[n]);
        let split_lo = upstream(n - 1);
        let split_hi = upstream(n);
        if n >= 2 {
            m.set_block(0, 0, &c.diff(n - 1));
            m.set_block(split_lo, 0, &f.at(n - 1, c, d).scaled(&-sign::<F>(n as u64)));
        }
        m.set_block(split_lo, split_hi, &d.diff(n));
        diffs.push(m);
    }
    let complex = ChainComplex::new(dims, diffs)?;
    let j = GradedMap::new(
        0,
        (0..=d.top())
            .map(|n| {
                let mut m = Matrix::zeros(complex.dim(n), d.dim(n));
                m.set_block(upstream(n), 0, &Matrix::identity(d.dim(n)));
                m
            })
            .collect(),
    );
    let p = GradedMap::new(
        -1,
        (0..=top)
            .map(|n| {
                let mut m = Matrix::zeros(upstream(n), complex.dim(n));
                m.set_block(0, 0, &Matrix::identity(upstream(n)));
                m
            })
            .collect(),
    );
    Ok(Cone {
        complex,
        j,
        p,
        upstream_dims: c.dims().to_vec(),
    })
}

/// The chain map `(α, β): Rel(f) → Rel(f')` induced by a commutative
/// square `f'∘α = β∘f`.
pub fn cone_map<F: Scalar>(
    alpha: &GradedMap<F>,
    beta: &GradedMap<F>,
    (c, c2): (&ChainComplex<F>, &ChainComplex<F>),
    (d, d2): (&ChainComplex<F>, &ChainComplex<F>),
    rel: &Cone<F>,
    rel2: &Cone<F>,
) -> Result<GradedMap<F>, ComplexError> {
    let maps = (0..=rel.complex.top())
        .map(|n| {
            let mut m = Matrix::zeros(rel2.complex.dim(n), rel.complex.dim(n));
            if n >= 1 {
                m.set_block(0, 0, &alpha.at(n - 1, c, c2));
            }
            m.set_block(rel2.split(n), rel.split(n), &beta.at(n, d, d2));
            m
        })
        .collect();
    let g = GradedMap::new(0, maps);
    g.check(&rel.complex, &rel2.complex)?;
    Ok(g)
}

/// Connecting map `H_n(E) → H_{n-1}(K)` of a degreewise short exact
/// sequence `0 → K →i C →q E → 0`, by the snake construction.
pub fn connecting_map<F: Scalar>(
    i: &GradedMap<F>,
    q: &GradedMap<F>,
    (k, c, e): (&ChainComplex<F>, &ChainComplex<F>, &ChainComplex<F>),
    n: usize,
) -> Result<Matrix<F>, ComplexError> {
    let h_e = e.homology(n);
    let h_k = k.homology(n.saturating_sub(1));
    if n == 0 {
        return Ok(Matrix::zeros(0, h_e.dim()));
    }
    let qn = q.at(n, c, e);
    let im1 = i.at(n - 1, k, c);
    let mut cols = Vec::with_capacity(h_e.dim());
    for z in h_e.representatives() {
        let lift = solve_linear(&qn, z).ok_or(ComplexError::NotExact {
            what: format!("q is not onto in degree {n}"),
        })?;
        let dc = c.diff(n).apply(&lift);
        let kv = solve_linear(&im1, &dc).ok_or(ComplexError::NotExact {
            what: format!("δ of a lift leaves ker q in degree {}", n - 1),
        })?;
        cols.push(h_k.project(&kv).ok_or(ComplexError::NotExact {
            what: format!("connecting image is not a cycle in degree {}", n - 1),
        })?);
    }
    Ok(Matrix::from_columns(h_k.dim(), &cols))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceTerm {
    pub label: String,
    pub degree: usize,
    pub dim: usize,
}

/// A finite sequence of vector spaces and maps, `maps[i]: terms[i] →
/// terms[i + 1]`, not assumed exact.
#[derive(Clone, Debug)]
pub struct MapSequence<F> {
    pub terms: Vec<SequenceTerm>,
    pub maps: Vec<Matrix<F>>,
}

/// Exactness data at one interior term of a [`MapSequence`].
#[derive(Clone, Debug)]
pub struct TermAudit<F> {
    pub index: usize,
    pub composite_zero: bool,
    /// `dim ker(out) - dim im(in)`; zero exactly when the term is exact
    /// (given `composite_zero`).
    pub defect: usize,
    /// Kernel vectors spanning a complement of the incoming image.
    pub witnesses: Vec<Vec<F>>,
}

impl<F> TermAudit<F> {
    pub fn is_exact(&self) -> bool {
        self.composite_zero && self.defect == 0
    }
}

impl<F: Scalar> MapSequence<F> {
    pub fn new(terms: Vec<SequenceTerm>, maps: Vec<Matrix<F>>) -> Result<Self, ComplexError> {
        if maps.len() + 1 != terms.len().max(1) {
            return Err(ComplexError::Shape("sequence needs one map between each pair of terms".into()));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.cols() != terms[i].dim || m.rows() != terms[i + 1].dim {
                return Err(ComplexError::Shape(format!(
                    "map {} → {} has shape {}x{}",
                    terms[i].label,
                    terms[i + 1].label,
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(MapSequence { terms, maps })
    }

    /// Exactness at term `i`, which must have both an incoming and an
    /// outgoing map.
    pub fn audit(&self, i: usize) -> TermAudit<F> {
        assert!(i >= 1 && i + 1 < self.terms.len(), "not an interior term");
        let incoming = &self.maps[i - 1];
        let outgoing = &self.maps[i];
        let composite_zero = outgoing.mul(incoming).is_zero();
        let out = rank_kernel_image(outgoing);
        let image = crate::linalg::image(incoming);
        let defect = out.kernel.dim().saturating_sub(image.dim());
        let mut witnesses = Vec::new();
        let mut spanned = image.clone();
        for v in out.kernel.basis() {
            if witnesses.len() == defect {
                break;
            }
            if !spanned.contains_vector(v) {
                witnesses.push(v.clone());
                spanned = Subspace::span(spanned.ambient_dim(), {
                    let mut b = spanned.basis().to_vec();
                    b.push(v.clone());
                    b
                });
            }
        }
        TermAudit {
            index: i,
            composite_zero,
            defect,
            witnesses,
        }
    }

    pub fn audit_interior(&self) -> Vec<TermAudit<F>> {
        (1..self.terms.len().saturating_sub(1))
            .map(|i| self.audit(i))
            .collect()
    }

    pub fn is_exact(&self) -> bool {
        self.audit_interior().iter().all(TermAudit::is_exact)
    }

    /// Every consecutive composite vanishes.
    pub fn is_chain_complex(&self) -> bool {
        self.maps.windows(2).all(|w| w[1].mul(&w[0]).is_zero())
    }
}
