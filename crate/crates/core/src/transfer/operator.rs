//! Dense matrices of operators between sectors and graded arrays of them.

use std::sync::Arc;

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fock::{FockVector, SectorBasis};
use crate::linalg::{relative_deviation, CMatrix};
use crate::scalar::{Cplx, Real};

/// Matrix of an operator from one sector to another, columns in basis order.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix<T: Real = f64> {
    source: Arc<SectorBasis>,
    target: Arc<SectorBasis>,
    entries: CMatrix<T>,
}

impl<T: Real> OperatorMatrix<T> {
    pub fn new(source: Arc<SectorBasis>, target: Arc<SectorBasis>, entries: CMatrix<T>) -> Result<Self> {
        if entries.rows() != target.len() || entries.cols() != source.len() {
            return Err(Error::SectorMismatch(format!(
                "{}x{} entries for a {}x{} operator",
                entries.rows(),
                entries.cols(),
                target.len(),
                source.len()
            )));
        }
        Ok(Self { source, target, entries })
    }

    /// Tabulates a linear action; every image must land in level `source + degree`.
    pub fn from_action(
        source: &Arc<SectorBasis>,
        degree: isize,
        action: impl Fn(&FockVector<T>) -> Result<FockVector<T>> + Sync,
    ) -> Result<Self> {
        let target = source.shifted(degree);
        let columns = (0..source.len())
            .into_par_iter()
            .map(|j| {
                let img = action(&FockVector::basis(Arc::clone(source), j))?;
                if **img.sector() != *target {
                    return Err(Error::SectorMismatch(format!(
                        "image in level {} instead of {}",
                        img.sector().level(),
                        target.level()
                    )));
                }
                Ok(img.into_amplitudes())
            })
            .collect::<Result<Vec<_>>>()?;
        let entries = CMatrix::from_columns(target.len(), &columns);
        Ok(Self { source: Arc::clone(source), target, entries })
    }

    pub fn identity(sector: &Arc<SectorBasis>) -> Self {
        Self::scalar(sector, Complex::new(T::one(), T::zero()))
    }

    /// `c·I` on a sector.
    pub fn scalar(sector: &Arc<SectorBasis>, c: Cplx<T>) -> Self {
        Self {
            source: Arc::clone(sector),
            target: Arc::clone(sector),
            entries: CMatrix::identity(sector.len()).scale(c),
        }
    }

    pub fn zero(source: &Arc<SectorBasis>, target: &Arc<SectorBasis>) -> Self {
        Self { source: Arc::clone(source), target: Arc::clone(target), entries: CMatrix::zeros(target.len(), source.len()) }
    }

    pub fn source(&self) -> &Arc<SectorBasis> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SectorBasis> {
        &self.target
    }

    pub fn entries(&self) -> &CMatrix<T> {
        &self.entries
    }

    pub fn into_entries(self) -> CMatrix<T> {
        self.entries
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        if rhs.target != self.source {
            return Err(Error::SectorMismatch(format!(
                "composing an operator on level {} after one into level {}",
                self.source.level(),
                rhs.target.level()
            )));
        }
        Ok(Self { source: Arc::clone(&rhs.source), target: Arc::clone(&self.target), entries: &self.entries * &rhs.entries })
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::SectorMismatch("operators act between different sectors".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self { source: Arc::clone(&self.source), target: Arc::clone(&self.target), entries: &self.entries + &other.entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self { source: Arc::clone(&self.source), target: Arc::clone(&self.target), entries: &self.entries - &other.entries })
    }

    pub fn scale(&self, c: Cplx<T>) -> Self {
        Self { source: Arc::clone(&self.source), target: Arc::clone(&self.target), entries: self.entries.scale(c) }
    }

    /// Adjoint for the weighted inner products: `Δ_src⁻¹·M†·Δ_tgt`.
    pub fn weighted_adjoint(&self, t: T) -> Self {
        let ws = self.source.weights(t);
        let wt = self.target.weights(t);
        let adj = self.entries.adjoint();
        let entries = CMatrix::from_fn(adj.rows(), adj.cols(), |i, j| adj[(i, j)] * (wt[j] / ws[i]));
        Self { source: Arc::clone(&self.target), target: Arc::clone(&self.source), entries }
    }

    pub fn apply(&self, f: &FockVector<T>) -> Result<FockVector<T>> {
        if **f.sector() != *self.source {
            return Err(Error::SectorMismatch("vector outside the operator's source sector".into()));
        }
        FockVector::new(Arc::clone(&self.target), self.entries.mul_vec(f.amplitudes()))
    }

    /// Max-entry relative deviation from another operator between the same sectors.
    pub fn deviation(&self, other: &Self) -> Result<f64> {
        self.same_shape(other)?;
        Ok(relative_deviation(&self.entries, &other.entries))
    }

    /// Relative deviation of `Δ·M` from `M†·Δ`.
    pub fn hermiticity_defect(&self, t: T) -> Result<f64> {
        self.deviation(&self.weighted_adjoint(t))
    }
}

/// A `k×k` array (`k = 2` or `4`) of operators, assembled as one block
/// matrix at a reference level `N`.
///
/// Row/column index `K` carries a weight `w(K)`; the block `(I, J)` maps
/// level `N − w(J)` to level `N − w(I)`. With weights `[0, 1]` (`k = 2`) and
/// `[0, 1, 1, 2]` (`k = 4`), monodromy-type arrays and their tensor
/// embeddings become ordinary block matrices whose products are the
/// operator-valued matrix products.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedArray<T: Real = f64> {
    level: isize,
    m: usize,
    weights: Vec<isize>,
    offsets: Vec<usize>,
    matrix: CMatrix<T>,
}

/// Index weights of a 2×2 array.
pub const W2: [isize; 2] = [0, 1];
/// Index weights of a 4×4 array in the basis `e₁⊗e₁, e₁⊗e₂, e₂⊗e₁, e₂⊗e₂`.
pub const W4: [isize; 4] = [0, 1, 1, 2];

impl<T: Real> GradedArray<T> {
    fn layout(level: isize, m: usize, weights: &[isize]) -> (Vec<Arc<SectorBasis>>, Vec<usize>) {
        let sectors: Vec<Arc<SectorBasis>> = weights.iter().map(|&w| SectorBasis::shared(level - w, m)).collect();
        let mut offsets = Vec::with_capacity(weights.len() + 1);
        let mut acc = 0;
        for s in &sectors {
            offsets.push(acc);
            acc += s.len();
        }
        offsets.push(acc);
        (sectors, offsets)
    }

    /// Assembles the array from a block generator
    /// `block(i, j, source, target) -> matrix`.
    pub fn from_blocks(
        level: isize,
        m: usize,
        weights: &[isize],
        mut block: impl FnMut(usize, usize, &Arc<SectorBasis>, &Arc<SectorBasis>) -> Result<CMatrix<T>>,
    ) -> Result<Self> {
        let (sectors, offsets) = Self::layout(level, m, weights);
        let k = weights.len();
        let mut rows = Vec::with_capacity(k);
        for i in 0..k {
            let mut row = Vec::with_capacity(k);
            for j in 0..k {
                let b = block(i, j, &sectors[j], &sectors[i])?;
                if b.rows() != sectors[i].len() || b.cols() != sectors[j].len() {
                    return Err(Error::SectorMismatch(format!("block ({i},{j}) has the wrong shape")));
                }
                row.push(b);
            }
            rows.push(row);
        }
        let matrix = if offsets[k] == 0 { CMatrix::zeros(0, 0) } else { assemble(&rows, &sectors) };
        Ok(Self { level, m, weights: weights.to_vec(), offsets, matrix })
    }

    /// Scalar `k×k` matrix acting as `S_{IJ}·I`; entries between indices of
    /// different weight must vanish.
    pub fn scalar(level: isize, m: usize, weights: &[isize], s: &[Vec<Cplx<T>>]) -> Result<Self> {
        Self::from_blocks(level, m, weights, |i, j, src, tgt| {
            if weights[i] == weights[j] {
                Ok(CMatrix::identity(src.len()).scale(s[i][j]))
            } else if s[i][j].norm() == T::zero() {
                Ok(CMatrix::zeros(tgt.len(), src.len()))
            } else {
                Err(Error::SectorMismatch(format!("scalar entry ({i},{j}) breaks the grading")))
            }
        })
    }

    pub fn level(&self) -> isize {
        self.level
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    /// Block `(i, j)` as a plain matrix.
    pub fn block(&self, i: usize, j: usize) -> CMatrix<T> {
        let (r0, r1) = (self.offsets[i], self.offsets[i + 1]);
        let (c0, c1) = (self.offsets[j], self.offsets[j + 1]);
        if self.matrix.rows() == 0 {
            return CMatrix::zeros(r1 - r0, c1 - c0);
        }
        self.matrix.sub_block(r0, c0, r1 - r0, c1 - c0)
    }

    /// Block `(i, j)` with its sector labels.
    pub fn operator(&self, i: usize, j: usize) -> OperatorMatrix<T> {
        let src = SectorBasis::shared(self.level - self.weights[j], self.m);
        let tgt = SectorBasis::shared(self.level - self.weights[i], self.m);
        OperatorMatrix::new(src, tgt, self.block(i, j)).expect("block shapes follow the layout")
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.level != other.level || self.m != other.m || self.weights != other.weights {
            return Err(Error::SectorMismatch("graded arrays with different layouts".into()));
        }
        Ok(())
    }

    /// Operator-valued matrix product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let matrix = if self.matrix.rows() == 0 { self.matrix.clone() } else { &self.matrix * &other.matrix };
        Ok(Self { matrix, ..self.clone() })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(Self { matrix: &self.matrix + &other.matrix, ..self.clone() })
    }

    pub fn scale(&self, c: Cplx<T>) -> Self {
        Self { matrix: self.matrix.scale(c), ..self.clone() }
    }

    /// Max-entry relative deviation between two arrays with equal layout.
    pub fn deviation(&self, other: &Self) -> Result<f64> {
        self.compatible(other)?;
        Ok(relative_deviation(&self.matrix, &other.matrix))
    }

    /// `X ⊗ I` at `level` for a 2×2 family `x(level)`.
    pub fn tensor_first(level: isize, m: usize, x: &dyn Fn(isize) -> Result<Self>) -> Result<Self> {
        let xs = [x(level)?, x(level - 1)?];
        Self::from_blocks(level, m, &W4, |i, j, src, tgt| {
            let (a, b, c, d) = (i / 2, i % 2, j / 2, j % 2);
            if b == d {
                Ok(xs[d].block(a, c))
            } else {
                Ok(CMatrix::zeros(tgt.len(), src.len()))
            }
        })
    }

    /// `I ⊗ X` at `level` for a 2×2 family `x(level)`.
    pub fn tensor_second(level: isize, m: usize, x: &dyn Fn(isize) -> Result<Self>) -> Result<Self> {
        let xs = [x(level)?, x(level - 1)?];
        Self::from_blocks(level, m, &W4, |i, j, src, tgt| {
            let (a, b, c, d) = (i / 2, i % 2, j / 2, j % 2);
            if a == c {
                Ok(xs[a].block(b, d))
            } else {
                Ok(CMatrix::zeros(tgt.len(), src.len()))
            }
        })
    }
}

fn assemble<T: Real>(rows: &[Vec<CMatrix<T>>], sectors: &[Arc<SectorBasis>]) -> CMatrix<T> {
    let total: usize = sectors.iter().map(|s| s.len()).sum();
    let mut out = CMatrix::zeros(total, total);
    let mut r0 = 0;
    for (i, row) in rows.iter().enumerate() {
        let mut c0 = 0;
        for (j, b) in row.iter().enumerate() {
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    out[(r0 + r, c0 + c)] = b[(r, c)];
                }
            }
            c0 += sectors[j].len();
        }
        r0 += sectors[i].len();
    }
    out
}
