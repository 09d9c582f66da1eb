//! Scalar R- and K-matrices.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::params::{e, f as fq, s};
use crate::scalar::{re, Cplx, Real};

/// Square complex matrix of size 2 or 4 with scalar entries.
#[derive(Debug, Clone, PartialEq)]
pub struct SmallMatrix<T: Real = f64> {
    pub entries: Vec<Vec<Cplx<T>>>,
}

impl<T: Real> SmallMatrix<T> {
    pub fn zeros(k: usize) -> Self {
        Self { entries: vec![vec![Complex::zero(); k]; k] }
    }

    pub fn identity(k: usize) -> Self {
        let mut out = Self::zeros(k);
        for i in 0..k {
            out.entries[i][i] = Complex::one();
        }
        out
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let k = self.size();
        let mut out = Self::zeros(k);
        for i in 0..k {
            for j in 0..k {
                out.entries[i][j] = (0..k).fold(Complex::zero(), |acc, l| acc + self.entries[i][l] * other.entries[l][j]);
            }
        }
        out
    }

    pub fn scale(&self, c: Cplx<T>) -> Self {
        Self { entries: self.entries.iter().map(|r| r.iter().map(|&x| x * c).collect()).collect() }
    }

    pub fn transpose(&self) -> Self {
        let k = self.size();
        let mut out = Self::zeros(k);
        for i in 0..k {
            for j in 0..k {
                out.entries[i][j] = self.entries[j][i];
            }
        }
        out
    }

    /// Kronecker product `self ⊗ other` of two 2×2 matrices.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(4);
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        out.entries[2 * a + b][2 * c + d] = self.entries[a][c] * other.entries[b][d];
                    }
                }
            }
        }
        out
    }

    /// Partial transpose in the first (`first = true`) or second tensor factor.
    pub fn partial_transpose(&self, first: bool) -> Self {
        let mut out = Self::zeros(4);
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        let (i, j) = if first { (2 * c + b, 2 * a + d) } else { (2 * a + d, 2 * c + b) };
                        out.entries[i][j] = self.entries[2 * a + b][2 * c + d];
                    }
                }
            }
        }
        out
    }

    /// Max-entry relative deviation.
    pub fn deviation(&self, other: &Self) -> f64 {
        let mut diff: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for (r1, r2) in self.entries.iter().zip(&other.entries) {
            for (x, y) in r1.iter().zip(r2) {
                diff = diff.max((*x - *y).norm().as_f64());
                scale = scale.max(x.norm().as_f64()).max(y.norm().as_f64());
            }
        }
        if scale == 0.0 {
            diff
        } else {
            diff / scale
        }
    }
}

/// The trigonometric R-matrix `R(u)`.
pub fn r_matrix<T: Real>(u: Cplx<T>, q: T) -> SmallMatrix<T> {
    let qi = q.recip();
    let d = s(u * qi);
    let o = s(re(qi));
    let mut r = SmallMatrix::zeros(4);
    r.entries[0][0] = d;
    r.entries[3][3] = d;
    r.entries[1][1] = o;
    r.entries[2][2] = o;
    r.entries[1][2] = s(u) * qi;
    r.entries[2][1] = s(u) * q;
    r
}

/// Swap matrix `P` on `ℂ² ⊗ ℂ²`.
pub fn swap_matrix<T: Real>() -> SmallMatrix<T> {
    let mut p = SmallMatrix::zeros(4);
    for (i, j) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
        p.entries[i][j] = Complex::one();
    }
    p
}

fn diag2<T: Real>(x: Cplx<T>, y: Cplx<T>) -> SmallMatrix<T> {
    let mut k = SmallMatrix::zeros(2);
    k.entries[0][0] = x;
    k.entries[1][1] = y;
    k
}

/// `K₋(u;a) = diag(e(u;a), f(u;a))`.
pub fn k_minus<T: Real>(u: Cplx<T>, a: T, q: T) -> SmallMatrix<T> {
    diag2(e(u, a), fq(u, a, q))
}

/// `K₊(u;a) = diag(f(u;a), e(u;a))`.
pub fn k_plus<T: Real>(u: Cplx<T>, a: T, q: T) -> SmallMatrix<T> {
    diag2(fq(u, a, q), e(u, a))
}

/// `ρ(u) = s(qu)·s(qu⁻¹)`.
pub fn rho<T: Real>(u: Cplx<T>, q: T) -> Cplx<T> {
    s(u * q) * s(u.inv() * q)
}
