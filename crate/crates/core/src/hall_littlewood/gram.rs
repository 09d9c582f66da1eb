use rayon::prelude::*;

use super::wave::{wave_by_branching, SpectralVariables};
use crate::bethe::SpectralPoint;
use crate::error::{Error, Result};
use crate::fock::{apply_hamiltonian, inner_product, FockVector};
use crate::linalg::CMatrix;
use crate::params::ModelParams;
use crate::scalar::{re, Real};
use crate::transfer::{apply_transfer, bethe_eigenvalues};
use crate::Cplx;

/// Bethe wave function `Ψ(ξ_λ, ·)` on `Λ_{n,m}`.
pub fn spectral_wave<T: Real>(point: &SpectralPoint<T>, p: &ModelParams<T>, floor: f64) -> Result<FockVector<T>> {
    if point.xi.len() != p.n() {
        return Err(Error::SectorMismatch(format!("{} spectral variables for n = {}", point.xi.len(), p.n())));
    }
    wave_by_branching(&SpectralVariables::from_xi(&point.xi), p, floor)
}

/// Gram matrix `G_{λµ} = (Ψ(ξ_λ), Ψ(ξ_µ))` in the weighted inner product.
pub fn gram_discrete<T: Real>(points: &[SpectralPoint<T>], p: &ModelParams<T>, floor: f64) -> Result<CMatrix<T>> {
    let waves = points.par_iter().map(|pt| spectral_wave(pt, p, floor)).collect::<Result<Vec<_>>>()?;
    let k = waves.len();
    let entries = (0..k * k)
        .into_par_iter()
        .map(|idx| inner_product(&waves[idx / k], &waves[idx % k], p.t()))
        .collect::<Result<Vec<_>>>()?;
    Ok(CMatrix::from_fn(k, k, |i, j| entries[i * k + j]))
}

/// Largest `|G_{λµ}|/√(G_{λλ}G_{µµ})` over `λ ≠ µ`.
pub fn max_correlation<T: Real>(g: &CMatrix<T>) -> T {
    let mut worst = T::zero();
    for i in 0..g.rows() {
        for j in 0..g.cols() {
            if i != j {
                let d = (g.row(i)[i].re * g.row(j)[j].re).sqrt();
                worst = worst.max(g.row(i)[j].norm() / d);
            }
        }
    }
    worst
}

/// Relative eigen-equation residuals of `Ψ(ξ_λ, ·)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenResiduals<T> {
    /// `max_u ‖𝒯(u)Ψ − E(u)Ψ‖ / ‖Ψ‖`.
    pub transfer: T,
    /// `‖HΨ − E·Ψ‖ / ‖Ψ‖`.
    pub hamiltonian: T,
}

/// Checks that `Ψ(ξ_λ, ·)` is an eigenvector of the transfer operator at each `u` and of the Hamiltonian.
pub fn eigen_residuals<T: Real>(
    point: &SpectralPoint<T>,
    p: &ModelParams<T>,
    us: &[Cplx<T>],
    floor: f64,
) -> Result<EigenResiduals<T>> {
    let psi = spectral_wave(point, p, floor)?;
    let t = p.t();
    let norm = psi.norm(t);
    let mut transfer = T::zero();
    for &u in us {
        let (eig, _) = bethe_eigenvalues(u, &point.xi, p, floor)?;
        let r = apply_transfer(u, &psi, p)?.sub(&psi.scale(eig))?;
        transfer = transfer.max(r.norm(t) / norm);
    }
    let (_, energy) = bethe_eigenvalues(us.first().copied().unwrap_or(re(T::lit(0.6))), &point.xi, p, floor)?;
    let h = apply_hamiltonian(&psi, p)?.sub(&psi.scale(re(energy)))?;
    Ok(EigenResiduals { transfer, hamiltonian: h.norm(t) / norm })
}
