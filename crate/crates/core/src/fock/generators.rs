use std::sync::Arc;

use num_complex::Complex;
use num_traits::Zero;

use super::sector::SectorBasis;
use super::vector::FockVector;
use crate::error::{Error, Result};
use crate::params::{qint, ModelParams};
use crate::scalar::{Cplx, Real};

/// Generators of the q-boson algebra at one site.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    /// `β_l`, lowers the particle number.
    Annihilate,
    /// `β*_l`, raises the particle number.
    Create,
    /// `t^{N_l}`.
    TPowN,
    /// `t^{−N_l}`.
    TPowMinusN,
}

impl Generator {
    /// Change of particle number.
    pub fn degree(self) -> isize {
        match self {
            Self::Annihilate => -1,
            Self::Create => 1,
            Self::TPowN | Self::TPowMinusN => 0,
        }
    }
}

fn check_site<T: Real>(l: usize, f: &FockVector<T>) -> Result<()> {
    let m = f.sector().m();
    if l > m {
        return Err(Error::InvalidSite { site: l, m });
    }
    Ok(())
}

pub(crate) fn check_lattice<T: Real>(p: &ModelParams<T>, sector: &SectorBasis) -> Result<()> {
    if p.m() != sector.m() {
        return Err(Error::SectorMismatch(format!(
            "parameters for m = {} applied to a vector on m = {}",
            p.m(),
            sector.m()
        )));
    }
    Ok(())
}

/// Applies `β_l`, `β*_l` or `t^{±N_l}` to a sector vector.
pub fn apply_generator<T: Real>(kind: Generator, l: usize, f: &FockVector<T>, p: &ModelParams<T>) -> Result<FockVector<T>> {
    check_site(l, f)?;
    check_lattice(p, f.sector())?;
    let t = p.t();
    let target: Arc<SectorBasis> = f.sector().shifted(kind.degree());
    let out = match kind {
        Generator::Annihilate => FockVector::from_fn(target, |lam| f.value(&lam.with_part(l))),
        Generator::Create => FockVector::from_fn(target, |lam| match lam.without_part(l) {
            Some(mu) => f.value(&mu) * qint(t, lam.multiplicity(l)),
            None => Complex::zero(),
        }),
        Generator::TPowN | Generator::TPowMinusN => {
            let tt = if kind == Generator::TPowN { t } else { t.recip() };
            FockVector::from_fn(target, |lam| {
                let k = lam.multiplicity(l) as i32;
                f.value(lam) * tt.powi(k)
            })
        }
    };
    Ok(out)
}

/// Applies the n-particle Hamiltonian with boundary couplings `a±`.
pub fn apply_hamiltonian<T: Real>(f: &FockVector<T>, p: &ModelParams<T>) -> Result<FockVector<T>> {
    check_lattice(p, f.sector())?;
    let m = f.sector().m();
    let t = p.t();
    Ok(FockVector::from_fn(Arc::clone(f.sector()), |lam| {
        let diag = p.a_minus() * qint(t, lam.multiplicity(0)) + p.a_plus() * qint(t, lam.multiplicity(m));
        let mut acc: Cplx<T> = f.value(lam) * diag;
        for j in 0..lam.len() {
            let coeff = qint(t, lam.multiplicity(lam.parts()[j]));
            if let Some(up) = lam.raised(j, m) {
                acc = acc + f.value(&up) * coeff;
            }
            if let Some(down) = lam.lowered(j) {
                acc = acc + f.value(&down) * coeff;
            }
        }
        acc
    }))
}

/// `𝒩 = Π_l q·t^{N_l}`, acting as `q^{m+1}tⁿ` on level `n`.
pub fn number_operator_scalar<T: Real>(p: &ModelParams<T>, n: usize) -> T {
    p.q().powi(p.m() as i32 + 1) * p.t().powi(n as i32)
}
