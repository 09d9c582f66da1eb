use std::sync::Arc;

use num_complex::Complex;
use num_traits::{One, Zero};

use super::sector::{weight_delta, SectorBasis};
use super::partition::Partition;
use crate::error::{Error, Result};
use crate::scalar::{Cplx, Real};

/// Complex amplitudes over the basis of one sector.
#[derive(Debug, Clone)]
pub struct FockVector<T: Real = f64> {
    sector: Arc<SectorBasis>,
    amps: Vec<Cplx<T>>,
}

impl<T: Real> PartialEq for FockVector<T> {
    fn eq(&self, other: &Self) -> bool {
        self.sector == other.sector && self.amps == other.amps
    }
}

impl<T: Real> FockVector<T> {
    pub fn new(sector: Arc<SectorBasis>, amps: Vec<Cplx<T>>) -> Result<Self> {
        if amps.len() != sector.len() {
            return Err(Error::SectorMismatch(format!(
                "{} amplitudes for a sector of size {}",
                amps.len(),
                sector.len()
            )));
        }
        Ok(Self { sector, amps })
    }

    pub fn zero(sector: Arc<SectorBasis>) -> Self {
        let amps = vec![Complex::zero(); sector.len()];
        Self { sector, amps }
    }

    /// Standard basis vector `|λ⟩` for the state at position `i`.
    pub fn basis(sector: Arc<SectorBasis>, i: usize) -> Self {
        let mut v = Self::zero(sector);
        v.amps[i] = Complex::one();
        v
    }

    /// Tabulates `f(λ)` over the sector.
    pub fn from_fn(sector: Arc<SectorBasis>, mut f: impl FnMut(&Partition) -> Cplx<T>) -> Self {
        let amps = sector.states().iter().map(&mut f).collect();
        Self { sector, amps }
    }

    /// The vacuum `|∅⟩` on sites `0..=m`.
    pub fn vacuum(m: usize) -> Self {
        Self::basis(SectorBasis::shared(0, m), 0)
    }

    pub fn sector(&self) -> &Arc<SectorBasis> {
        &self.sector
    }

    pub fn amplitudes(&self) -> &[Cplx<T>] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Cplx<T>] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Cplx<T>> {
        self.amps
    }

    /// Amplitude at `λ`, zero when `λ` lies outside the sector.
    pub fn value(&self, lambda: &Partition) -> Cplx<T> {
        self.sector.index_of(lambda).map_or(Complex::zero(), |i| self.amps[i])
    }

    pub fn scale(&self, k: Cplx<T>) -> Self {
        Self { sector: Arc::clone(&self.sector), amps: self.amps.iter().map(|&a| a * k).collect() }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.sector != other.sector {
            return Err(Error::SectorMismatch(format!(
                "levels ({}, m={}) and ({}, m={})",
                self.sector.level(),
                self.sector.m(),
                other.sector.level(),
                other.sector.m()
            )));
        }
        Ok(())
    }

    /// `a·self + other`.
    pub fn axpy(&self, a: Cplx<T>, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let amps = self.amps.iter().zip(&other.amps).map(|(&x, &y)| a * x + y).collect();
        Ok(Self { sector: Arc::clone(&self.sector), amps })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.axpy(Complex::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        other.axpy(-Complex::<T>::one(), self)
    }

    /// Weighted norm `√(f, f)`.
    pub fn norm(&self, t: T) -> T {
        inner_product(self, self, t).map(|z| z.re.sqrt()).unwrap_or_else(|_| T::zero())
    }

    pub fn max_abs(&self) -> T {
        self.amps.iter().fold(T::zero(), |acc, z| acc.max(z.norm()))
    }
}

/// `(f, g) = Σ_λ f(λ)·conj(g(λ))·δ(λ)`.
pub fn inner_product<T: Real>(f: &FockVector<T>, g: &FockVector<T>, t: T) -> Result<Cplx<T>> {
    f.check_same(g)?;
    Ok(f.sector
        .states()
        .iter()
        .zip(f.amps.iter().zip(&g.amps))
        .fold(Complex::zero(), |acc, (l, (&a, &b))| acc + a * b.conj() * weight_delta(l, t)))
}
