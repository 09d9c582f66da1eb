use std::sync::Arc;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fock::{enumerate_sector, FockVector, Partition, SectorBasis};
use crate::params::ModelParams;
use crate::scalar::{cis, cpowi, re, Cplx, Real};
use crate::transfer::{apply_creation, phi, strips_below};

/// Spectral variables `v = (v₁,…,vₙ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralVariables<T: Real = f64> {
    v: Vec<Cplx<T>>,
}

impl<T: Real> SpectralVariables<T> {
    pub fn new(v: Vec<Cplx<T>>) -> Result<Self> {
        if v.iter().any(|x| x.norm() == T::zero()) {
            return Err(Error::ZeroArgument);
        }
        Ok(Self { v })
    }

    /// `vⱼ = e^{iξⱼ/2}`.
    pub fn from_xi(xi: &[T]) -> Self {
        Self { v: xi.iter().map(|&x| cis(x / T::lit(2.0))).collect() }
    }

    pub fn values(&self) -> &[Cplx<T>] {
        &self.v
    }

    pub fn len(&self) -> usize {
        self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }

    /// `zⱼ = vⱼ²`.
    pub fn squares(&self) -> Vec<Cplx<T>> {
        self.v.iter().map(|&x| x * x).collect()
    }

    /// Smallest `|zⱼ⁻¹ − t·zⱼ|` over `j > 1`, the denominator of the branching rule.
    pub fn branching_margin(&self, t: T) -> T {
        self.squares().iter().skip(1).fold(T::infinity(), |m, &z| m.min((z.inv() - z * t).norm()))
    }

    /// Smallest `|vⱼ² − a±|` and `|vⱼ²vₖ^{±2} − t|`.
    pub fn eigen_margin(&self, p: &ModelParams<T>) -> T {
        let z = self.squares();
        let mut m = T::infinity();
        for (j, &zj) in z.iter().enumerate() {
            m = m.min((zj - re(p.a_plus())).norm()).min((zj - re(p.a_minus())).norm());
            for &zk in &z[j + 1..] {
                m = m.min((zj * zk - re(p.t())).norm()).min((zj / zk - re(p.t())).norm()).min((zk / zj - re(p.t())).norm());
            }
        }
        m
    }
}

/// `s_l(z) − a·s_{l−1}(z)` at `z = v²`, the one-particle wave function.
pub fn one_particle_wave<T: Real>(v: Cplx<T>, a: T, l: usize) -> Cplx<T> {
    let z = v * v;
    let sum = z + z.inv();
    let (mut prev, mut cur) = (Cplx::<T>::zero(), Cplx::<T>::one());
    for _ in 0..l {
        let next = sum * cur - prev;
        prev = cur;
        cur = next;
    }
    cur - prev * a
}

fn branch_terms<T: Real>(lambda: &Partition, z: Cplx<T>, t: T, a: T, mut visit: impl FnMut(&Partition, Cplx<T>)) {
    let power = |nu: &Partition, mu: &Partition| {
        cpowi(z, lambda.size() as i64 + mu.size() as i64 - 2 * nu.size() as i64)
    };
    for (same, pre) in [(true, z.inv() - a), (false, re(a) - z * t)] {
        for nu in strips_below(lambda, same) {
            for mu in strips_below(&nu, !same) {
                visit(&mu, pre * power(&nu, &mu) * (phi(lambda, &nu, t) * phi(&nu, &mu, t)));
            }
        }
    }
}

fn branch_denominator<T: Real>(z: Cplx<T>, t: T, floor: f64) -> Result<Cplx<T>> {
    let d = z.inv() - z * t;
    let magnitude = d.norm().as_f64();
    if magnitude < floor {
        return Err(Error::Singular { factor: "z^-1 - t z".into(), magnitude });
    }
    Ok(d * (T::one() - t))
}

/// Branching coefficient `B̂_{λ/µ}(z;t,a)`: `λ` has `n` parts, `µ` has `n − 1`.
pub fn branch_coeff<T: Real>(lambda: &Partition, mu: &Partition, z: Cplx<T>, t: T, a: T, floor: f64) -> Result<Cplx<T>> {
    let den = branch_denominator(z, t, floor)?;
    if mu.len() + 1 != lambda.len() {
        return Ok(Complex::zero());
    }
    let mut acc = Cplx::<T>::zero();
    branch_terms(lambda, z, t, a, |nu_mu, term| {
        if nu_mu == mu {
            acc = acc + term;
        }
    });
    Ok(acc / den)
}

/// `Ψ_v` on `Λ_{n,m}` by iterating the branching rule from one particle.
pub fn wave_by_branching<T: Real>(v: &SpectralVariables<T>, p: &ModelParams<T>, floor: f64) -> Result<FockVector<T>> {
    let m = p.m();
    let z = v.squares();
    let mut psi = FockVector::vacuum(m);
    for (j, &zj) in z.iter().enumerate() {
        let sector: Arc<SectorBasis> = enumerate_sector(j + 1, m);
        if j == 0 {
            let v1 = v.values()[0];
            psi = FockVector::from_fn(sector, |lam| one_particle_wave(v1, p.a_minus(), lam.parts()[0]));
            continue;
        }
        let den = branch_denominator(zj, p.t(), floor)?;
        let prev = psi;
        psi = FockVector::from_fn(sector, |lam| {
            let mut acc = Cplx::<T>::zero();
            branch_terms(lam, zj, p.t(), p.a_minus(), |mu, term| acc = acc + prev.value(mu) * term);
            acc / den
        });
    }
    Ok(psi)
}

/// `Ψ_v = B̂_m(v₁;a₋)···B̂_m(vₙ;a₋)|∅⟩`.
pub fn wave_by_creation<T: Real>(v: &SpectralVariables<T>, p: &ModelParams<T>, floor: f64) -> Result<FockVector<T>> {
    let q = p.q();
    let mut psi = FockVector::vacuum(p.m());
    for (j, &vj) in v.values().iter().enumerate().rev() {
        let z = vj * vj * q;
        for (sign, name) in [(T::one(), "q v^2 - 1"), (-T::one(), "q v^2 + 1")] {
            let magnitude = (z - sign).norm().as_f64();
            if magnitude < floor {
                return Err(Error::Singular { factor: format!("{name} at v_{}", j + 1), magnitude });
            }
        }
        psi = apply_creation(vj, p.a_minus(), &psi, p)?;
    }
    Ok(psi)
}
