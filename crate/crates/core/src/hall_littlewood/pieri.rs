use num_complex::Complex;

use super::polynomial::{hl_direct, HLParams};
use crate::bethe::SpectralPoint;
use crate::error::{Error, Result};
use crate::fock::{enumerate_sector, Partition};
use crate::params::{qint, ModelParams};
use crate::scalar::{cis, re, Cplx, Real};
use crate::transfer::{bethe_eigenvalues, boundary_coeff, Entry};

/// The two sides of a Pieri identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual<T> {
    /// `|lhs − rhs|`.
    pub absolute: T,
    /// Largest magnitude among the individual terms.
    pub scale: T,
}

impl<T: Real> Residual<T> {
    pub fn relative(&self) -> T {
        if self.scale == T::zero() {
            self.absolute
        } else {
            self.absolute / self.scale
        }
    }
}

fn check_point<T: Real>(point: &SpectralPoint<T>, nu: &Partition, p: &ModelParams<T>) -> Result<()> {
    if point.xi.len() != p.n() || nu.len() != p.n() || !nu.fits(p.m()) {
        return Err(Error::SectorMismatch(format!(
            "point with {} variables and {nu} in Λ_{{{},{}}}",
            point.xi.len(),
            p.n(),
            p.m()
        )));
    }
    Ok(())
}

struct Evaluator<T: Real> {
    z: Vec<Cplx<T>>,
    hp: HLParams<T>,
    floor: f64,
}

impl<T: Real> Evaluator<T> {
    fn new(point: &SpectralPoint<T>, p: &ModelParams<T>, floor: f64) -> Self {
        Self { z: point.xi.iter().map(|&x| cis(x)).collect(), hp: HLParams::new(p.t(), p.a_minus()), floor }
    }

    fn at(&self, lambda: &Partition) -> Result<Cplx<T>> {
        hl_direct(lambda, &self.z, &self.hp, self.floor)
    }
}

/// Hamiltonian Pieri identity `P_ν·Σ(zⱼ + zⱼ⁻¹) = (a₋[m₀] + a₊[m_m])P_ν + Σ [m_{νⱼ}](P_{ν+eⱼ} + P_{ν−eⱼ})`
/// at `zⱼ = e^{iξⱼ}`.
pub fn pieri_residual<T: Real>(point: &SpectralPoint<T>, nu: &Partition, p: &ModelParams<T>, floor: f64) -> Result<Residual<T>> {
    check_point(point, nu, p)?;
    let ev = Evaluator::new(point, p, floor);
    let t = p.t();
    let m = p.m();
    let base = ev.at(nu)?;
    let energy = ev.z.iter().fold(Complex::new(T::zero(), T::zero()), |acc, &z| acc + z + z.inv());
    let lhs = base * energy;
    let mut rhs = base * (p.a_minus() * qint(t, nu.multiplicity(0)) + p.a_plus() * qint(t, nu.multiplicity(m)));
    let mut scale = lhs.norm().max(rhs.norm());
    for j in 0..nu.len() {
        let coeff = qint(t, nu.multiplicity(nu.parts()[j]));
        for neighbour in [nu.raised(j, m), nu.lowered(j)].into_iter().flatten() {
            let term = ev.at(&neighbour)? * coeff;
            scale = scale.max(term.norm());
            rhs = rhs + term;
        }
    }
    Ok(Residual { absolute: (lhs - rhs).norm(), scale })
}

/// Transfer-operator Pieri identity at spectral parameter `u`.
pub fn pieri_transfer_residual<T: Real>(
    point: &SpectralPoint<T>,
    nu: &Partition,
    u: Cplx<T>,
    p: &ModelParams<T>,
    floor: f64,
) -> Result<Residual<T>> {
    check_point(point, nu, p)?;
    let ev = Evaluator::new(point, p, floor);
    let (t, m, n) = (p.t(), p.m(), p.n());
    let (eig, _) = bethe_eigenvalues(u, &point.xi, p, floor)?;
    let lhs = ev.at(nu)? * eig;
    let pre = p.q().powi(-(m as i32)) * t.powi(-(n as i32) - 1);
    let z = u * u;
    let ca = (re(p.a_plus()) - z.inv() * t) * pre;
    let cd = (re(p.a_plus()) - z) * pre;
    let mut rhs = Complex::new(T::zero(), T::zero());
    let mut scale = lhs.norm();
    for mu in enumerate_sector(n, m).states() {
        let coeff = boundary_coeff(Entry::A, nu, mu, z, t, p.a_minus(), m) * ca
            + boundary_coeff(Entry::D, nu, mu, z, t, p.a_minus(), m) * cd;
        if coeff.norm() == T::zero() {
            continue;
        }
        let term = ev.at(mu)? * coeff;
        scale = scale.max(term.norm());
        rhs = rhs + term;
    }
    Ok(Residual { absolute: (lhs - rhs).norm(), scale })
}
