//! Closed-form actions of the periodic and boundary monodromy entries, the
//! boundary transfer operator and the creation operator on sectors.

use std::sync::Arc;

use num_complex::Complex;
use num_traits::Zero;

use super::strips::{phi, psi, strips_above, strips_below};
use crate::error::{Error, Result};
use crate::fock::{check_lattice, FockVector, Partition};
use crate::params::{s, sr, ModelParams};
use crate::scalar::{cpowi, re, Cplx, Real};

/// Entry of a 2×2 monodromy matrix `[[A, B], [C, D]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Entry {
    A,
    B,
    C,
    D,
}

impl Entry {
    /// Change of particle number.
    pub fn degree(self) -> isize {
        match self {
            Self::A | Self::D => 0,
            Self::B => 1,
            Self::C => -1,
        }
    }

    /// Position `(row, column)` in the 2×2 array.
    pub fn position(self) -> (usize, usize) {
        match self {
            Self::A => (0, 0),
            Self::B => (0, 1),
            Self::C => (1, 0),
            Self::D => (1, 1),
        }
    }

    pub fn at(i: usize, j: usize) -> Self {
        match (i, j) {
            (0, 0) => Self::A,
            (0, 1) => Self::B,
            (1, 0) => Self::C,
            _ => Self::D,
        }
    }
}

fn zpow<T: Real>(z: Cplx<T>, k: i64) -> Cplx<T> {
    cpowi(z, k)
}

fn size_diff(a: &Partition, b: &Partition) -> i64 {
    a.size() as i64 - b.size() as i64
}

/// Action of a periodic monodromy entry `A_m(u)`, `B_m(u)`, `C_m(u)`, `D_m(u)`.
pub fn apply_periodic<T: Real>(which: Entry, u: Cplx<T>, f: &FockVector<T>, p: &ModelParams<T>) -> Result<FockVector<T>> {
    check_lattice(p, f.sector())?;
    if u.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let m = p.m();
    let t = p.t();
    let target = f.sector().shifted(which.degree());
    let z = u * u;
    let out = match which {
        Entry::A | Entry::B => {
            let pre = cpowi(u, if which == Entry::A { -(m as i64) - 1 } else { -(m as i64) });
            FockVector::from_fn(target, |lam| {
                strips_below(lam, which == Entry::A).iter().fold(Cplx::<T>::zero(), |acc, mu| {
                    acc + f.value(mu) * zpow(z, size_diff(lam, mu)) * phi(lam, mu, t)
                }) * pre
            })
        }
        Entry::C | Entry::D => {
            let pre = cpowi(u, if which == Entry::D { m as i64 + 1 } else { m as i64 });
            FockVector::from_fn(target, |lam| {
                strips_above(lam, m, which == Entry::D).iter().fold(Cplx::<T>::zero(), |acc, mu| {
                    acc + f.value(mu) * zpow(z, size_diff(lam, mu)) * psi(mu, lam, t)
                }) * pre
            })
        }
    };
    Ok(out)
}

/// Visits the intermediate strips of a boundary coefficient: calls
/// `visit(µ, term)` for every contribution to row `λ`, where `n` is the
/// source level of the operator.
fn boundary_terms<T: Real>(
    which: Entry,
    lambda: &Partition,
    z: Cplx<T>,
    a: T,
    t: T,
    m: usize,
    mut visit: impl FnMut(&Partition, Cplx<T>),
) {
    let zi = z.inv();
    let ar = re(a);
    let tz = z * t;
    let mm = m as i64;
    let weight = |l: &Partition, mu: &Partition, nu: &Partition| {
        zpow(z, l.size() as i64 + mu.size() as i64 - 2 * nu.size() as i64)
    };
    match which {
        Entry::A => {
            for (same, pre) in [(true, (ar - zi) * zpow(z, -mm)), (false, (tz - ar) * zpow(z, -mm))] {
                for nu in strips_below(lambda, same) {
                    for mu in strips_above(&nu, m, same) {
                        visit(&mu, pre * weight(lambda, &mu, &nu) * (phi(lambda, &nu, t) * psi(&mu, &nu, t)));
                    }
                }
            }
        }
        Entry::B => {
            for (same, pre) in [(true, zi - ar), (false, ar - tz)] {
                for nu in strips_below(lambda, same) {
                    for mu in strips_below(&nu, !same) {
                        visit(&mu, pre * weight(lambda, &mu, &nu) * (phi(lambda, &nu, t) * phi(&nu, &mu, t)));
                    }
                }
            }
        }
        Entry::C => {
            for (grow, pre) in [(true, ar - zi), (false, tz - ar)] {
                for nu in strips_above(lambda, m, !grow) {
                    for mu in strips_above(&nu, m, grow) {
                        visit(&mu, pre * weight(lambda, &mu, &nu) * (psi(&nu, lambda, t) * psi(&mu, &nu, t)));
                    }
                }
            }
        }
        Entry::D => {
            for (grow, pre) in [(true, (zi - ar) * zpow(z, mm)), (false, (ar - tz) * zpow(z, mm))] {
                for nu in strips_above(lambda, m, !grow) {
                    for mu in strips_below(&nu, !grow) {
                        visit(&mu, pre * weight(lambda, &mu, &nu) * (psi(&nu, lambda, t) * phi(&nu, &mu, t)));
                    }
                }
            }
        }
    }
}

/// Double-strip coefficient `A_{λµ}(z)`, `B_{λµ}(z)`, `C_{λµ}(z)` or
/// `D_{λµ}(z)` of the boundary monodromy entries on `Λ_{·,m}`.
///
/// Pairs without an admissible intermediate partition give 0.
pub fn boundary_coeff<T: Real>(which: Entry, lambda: &Partition, mu: &Partition, z: Cplx<T>, t: T, a: T, m: usize) -> Cplx<T> {
    let expected = lambda.len() as isize - which.degree();
    if mu.len() as isize != expected || !lambda.fits(m) || !mu.fits(m) {
        return Complex::zero();
    }
    let mut acc = Cplx::<T>::zero();
    boundary_terms(which, lambda, z, a, t, m, |nu_mu, term| {
        if nu_mu == mu {
            acc = acc + term;
        }
    });
    acc
}

/// Scalar prefactor of a boundary entry acting on source level `n`.
fn boundary_prefactor<T: Real>(which: Entry, u: Cplx<T>, p: &ModelParams<T>, n: usize) -> Cplx<T> {
    let (q, t, m) = (p.q(), p.t(), p.m() as i32);
    let n = n as i32;
    match which {
        Entry::A => u.inv() * (q.powi(-m - 1) * t.powi(-n)),
        Entry::B => re(q.powi(-m) * t.powi(-n - 1)),
        Entry::C => re(q.powi(-m - 1) * t.powi(-n)),
        Entry::D => u * (q.powi(-m) * t.powi(-n - 1)),
    }
}

/// Action of a boundary monodromy entry `𝒜_m(u;a)`, `ℬ_m(u;a)`, `𝒞_m(u;a)`, `𝒟_m(u;a)`.
pub fn apply_boundary<T: Real>(which: Entry, u: Cplx<T>, a: T, f: &FockVector<T>, p: &ModelParams<T>) -> Result<FockVector<T>> {
    check_lattice(p, f.sector())?;
    if u.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let n = f.sector().n();
    let target = f.sector().shifted(which.degree());
    if f.sector().is_void() {
        return Ok(FockVector::zero(target));
    }
    let pre = boundary_prefactor(which, u, p, n);
    let z = u * u;
    Ok(FockVector::from_fn(target, |lam| {
        let mut acc = Cplx::<T>::zero();
        boundary_terms(which, lam, z, a, p.t(), p.m(), |mu, term| acc = acc + f.value(mu) * term);
        acc * pre
    }))
}

/// Boundary transfer operator `𝒯_m(u; a₊, a₋)` on a sector vector.
pub fn apply_transfer<T: Real>(u: Cplx<T>, f: &FockVector<T>, p: &ModelParams<T>) -> Result<FockVector<T>> {
    check_lattice(p, f.sector())?;
    if u.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let n = f.sector().n() as i32;
    let (q, t, m) = (p.q(), p.t(), p.m());
    let pre = q.powi(-(m as i32)) * t.powi(-n - 1);
    let z = u * u;
    let ca = (re(p.a_plus()) - z.inv() * t) * pre;
    let cd = (re(p.a_plus()) - z) * pre;
    Ok(FockVector::from_fn(Arc::clone(f.sector()), |lam| {
        let mut acc = Cplx::<T>::zero();
        boundary_terms(Entry::A, lam, z, p.a_minus(), t, m, |mu, term| acc = acc + f.value(mu) * term * ca);
        boundary_terms(Entry::D, lam, z, p.a_minus(), t, m, |mu, term| acc = acc + f.value(mu) * term * cd);
        acc
    }))
}

/// `b(u) = q·s(q)·s(qu²)`.
pub fn creation_normalizer<T: Real>(u: Cplx<T>, q: T) -> Cplx<T> {
    sr(q) * s(u * u * q) * q
}

/// Bethe Ansatz creation operator `B̂_m(u;a) = b(u)⁻¹ℬ_m(u;a)𝒩_m`.
pub fn apply_creation<T: Real>(u: Cplx<T>, a: T, f: &FockVector<T>, p: &ModelParams<T>) -> Result<FockVector<T>> {
    let b = creation_normalizer(u, p.q());
    if b.norm() == T::zero() {
        return Err(Error::Singular { factor: "b(u) = q s(q) s(qu^2)".into(), magnitude: 0.0 });
    }
    let nn = crate::fock::number_operator_scalar(p, f.sector().n());
    Ok(apply_boundary(Entry::B, u, a, f, p)?.scale(b.inv() * nn))
}

/// `𝒟̂_m(u;a) = 𝒟_m(u;a) + s(q)/s(u²)·𝒜_m(u;a)`.
pub fn apply_d_hat<T: Real>(u: Cplx<T>, a: T, f: &FockVector<T>, p: &ModelParams<T>) -> Result<FockVector<T>> {
    let d = apply_boundary(Entry::D, u, a, f, p)?;
    let am = apply_boundary(Entry::A, u, a, f, p)?;
    am.axpy(sr(p.q()) / s(u * u), &d)
}
