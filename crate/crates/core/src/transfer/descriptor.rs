//! Named operators and their dense matrices on a sector.

use std::sync::Arc;

use num_complex::Complex;

use super::monodromy::{apply_boundary, apply_creation, apply_d_hat, apply_periodic, apply_transfer, Entry};
use super::operator::OperatorMatrix;
use crate::error::Result;
use crate::fock::{apply_generator, apply_hamiltonian, check_lattice, Generator, SectorBasis};
use crate::params::{ModelParams, SectorLimits};
use crate::scalar::{re, Cplx, Real};

/// An operator with an implemented action on the sector spaces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OperatorDescriptor<T: Real = f64> {
    Identity,
    /// `𝒩_m = Π_l q t^{N_l}`, assembled from the site generators.
    Number,
    Hamiltonian,
    Generator { kind: Generator, site: usize },
    Periodic { which: Entry, u: Cplx<T> },
    /// `A_m(u) + D_m(u)`.
    PeriodicTransfer { u: Cplx<T> },
    Boundary { which: Entry, u: Cplx<T>, a: T },
    Transfer { u: Cplx<T> },
    Creation { u: Cplx<T>, a: T },
    DHat { u: Cplx<T>, a: T },
}

impl<T: Real> OperatorDescriptor<T> {
    /// Change in particle number.
    pub fn degree(&self) -> isize {
        match self {
            Self::Generator { kind, .. } => kind.degree(),
            Self::Periodic { which, .. } | Self::Boundary { which, .. } => which.degree(),
            Self::Creation { .. } => 1,
            _ => 0,
        }
    }
}

/// Dense matrix of `op` with source `sector`, columns in basis order.
///
/// The sector must fit within `limits`.
pub fn operator_matrix<T: Real>(
    op: &OperatorDescriptor<T>,
    p: &ModelParams<T>,
    sector: &Arc<SectorBasis>,
    limits: &SectorLimits,
) -> Result<OperatorMatrix<T>> {
    check_lattice(p, sector)?;
    limits.check(sector.n(), sector.m())?;
    let deg = op.degree();
    match *op {
        OperatorDescriptor::Identity => Ok(OperatorMatrix::identity(sector)),
        OperatorDescriptor::Number => {
            let mut acc = OperatorMatrix::identity(sector);
            for l in 0..=p.m() {
                let tn = OperatorMatrix::from_action(sector, 0, |v| apply_generator(Generator::TPowN, l, v, p))?;
                acc = tn.compose(&acc)?.scale(re(p.q()));
            }
            Ok(acc)
        }
        OperatorDescriptor::Hamiltonian => OperatorMatrix::from_action(sector, 0, |v| apply_hamiltonian(v, p)),
        OperatorDescriptor::Generator { kind, site } => OperatorMatrix::from_action(sector, deg, |v| apply_generator(kind, site, v, p)),
        OperatorDescriptor::Periodic { which, u } => OperatorMatrix::from_action(sector, deg, |v| apply_periodic(which, u, v, p)),
        OperatorDescriptor::PeriodicTransfer { u } => OperatorMatrix::from_action(sector, 0, |v| {
            apply_periodic(Entry::A, u, v, p)?.add(&apply_periodic(Entry::D, u, v, p)?)
        }),
        OperatorDescriptor::Boundary { which, u, a } => {
            OperatorMatrix::from_action(sector, deg, |v| apply_boundary(which, u, a, v, p))
        }
        OperatorDescriptor::Transfer { u } => OperatorMatrix::from_action(sector, 0, |v| apply_transfer(u, v, p)),
        OperatorDescriptor::Creation { u, a } => OperatorMatrix::from_action(sector, 1, |v| apply_creation(u, a, v, p)),
        OperatorDescriptor::DHat { u, a } => OperatorMatrix::from_action(sector, 0, |v| apply_d_hat(u, a, v, p)),
    }
}

/// Shorthand for a real spectral parameter.
pub fn real_u<T: Real>(u: f64) -> Cplx<T> {
    Complex::new(T::lit(u), T::zero())
}
