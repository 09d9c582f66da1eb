use rayon::prelude::*;

use super::staircase::staircase_wave;
use super::wave::{continuum_wave_sum, AlcovePoint};
use crate::bethe::{solve_spectral_point, MorseProblem};
use crate::error::{Error, Result};
use crate::fock::{inner_product, Partition};
use crate::hall_littlewood::spectral_wave;
use crate::params::{ContinuumParams, Tolerances};
use crate::scalar::Real;

/// One lattice size of a continuum-limit sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow<T> {
    pub m: usize,
    /// `2m·ξ_λ^{(n,m)}`.
    pub scaled_xi: Vec<T>,
    /// `‖2m·ξ_λ^{(n,m)} − ξ_λ‖∞`.
    pub xi_deviation: T,
    /// Relative gap between `4ⁿ(2m)⁻ⁿ(Ψ,Ψ)` and `∫_A |ψ|²`.
    pub norm_deviation: T,
    /// `max |2ⁿ(JΨ)(x) − ψ(ξ_λ,x)|` over the samples.
    pub wave_deviation: T,
}

/// Lattice-to-continuum comparison for one label `λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport<T> {
    pub lambda: Partition,
    pub continuum_xi: Vec<T>,
    /// `∫_A |ψ(ξ_λ,x)|² dx`.
    pub continuum_norm: T,
    pub rows: Vec<SweepRow<T>>,
}

impl<T: Real> ConvergenceReport<T> {
    /// Ratios of consecutive `xi_deviation` values.
    pub fn xi_ratios(&self) -> Vec<T> {
        self.rows.windows(2).map(|w| w[0].xi_deviation / w[1].xi_deviation).collect()
    }
}

/// Solves the lattice problem with `t = e^{−g/2m}`, `a± = e^{−g±/2m}` for each
/// `m` and compares with the continuum solution.
pub fn convergence_sweep<T: Real>(
    lambda: &Partition,
    cp: &ContinuumParams<T>,
    m_list: &[usize],
    samples: &[AlcovePoint<T>],
    tol: &Tolerances,
) -> Result<ConvergenceReport<T>> {
    if m_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParams("m_list must be increasing".into()));
    }
    let floor = tol.singularity_floor;
    let n = cp.n();
    let cont = solve_spectral_point(&MorseProblem::continuum(*cp, lambda.clone())?, tol)?;
    let psi = continuum_wave_sum(&cont.xi, cp, floor)?;
    let continuum_norm = psi.product(&psi.conj()).integrate_alcove().re;
    let four_n = T::lit(4.0).powi(n as i32);
    let rows = m_list
        .par_iter()
        .map(|&m| {
            let p = cp.lattice(m)?;
            let sp = solve_spectral_point(&MorseProblem::lattice(p, lambda.clone())?, tol)?;
            let two_m = T::count(2 * m);
            let scaled_xi: Vec<T> = sp.xi.iter().map(|&x| x * two_m).collect();
            let xi_deviation = scaled_xi.iter().zip(&cont.xi).fold(T::zero(), |d, (&a, &b)| d.max((a - b).abs()));
            let wave = spectral_wave(&sp, &p, floor)?;
            let lattice_norm = inner_product(&wave, &wave, p.t())?.re * four_n / two_m.powi(n as i32);
            let norm_deviation = (lattice_norm - continuum_norm).abs() / continuum_norm;
            let wave_deviation = samples.iter().fold(T::zero(), |d, x| {
                d.max((staircase_wave(&wave, &p, x.coords()) - psi.eval(x.coords())).norm())
            });
            Ok(SweepRow { m, scaled_xi, xi_deviation, norm_deviation, wave_deviation })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceReport { lambda: lambda.clone(), continuum_xi: cont.xi, continuum_norm, rows })
}
