use num_complex::Complex;
use num_traits::One;

use super::expsum::ExponentialSum;
use crate::bethe::{solve_spectral_point, MorseProblem};
use crate::error::{Error, Result};
use crate::fock::Partition;
use crate::linalg::CMatrix;
use crate::params::{ContinuumParams, Tolerances};
use crate::scalar::{Cplx, Real};

/// A point of the alcove `1/2 > x₁ > … > xₙ > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlcovePoint<T: Real = f64> {
    x: Vec<T>,
}

impl<T: Real> AlcovePoint<T> {
    pub fn new(x: Vec<T>) -> Result<Self> {
        let half = T::lit(0.5);
        let inside = x.first().is_none_or(|&a| a < half)
            && x.windows(2).all(|w| w[0] > w[1])
            && x.last().is_none_or(|&a| a > T::zero());
        if !inside {
            return Err(Error::InvalidParams(format!("{:?} is not inside the alcove", x.iter().map(|v| v.as_f64()).collect::<Vec<_>>())));
        }
        Ok(Self { x })
    }

    pub fn coords(&self) -> &[T] {
        &self.x
    }

    /// Interior points `(i₁,…,iₙ)/(2k)` with `k > i₁ > … > iₙ > 0`.
    pub fn grid(n: usize, k: usize) -> Vec<Self> {
        fn fill(n: usize, below: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == n {
                out.push(cur.clone());
                return;
            }
            for i in 1..below {
                cur.push(i);
                fill(n, i, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        fill(n, k, &mut Vec::new(), &mut out);
        let den = T::count(2 * k);
        out.into_iter().map(|v| Self { x: v.into_iter().map(|i| T::count(i) / den).collect() }).collect()
    }
}

fn guard<T: Real>(value: T, floor: f64, name: impl FnOnce() -> String) -> Result<T> {
    let magnitude = value.abs().as_f64();
    if magnitude < floor {
        return Err(Error::Singular { factor: name(), magnitude });
    }
    Ok(value)
}

/// `C(ξ) = Π (ξⱼ − ig₋)/ξⱼ · Π_{j<k} (ξⱼ+ξₖ−ig)/(ξⱼ+ξₖ) · (ξⱼ−ξₖ−ig)/(ξⱼ−ξₖ)`.
pub fn c_function<T: Real>(xi: &[T], cp: &ContinuumParams<T>, floor: f64) -> Result<Cplx<T>> {
    let mut acc = Cplx::<T>::one();
    for (j, &a) in xi.iter().enumerate() {
        let d = guard(a, floor, || format!("xi_{}", j + 1))?;
        acc = acc * Complex::new(a, -cp.g_minus()) / d;
        for (k, &b) in xi.iter().enumerate().skip(j + 1) {
            let s = guard(a + b, floor, || format!("xi_{} + xi_{}", j + 1, k + 1))?;
            let r = guard(a - b, floor, || format!("xi_{} - xi_{}", j + 1, k + 1))?;
            acc = acc * Complex::new(s, -cp.g()) / s * Complex::new(r, -cp.g()) / r;
        }
    }
    Ok(acc)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

/// `ψ(ξ,·) = Σ_{σ,ε} C(εξ_σ)·e^{i⟨εξ_σ, x⟩}` as a plane-wave sum.
pub fn continuum_wave_sum<T: Real>(xi: &[T], cp: &ContinuumParams<T>, floor: f64) -> Result<ExponentialSum<T>> {
    let n = xi.len();
    if n != cp.n() {
        return Err(Error::SectorMismatch(format!("{n} spectral values for n = {}", cp.n())));
    }
    let mut es = ExponentialSum::new(n);
    for sigma in permutations(n) {
        for signs in 0u32..(1 << n) {
            let w: Vec<T> = (0..n).map(|j| if signs >> j & 1 == 1 { -xi[sigma[j]] } else { xi[sigma[j]] }).collect();
            es.push(c_function(&w, cp, floor)?, w);
        }
    }
    Ok(es)
}

/// `ψ(ξ, x)`.
pub fn continuum_wave<T: Real>(xi: &[T], x: &AlcovePoint<T>, cp: &ContinuumParams<T>, floor: f64) -> Result<Cplx<T>> {
    Ok(continuum_wave_sum(xi, cp, floor)?.eval(x.coords()))
}

/// Walls of the alcove.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Wall {
    /// `x_j = x_{j+1}` (0-based `j`).
    Pair(usize),
    /// `xₙ = 0`.
    Origin,
    /// `x₁ = 1/2`.
    Affine,
}

/// `|Robin operator applied to ψ(ξ,·)|` at the projection of `sample` onto `wall`.
pub fn robin_residual<T: Real>(xi: &[T], cp: &ContinuumParams<T>, wall: Wall, sample: &[T], floor: f64) -> Result<T> {
    let psi = continuum_wave_sum(xi, cp, floor)?;
    robin_residual_of(&psi, cp, wall, sample)
}

/// As [`robin_residual`] for a precomputed plane-wave sum.
pub fn robin_residual_of<T: Real>(psi: &ExponentialSum<T>, cp: &ContinuumParams<T>, wall: Wall, sample: &[T]) -> Result<T> {
    let n = psi.n();
    if sample.len() != n {
        return Err(Error::SectorMismatch(format!("sample of length {} for n = {n}", sample.len())));
    }
    let mut x = sample.to_vec();
    let value = match wall {
        Wall::Pair(j) => {
            if j + 1 >= n {
                return Err(Error::InvalidParams(format!("no wall x_{} = x_{}", j + 1, j + 2)));
            }
            x[j + 1] = x[j];
            psi.derivative(j).eval(&x) - psi.derivative(j + 1).eval(&x) - psi.eval(&x) * cp.g()
        }
        Wall::Origin => {
            x[n - 1] = T::zero();
            psi.derivative(n - 1).eval(&x) - psi.eval(&x) * cp.g_minus()
        }
        Wall::Affine => {
            x[0] = T::lit(0.5);
            psi.derivative(0).eval(&x) + psi.eval(&x) * cp.g_plus()
        }
    };
    Ok(value.norm())
}

/// `max |ψ|` over an interior grid of the alcove.
pub fn sup_norm_estimate<T: Real>(psi: &ExponentialSum<T>, resolution: usize) -> T {
    AlcovePoint::grid(psi.n(), resolution).iter().fold(T::zero(), |m, p| m.max(psi.eval(p.coords()).norm()))
}

/// `G_{λµ} = ∫_A ψ(ξ_λ,x)·conj(ψ(ξ_µ,x)) dx` at the continuum spectral points.
pub fn gram_continuum<T: Real>(lambdas: &[Partition], cp: &ContinuumParams<T>, tol: &Tolerances) -> Result<CMatrix<T>> {
    use rayon::prelude::*;
    let waves = lambdas
        .par_iter()
        .map(|lam| {
            let sp = solve_spectral_point(&MorseProblem::continuum(*cp, lam.clone())?, tol)?;
            continuum_wave_sum(&sp.xi, cp, tol.singularity_floor)
        })
        .collect::<Result<Vec<_>>>()?;
    let k = waves.len();
    let entries: Vec<Cplx<T>> = (0..k * k)
        .into_par_iter()
        .map(|idx| waves[idx / k].product(&waves[idx % k].conj()).integrate_alcove())
        .collect();
    Ok(CMatrix::from_fn(k, k, |i, j| entries[i * k + j]))
}
