use num_complex::Complex;

use crate::fock::{inner_product, weight_delta, FockVector, Partition};
use crate::params::ModelParams;
use crate::scalar::{Cplx, Real};

/// `⌊2mx⌋ = Σⱼ ⌊2m(xⱼ − xⱼ₊₁)⌋(e₁+…+eⱼ)` with `xₙ₊₁ = 0`.
///
/// `None` when `x` is outside the closed chamber `x₁ ≥ … ≥ xₙ ≥ 0`.
pub fn floor_map<T: Real>(x: &[T], m: usize) -> Option<Partition> {
    let n = x.len();
    let two_m = T::count(2 * m);
    let mut parts = vec![0usize; n];
    let mut run = 0usize;
    for j in (0..n).rev() {
        let next = if j + 1 < n { x[j + 1] } else { T::zero() };
        let gap = x[j] - next;
        if gap < T::zero() || !gap.is_finite() {
            return None;
        }
        run += (two_m * gap).floor().to_usize()?;
        parts[j] = run;
    }
    Partition::new(parts).ok()
}

/// `(Jf)(x) = √δ(⌊2mx⌋)·f(⌊2mx⌋)`, zero outside `Λ_{n,m}`.
pub fn staircase_embed<T: Real>(f: &FockVector<T>, p: &ModelParams<T>, x: &[T]) -> Cplx<T> {
    let m = f.sector().m();
    match floor_map(x, m) {
        Some(lam) if lam.len() == f.sector().n() && lam.fits(m) => f.value(&lam) * weight_delta(&lam, p.t()).sqrt(),
        _ => Complex::new(T::zero(), T::zero()),
    }
}

/// `2ⁿ·(JΨ)(x)`, the staircase version of a lattice wave function.
pub fn staircase_wave<T: Real>(psi: &FockVector<T>, p: &ModelParams<T>, x: &[T]) -> Cplx<T> {
    staircase_embed(psi, p, x) * T::lit(2.0).powi(psi.sector().n() as i32)
}

/// Centre of the staircase cell of `λ` in the chamber.
pub fn cell_center<T: Real>(lambda: &Partition, m: usize) -> Vec<T> {
    let l = lambda.parts();
    let n = l.len();
    let two_m = T::count(2 * m);
    let mut x = vec![T::zero(); n];
    let mut run = T::zero();
    for j in (0..n).rev() {
        let next = if j + 1 < n { l[j + 1] } else { 0 };
        run = run + T::count(l[j] - next) + T::lit(0.5);
        x[j] = run / two_m;
    }
    x
}

/// `∫_C (Jf)·conj(Jg) dx`, summed cell by cell.
///
/// Each cell is the image of a unit cube under the unimodular map from the
/// consecutive differences of `2mx` to `2mx`, hence has volume `(2m)⁻ⁿ`.
pub fn staircase_inner<T: Real>(f: &FockVector<T>, g: &FockVector<T>, p: &ModelParams<T>) -> Cplx<T> {
    let sector = f.sector();
    let m = sector.m();
    let vol = T::count(2 * m).recip().powi(sector.n() as i32);
    sector.states().iter().fold(Complex::new(T::zero(), T::zero()), |acc, lam| {
        let x = cell_center::<T>(lam, m);
        acc + staircase_embed(f, p, &x) * staircase_embed(g, p, &x).conj() * vol
    })
}

/// `(2m)⁻ⁿ(f,g)`, the value [`staircase_inner`] must reproduce.
pub fn scaled_inner<T: Real>(f: &FockVector<T>, g: &FockVector<T>, p: &ModelParams<T>) -> crate::Result<Cplx<T>> {
    let n = f.sector().n() as i32;
    Ok(inner_product(f, g, p.t())? * T::count(2 * f.sector().m()).recip().powi(n))
}
