use super::morse::{Flavor, MorseProblem};
use crate::error::{Error, Result};
use crate::fock::Partition;
use crate::linalg::solve_real;
use crate::params::Tolerances;
use crate::scalar::Real;

/// Newton iteration caps.
pub const MAX_ITERATIONS: usize = 200;
pub const MAX_HALVINGS: usize = 60;
const ARMIJO: f64 = 1e-4;

/// Solution `ξ_λ` of the Bethe equations.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralPoint<T: Real = f64> {
    pub xi: Vec<T>,
    pub lambda: Partition,
    /// Max-norm of the gradient at `xi`.
    pub grad_norm: T,
    pub iterations: usize,
    pub flavor: Flavor,
}

impl<T: Real> SpectralPoint<T> {
    /// `ξ₁ > … > ξₙ > 0`, and `ξ₁ < π` on the lattice.
    pub fn in_chamber(&self) -> bool {
        let ordered = self.xi.windows(2).all(|w| w[0] > w[1]) && self.xi.last().is_none_or(|&x| x > T::zero());
        let bounded = self.flavor == Flavor::Continuum || self.xi.first().is_none_or(|&x| x < T::PI());
        ordered && bounded
    }
}

fn max_abs<T: Real>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |m, x| m.max(x.abs()))
}

fn sum_sq<T: Real>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |m, &x| m + x * x)
}

/// Damped Newton iteration on `∇V_λ = 0` with Armijo backtracking on `‖∇V_λ‖²`.
pub fn solve_spectral_point<T: Real>(prob: &MorseProblem<T>, tol: &Tolerances) -> Result<SpectralPoint<T>> {
    let target = T::lit(tol.solver_tol);
    let mut xi = prob.initial_point();
    let mut g = prob.gradient(&xi);
    let mut g2 = sum_sq(&g);
    let fail = |iterations: usize, g: &[T], xi: &[T]| Error::NonConvergence {
        iterations,
        grad_norm: max_abs(g).as_f64(),
        xi: xi.iter().map(|x| x.as_f64()).collect(),
    };
    for it in 0..=MAX_ITERATIONS {
        if max_abs(&g) <= target {
            return Ok(SpectralPoint {
                xi,
                lambda: prob.lambda().clone(),
                grad_norm: max_abs(&g),
                iterations: it,
                flavor: prob.flavor(),
            });
        }
        if it == MAX_ITERATIONS {
            break;
        }
        let neg: Vec<T> = g.iter().map(|&x| -x).collect();
        let step = solve_real(prob.hessian(&xi), neg)?;
        let mut alpha = T::one();
        let mut accepted = false;
        for _ in 0..=MAX_HALVINGS {
            let trial: Vec<T> = xi.iter().zip(&step).map(|(&x, &d)| x + alpha * d).collect();
            let gt = prob.gradient(&trial);
            let gt2 = sum_sq(&gt);
            if gt2 <= (T::one() - T::lit(2.0 * ARMIJO) * alpha) * g2 {
                xi = trial;
                g = gt;
                g2 = gt2;
                accepted = true;
                break;
            }
            alpha = alpha / T::lit(2.0);
        }
        if !accepted {
            return Err(fail(it, &g, &xi));
        }
    }
    Err(fail(MAX_ITERATIONS, &g, &xi))
}

/// Solves every problem independently in parallel.
pub fn solve_all<T: Real>(probs: &[MorseProblem<T>], tol: &Tolerances) -> Vec<Result<SpectralPoint<T>>> {
    use rayon::prelude::*;
    probs.par_iter().map(|p| solve_spectral_point(p, tol)).collect()
}
