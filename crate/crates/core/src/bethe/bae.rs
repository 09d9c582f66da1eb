use num_complex::Complex;

use super::morse::{Couplings, MorseProblem};
use crate::scalar::{cis, re, Cplx, Real};

/// `(1 − c·e)/(e − c)` for `e = e^{iθ}`.
fn lattice_factor<T: Real>(theta: T, c: T) -> Cplx<T> {
    let e = cis(theta);
    (re(T::one()) - e * c) / (e - re(c))
}

/// `(i·g + x)/(i·g − x)`.
fn continuum_factor<T: Real>(x: T, g: T) -> Cplx<T> {
    Complex::new(x, g) / Complex::new(-x, g)
}

pub(super) fn residual<T: Real>(prob: &MorseProblem<T>, xi: &[T]) -> T {
    let n = prob.n();
    let mut worst = T::zero();
    for j in 0..n {
        let x = xi[j];
        let (lhs, rhs) = match prob.couplings() {
            Couplings::Lattice(p) => {
                let lhs = cis(T::count(2 * (p.m() + 1)) * x);
                let mut rhs = lattice_factor(x, p.a_plus()) * lattice_factor(x, p.a_minus());
                for k in (0..n).filter(|&k| k != j) {
                    rhs = rhs * lattice_factor(x + xi[k], p.t()) * lattice_factor(x - xi[k], p.t());
                }
                (lhs, rhs)
            }
            Couplings::Continuum(c) => {
                let lhs = cis(x);
                let mut rhs = continuum_factor(x, c.g_plus()) * continuum_factor(x, c.g_minus());
                for k in (0..n).filter(|&k| k != j) {
                    rhs = rhs * continuum_factor(x + xi[k], c.g()) * continuum_factor(x - xi[k], c.g());
                }
                (lhs, rhs)
            }
        };
        worst = worst.max((lhs - rhs).norm());
    }
    worst
}
