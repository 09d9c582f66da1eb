use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use nalgebra::DMatrix;
use num_complex::Complex;

use super::*;
use crate::fock::{enumerate_sector, Partition};
use crate::params::{ContinuumParams, ModelParams, Tolerances};

fn part(v: &[usize]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn lattice(m: usize, n: usize, t: f64, ap: f64, am: f64) -> ModelParams<f64> {
    ModelParams::from_t(m, n, t, ap, am).unwrap()
}

fn solve(prob: &MorseProblem<f64>) -> SpectralPoint<f64> {
    solve_spectral_point(prob, &Tolerances::default()).unwrap()
}

fn quad(a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
    let rule = GaussLegendre::new(NonZeroUsize::new(60).unwrap());
    rule.integrate(a, b, f)
}

fn continuum_value(prob: &MorseProblem<f64>, c: &ContinuumParams<f64>, xi: &[f64]) -> f64 {
    let n = xi.len();
    let at = |g: f64| move |u: f64| (u / g).atan();
    let mut v = 0.0;
    for j in 0..n {
        let x = xi[j];
        v += 0.5 * x * x - 2.0 * PI * prob.shifted(j) * x;
        v += 2.0 * quad(0.0, x, |u| at(c.g_plus())(u) + at(c.g_minus())(u));
        for k in j + 1..n {
            v += 2.0 * (quad(0.0, x + xi[k], at(c.g())) + quad(0.0, x - xi[k], at(c.g())));
        }
    }
    v
}

#[test]
fn continuum_gradient_matches_value_differences() {
    let c = ContinuumParams::new(3, 0.8, 1.7, 2.5).unwrap();
    let prob = MorseProblem::continuum(c, part(&[2, 1, 1])).unwrap();
    let xi = [9.0, 5.5, 2.2];
    let g = prob.gradient(&xi);
    let h = 1e-4;
    for j in 0..3 {
        let mut up = xi;
        let mut dn = xi;
        up[j] += h;
        dn[j] -= h;
        let fd = (continuum_value(&prob, &c, &up) - continuum_value(&prob, &c, &dn)) / (2.0 * h);
        assert!((fd - g[j]).abs() <= 1e-6 * g[j].abs().max(1.0), "j={j}: {fd} vs {}", g[j]);
    }
}

fn check_hessian(prob: &MorseProblem<f64>, xi: &[f64]) {
    let n = xi.len();
    let hess = prob.hessian(xi);
    let h = 1e-6;
    for k in 0..n {
        let mut up = xi.to_vec();
        let mut dn = xi.to_vec();
        up[k] += h;
        dn[k] -= h;
        let gu = prob.gradient(&up);
        let gd = prob.gradient(&dn);
        for j in 0..n {
            let fd = (gu[j] - gd[j]) / (2.0 * h);
            let exact = hess[j * n + k];
            assert!((fd - exact).abs() <= 1e-6 * exact.abs().max(1.0), "({j},{k}): {fd} vs {exact}");
            assert_eq!(hess[j * n + k], hess[k * n + j]);
        }
    }
}

#[test]
fn hessians_match_gradient_differences() {
    let p = lattice(4, 3, 0.45, -0.3, 0.6);
    let prob = MorseProblem::lattice(p, part(&[3, 1, 0])).unwrap();
    check_hessian(&prob, &[2.1, 1.2, 0.5]);
    check_hessian(&prob, &[4.0, -1.0, 7.5]);
    let c = ContinuumParams::new(3, 0.6, 1.1, 0.9).unwrap();
    let prob = MorseProblem::continuum(c, part(&[1, 1, 0])).unwrap();
    check_hessian(&prob, &[12.0, 7.0, 3.0]);
}

#[test]
fn lattice_hessian_spectrum_bounded_below() {
    let p = lattice(3, 3, 0.9, 0.95, -0.95);
    let prob = MorseProblem::lattice(p, part(&[2, 2, 1])).unwrap();
    for xi in [[0.3, 0.2, 0.1], [3.0, -2.0, 1.0], [10.0, 4.0, -7.0]] {
        let h = DMatrix::from_row_slice(3, 3, &prob.hessian(&xi));
        let low = h.symmetric_eigen().eigenvalues.min();
        assert!(low >= 2.0 * 4.0 - 1e-12, "{low}");
    }
}

#[test]
fn free_limit_point() {
    let p = lattice(3, 1, 1e-8, 1e-8, 1e-8);
    let prob = MorseProblem::lattice(p, part(&[0])).unwrap();
    let sp = solve(&prob);
    assert!((sp.xi[0] - PI / 5.0).abs() < 1e-6);
    let g = prob.gradient(&[PI / 5.0]);
    assert!(g[0].abs() < 1e-6);
}

#[test]
fn lattice_sector_solves_certify() {
    let p = lattice(3, 2, 0.5, 0.3, -0.4);
    let tol = Tolerances::default();
    let mut points = Vec::new();
    for lam in enumerate_sector(2, 3).states() {
        let prob = MorseProblem::lattice(p, lam.clone()).unwrap();
        let sp = solve(&prob);
        assert!(sp.iterations <= 30);
        assert!(sp.grad_norm <= tol.solver_tol);
        assert!(sp.in_chamber(), "{lam}: {:?}", sp.xi);
        assert!(prob.bae_residual(&sp.xi) <= 1e-10);
        assert!(prob.brackets().contain(&sp.xi), "{lam}: {:?}", sp.xi);
        points.push(sp);
    }
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            let d = a.xi.iter().zip(&b.xi).fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()));
            assert!(d > 1e-6);
            let w = casoratian_normalized(Complex::new(0.83, 0.29), &a.xi, &b.xi, p.q()).unwrap();
            assert!(w > 1e-8, "{} vs {}: {w}", a.lambda, b.lambda);
        }
    }
}

#[test]
fn negative_couplings_stay_in_chamber() {
    let p = lattice(4, 3, 0.95, -0.9, -0.85);
    for lam in enumerate_sector(3, 4).states() {
        let prob = MorseProblem::lattice(p, lam.clone()).unwrap();
        let sp = solve(&prob);
        assert!(sp.in_chamber() && prob.brackets().contain(&sp.xi), "{lam}: {:?}", sp.xi);
    }
}

#[test]
fn continuum_solves_certify() {
    let c = ContinuumParams::new(3, 0.7, 1.3, 0.4).unwrap();
    for lam in [[0, 0, 0], [1, 0, 0], [2, 2, 1], [5, 3, 0]] {
        let prob = MorseProblem::continuum(c, part(&lam)).unwrap();
        let sp = solve(&prob);
        assert!(sp.in_chamber());
        assert!(prob.bae_residual(&sp.xi) <= 1e-10);
        assert!(prob.brackets().contain(&sp.xi), "{lam:?}: {:?}", sp.xi);
    }
}

#[test]
fn strong_coupling_approaches_free_values() {
    let lam = part(&[1, 0]);
    let mut last = f64::INFINITY;
    for g in [10.0, 100.0, 1000.0] {
        let c = ContinuumParams::new(2, g, g, g).unwrap();
        let prob = MorseProblem::continuum(c, lam.clone()).unwrap();
        let sp = solve(&prob);
        let dev = (0..2).fold(0.0_f64, |m, j| m.max((sp.xi[j] - 2.0 * PI * prob.shifted(j)).abs()));
        assert!(dev < last);
        last = dev;
    }
    assert!(last < 2.0 * PI * 0.05);
}

#[test]
fn spectral_point_is_continuous_in_parameters() {
    let lam = part(&[2, 1]);
    let a = solve(&MorseProblem::lattice(lattice(3, 2, 0.5, 0.2, 0.1), lam.clone()).unwrap());
    let b = solve(&MorseProblem::lattice(lattice(3, 2, 0.5001, 0.2001, 0.0999), lam).unwrap());
    for j in 0..2 {
        assert!((a.xi[j] - b.xi[j]).abs() < 1e-3);
    }
}

#[test]
fn extended_precision_agrees() {
    use crate::ExtFloat;
    let p = lattice(3, 2, 0.5, 0.3, -0.4);
    let lam = part(&[3, 1]);
    let lo = solve(&MorseProblem::lattice(p, lam.clone()).unwrap());
    let hi = solve_spectral_point(&MorseProblem::lattice(p.cast::<ExtFloat>(), lam).unwrap(), &Tolerances::default())
        .unwrap();
    for j in 0..2 {
        assert!((lo.xi[j] - crate::Real::as_f64(hi.xi[j])).abs() < 1e-13);
    }
}

#[test]
fn rejects_labels_outside_sector() {
    assert!(MorseProblem::lattice(lattice(2, 2, 0.5, 0.0, 0.0), part(&[3, 0])).is_err());
    assert!(MorseProblem::lattice(lattice(2, 2, 0.5, 0.0, 0.0), part(&[1])).is_err());
}
