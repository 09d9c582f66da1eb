use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use num_complex::Complex;

use qboson_alcove::bethe::{solve_spectral_point, MorseProblem, SpectralPoint};
use qboson_alcove::continuum::{
    continuum_wave_sum, convergence_sweep, gram_continuum, robin_residual_of, scaled_inner, staircase_inner,
    sup_norm_estimate, Wall,
};
use qboson_alcove::fock::{enumerate_sector, sector_size, FockVector, Partition};
use qboson_alcove::hall_littlewood::{
    eigen_residuals, gram_discrete, hl_direct, max_correlation, pieri_residual, pieri_transfer_residual,
    wave_by_branching, wave_by_creation, HLParams, SpectralVariables,
};
use qboson_alcove::params::qfact;
use qboson_alcove::transfer::verify::default_samples;
use qboson_alcove::transfer::{verify_structure, StructureCheck};
use qboson_alcove::{ContinuumParams, ModelParams, Result, Tolerances, C64};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn part(v: &[usize]) -> Partition {
    Partition::new(v.to_vec()).expect("valid partition")
}

fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

fn sector_dimensions() -> Result<Outcome> {
    let mut bad = Vec::new();
    for n in 0..=6 {
        for m in 0..=6 {
            let expect = factorial(n + m) / (factorial(n) * factorial(m));
            let listed = enumerate_sector(n, m).len() as u128;
            if listed != expect || sector_size(n, m) as u128 != expect {
                bad.push((n, m));
            }
        }
    }
    Ok(outcome(bad.is_empty(), format!("49 sectors, mismatches {bad:?}")))
}

fn run_checks(checks: &[StructureCheck], sectors: &[(usize, usize)]) -> Result<Outcome> {
    let tol = Tolerances::default();
    let mut worst = 0.0_f64;
    let mut failed = Vec::new();
    for &(n, m) in sectors {
        let p = ModelParams::defaults(m, n);
        for &check in checks {
            let report = verify_structure(check, &p, &default_samples(), &tol)?;
            worst = worst.max(report.max_deviation());
            if !report.passed() {
                failed.push(format!("{}@({n},{m})", check.name()));
            }
        }
    }
    Ok(outcome(failed.is_empty(), format!("max deviation {worst:.2e}, failing {failed:?}")))
}

fn algebra_suite() -> Result<Outcome> {
    use StructureCheck::*;
    run_checks(
        &[
            FockAlgebra,
            RmatrixSymmetries,
            ReflectionEquations,
            YangBaxter,
            AdjointIdentities,
            ExchangeRelations,
            StripWeightIdentities,
            CreationOperator,
            TauExpansion,
        ],
        &[(1, 1), (2, 2)],
    )
}

fn transfer_structure() -> Result<Outcome> {
    run_checks(&[StructureCheck::TransferStructure, StructureCheck::TauExpansion], &[(2, 3)])
}

fn lattice_points(p: &ModelParams<f64>) -> Result<Vec<SpectralPoint<f64>>> {
    let tol = Tolerances::default();
    enumerate_sector(p.n(), p.m())
        .states()
        .iter()
        .map(|lam| solve_spectral_point(&MorseProblem::lattice(*p, lam.clone())?, &tol))
        .collect()
}

fn spectral_solves() -> Result<Outcome> {
    let p = ModelParams::defaults(3, 2);
    let mut ok = true;
    let (mut iters, mut bae) = (0, 0.0_f64);
    for sp in lattice_points(&p)? {
        let prob = MorseProblem::lattice(p, sp.lambda.clone())?;
        let r = prob.bae_residual(&sp.xi);
        iters = iters.max(sp.iterations);
        bae = bae.max(r);
        ok &= sp.iterations <= 30 && r <= 1e-10 && sp.in_chamber() && prob.brackets().contain(&sp.xi);
    }
    let free = ModelParams::from_t(3, 1, 1e-8, 1e-8, 1e-8)?;
    let sp = solve_spectral_point(&MorseProblem::lattice(free, part(&[0]))?, &Tolerances::default())?;
    let limit = (sp.xi[0] - std::f64::consts::PI / 5.0).abs();
    ok &= limit <= 1e-6;
    let cp = ContinuumParams::new(2, 1.0, 0.8, 1.5)?;
    let mut cbae = 0.0_f64;
    for lam in [[0, 0], [1, 0], [1, 1], [2, 0], [3, 2]] {
        let prob = MorseProblem::continuum(cp, part(&lam))?;
        let sp = solve_spectral_point(&prob, &Tolerances::default())?;
        let r = prob.bae_residual(&sp.xi);
        cbae = cbae.max(r);
        ok &= r <= 1e-10 && sp.in_chamber() && prob.brackets().contain(&sp.xi);
    }
    Ok(outcome(
        ok,
        format!("max iterations {iters}, lattice BAE {bae:.2e}, limit gap {limit:.2e}, continuum BAE {cbae:.2e}"),
    ))
}

fn eigen_equations() -> Result<Outcome> {
    let p = ModelParams::defaults(3, 2);
    let us = [Complex::new(0.6, 0.0), Complex::new(1.3, 0.0)];
    let (mut tr, mut h) = (0.0_f64, 0.0_f64);
    for sp in lattice_points(&p)? {
        let r = eigen_residuals(&sp, &p, &us, Tolerances::default().singularity_floor)?;
        tr = tr.max(r.transfer);
        h = h.max(r.hamiltonian);
    }
    Ok(outcome(tr <= 1e-8 && h <= 1e-10, format!("transfer {tr:.2e}, hamiltonian {h:.2e}")))
}

fn generic_variables(n: usize, seed: usize) -> Result<SpectralVariables<f64>> {
    let v = (0..n)
        .map(|j| {
            let k = (seed * 7 + j * 3) as f64;
            Complex::from_polar(0.85 + 0.07 * (k * 1.3).sin().abs(), 0.4 + 0.91 * k)
        })
        .collect();
    SpectralVariables::new(v)
}

fn wave_equality() -> Result<Outcome> {
    let floor = Tolerances::default().singularity_floor;
    let (mut worst, mut origin) = (0.0_f64, 0.0_f64);
    for (n, m) in [(2, 3), (3, 3)] {
        let p = ModelParams::defaults(m, n);
        let hp = HLParams::new(p.t(), p.a_minus());
        for seed in 0..5 {
            let v = generic_variables(n, seed)?;
            let branch = wave_by_branching(&v, &p, floor)?;
            let create = wave_by_creation(&v, &p, floor)?;
            let z = v.squares();
            let mut direct = Vec::new();
            for lam in branch.sector().states() {
                direct.push(hl_direct(lam, &z, &hp, floor)?);
            }
            let direct = FockVector::new(branch.sector().clone(), direct)?;
            let scale = branch.max_abs();
            worst = worst.max(branch.sub(&create)?.max_abs() / scale).max(branch.sub(&direct)?.max_abs() / scale);
            let o = branch.value(&Partition::zeros(n)) - qfact(p.t(), n);
            origin = origin.max(o.norm());
        }
    }
    Ok(outcome(worst <= 1e-10 && origin <= 1e-12, format!("relative gap {worst:.2e}, origin error {origin:.2e}")))
}

fn discrete_orthogonality() -> Result<Outcome> {
    let p = ModelParams::defaults(3, 2);
    let floor = Tolerances::default().singularity_floor;
    let pts = lattice_points(&p)?;
    let g = gram_discrete(&pts, &p, floor)?;
    let corr = max_correlation(&g);
    let (mut h, mut tr) = (0.0_f64, 0.0_f64);
    for sp in &pts {
        for nu in enumerate_sector(2, 3).states() {
            h = h.max(pieri_residual(sp, nu, &p, floor)?.relative());
            tr = tr.max(pieri_transfer_residual(sp, nu, Complex::new(0.6, 0.0), &p, floor)?.relative());
        }
    }
    Ok(outcome(
        g.rows() == 10 && corr <= 1e-8 && h <= 1e-9 && tr <= 1e-9,
        format!("{}x{} Gram correlation {corr:.2e}, Pieri {h:.2e}, transfer Pieri {tr:.2e}", g.rows(), g.cols()),
    ))
}

fn quad_triangle(f: impl Fn(f64, f64) -> C64) -> C64 {
    let rule = GaussLegendre::new(NonZeroUsize::new(64).expect("nonzero"));
    let re = rule.integrate(0.0, 0.5, |a| rule.integrate(0.0, a, |b| f(a, b).re));
    let im = rule.integrate(0.0, 0.5, |a| rule.integrate(0.0, a, |b| f(a, b).im));
    Complex::new(re, im)
}

fn continuum_orthogonality() -> Result<Outcome> {
    let cp = ContinuumParams::new(2, 1.0, 1.0, 1.0)?;
    let tol = Tolerances::default();
    let lams = [part(&[0, 0]), part(&[1, 0]), part(&[1, 1]), part(&[2, 0])];
    let g = gram_continuum(&lams, &cp, &tol)?;
    let corr = max_correlation(&g);
    let mut waves = Vec::new();
    for lam in &lams {
        let sp = solve_spectral_point(&MorseProblem::continuum(cp, lam.clone())?, &tol)?;
        waves.push(continuum_wave_sum(&sp.xi, &cp, tol.singularity_floor)?);
    }
    let mut quad_gap = 0.0_f64;
    for i in 0..4 {
        for j in 0..4 {
            let q = quad_triangle(|a, b| waves[i].eval(&[a, b]) * waves[j].eval(&[a, b]).conj());
            let scale = (g.row(i)[i].re * g.row(j)[j].re).sqrt();
            quad_gap = quad_gap.max((q - g.row(i)[j]).norm() / scale);
        }
    }
    Ok(outcome(corr <= 1e-6 && quad_gap <= 1e-6, format!("correlation {corr:.2e}, quadrature gap {quad_gap:.2e}")))
}

fn robin_certificates() -> Result<Outcome> {
    let tol = Tolerances::default();
    let floor = tol.singularity_floor;
    let cp = ContinuumParams::new(2, 1.0, 0.9, 1.6)?;
    let mut plain = 0.0_f64;
    for xi in [[7.3, 2.1], [11.0, 4.4], [3.3, 0.9]] {
        let psi = continuum_wave_sum(&xi, &cp, floor)?;
        let sup = sup_norm_estimate(&psi, 16);
        for s in [[0.41, 0.2], [0.27, 0.05]] {
            for wall in [Wall::Pair(0), Wall::Origin] {
                plain = plain.max(robin_residual_of(&psi, &cp, wall, &s)? / sup);
            }
        }
    }
    let (mut affine, mut control) = (0.0_f64, f64::INFINITY);
    for lam in [[0, 0], [1, 0], [2, 1]] {
        let sp = solve_spectral_point(&MorseProblem::continuum(cp, part(&lam))?, &tol)?;
        let psi = continuum_wave_sum(&sp.xi, &cp, floor)?;
        let sup = sup_norm_estimate(&psi, 16);
        affine = affine.max(robin_residual_of(&psi, &cp, Wall::Affine, &[0.5, 0.21])? / sup);
        let off: Vec<f64> = sp.xi.iter().map(|x| x + 0.1).collect();
        let bad = continuum_wave_sum(&off, &cp, floor)?;
        let sup = sup_norm_estimate(&bad, 16);
        control = control.min(robin_residual_of(&bad, &cp, Wall::Affine, &[0.5, 0.21])? / sup);
    }
    Ok(outcome(
        plain <= 1e-10 && affine <= 1e-8 && control >= 1e-3,
        format!("linear walls {plain:.2e}, affine wall {affine:.2e}, perturbed control {control:.2e}"),
    ))
}

fn continuum_limit() -> Result<Outcome> {
    let cp = ContinuumParams::new(1, 1.0, 1.0, 1.0)?;
    let tol = Tolerances::default();
    let mut ok = true;
    let mut parts = Vec::new();
    for lam in [[0], [1]] {
        let rep = convergence_sweep(&part(&lam), &cp, &[8, 16, 32, 64], &[], &tol)?;
        let min_ratio = rep.xi_ratios().into_iter().fold(f64::INFINITY, f64::min);
        let last = rep.rows.last().map_or(f64::NAN, |r| r.xi_deviation);
        ok &= min_ratio >= 1.5 && last < 0.02;
        parts.push(format!("λ={lam:?}: min ratio {min_ratio:.2}, final {last:.3e}"));
    }
    let p = ModelParams::from_t(5, 2, 0.6, 0.3, -0.2)?;
    let sector = enumerate_sector(2, 5);
    let f = FockVector::from_fn(sector.clone(), |l| Complex::new(1.0 + l.parts()[0] as f64, -(l.parts()[1] as f64)));
    let g = FockVector::from_fn(sector, |l| Complex::new(0.5, (l.size() as f64).sin()));
    let lhs = staircase_inner(&f, &g, &p);
    let rhs = scaled_inner(&f, &g, &p)?;
    let iso = (lhs - rhs).norm() / rhs.norm();
    ok &= iso <= 1e-12;
    parts.push(format!("isometry {iso:.2e}"));
    Ok(outcome(ok, parts.join("; ")))
}

fn main() {
    let criteria: [(&str, fn() -> Result<Outcome>); 10] = [
        ("sector dimensions", sector_dimensions),
        ("algebra suite", algebra_suite),
        ("transfer operator structure", transfer_structure),
        ("spectral solves", spectral_solves),
        ("eigenfunction residuals", eigen_equations),
        ("wave function constructions agree", wave_equality),
        ("discrete orthogonality and Pieri", discrete_orthogonality),
        ("continuum orthogonality", continuum_orthogonality),
        ("Robin boundary certificates", robin_certificates),
        ("continuum limit", continuum_limit),
    ];
    let mut passed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run().unwrap_or_else(|e| outcome(false, format!("error: {e}")));
        if o.pass {
            passed += 1;
        }
        println!("{} {:>2} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!("{passed}/{} criteria passed", criteria.len());
}
