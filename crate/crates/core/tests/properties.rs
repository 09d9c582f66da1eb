use std::f64::consts::PI;

use num_complex::Complex;
use proptest::prelude::*;
use qboson_alcove::bethe::{solve_spectral_point, v_a, MorseProblem};
use qboson_alcove::continuum::{cell_center, floor_map, gram_continuum};
use qboson_alcove::fock::{apply_generator, enumerate_sector, inner_product, FockVector, Generator, Partition};
use qboson_alcove::hall_littlewood::{wave_by_branching, SpectralVariables};
use qboson_alcove::transfer::{operator_matrix, OperatorDescriptor};
use qboson_alcove::{ContinuumParams, ModelParams, SectorLimits, Tolerances, C64};

fn config() -> ProptestConfig {
    ProptestConfig { cases: 24, ..ProptestConfig::default() }
}

fn params() -> impl Strategy<Value = ModelParams<f64>> {
    (1usize..=3, 1usize..=3, 0.1f64..0.9, -0.9f64..0.9, -0.9f64..0.9)
        .prop_map(|(n, m, q, ap, am)| ModelParams::new(m, n, q, ap, am).unwrap())
}

fn vector(n: usize, m: usize, seed: u64) -> FockVector<f64> {
    let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut next = move || {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (s >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    };
    FockVector::from_fn(enumerate_sector(n, m), |_| Complex::new(next(), next()))
}

fn partition_in(n: usize, m: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..=m, n).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn annihilator_adjoint_is_creator(p in params(), site in 0usize..4, seed in any::<u64>()) {
        let (n, m) = (p.n(), p.m());
        let site = site.min(m);
        let f = vector(n + 1, m, seed);
        let g = vector(n, m, seed ^ 0x9e37);
        let lhs = inner_product(&apply_generator(Generator::Annihilate, site, &f, &p).unwrap(), &g, p.t()).unwrap();
        let rhs = inner_product(&f, &apply_generator(Generator::Create, site, &g, &p).unwrap(), p.t()).unwrap();
        prop_assert!(rel(lhs, rhs) < 1e-12);
    }

    #[test]
    fn q_boson_relation(p in params(), site in 0usize..4, seed in any::<u64>()) {
        let site = site.min(p.m());
        let f = vector(p.n(), p.m(), seed);
        let ab = apply_generator(Generator::Annihilate, site, &apply_generator(Generator::Create, site, &f, &p).unwrap(), &p).unwrap();
        let ba = apply_generator(Generator::Create, site, &apply_generator(Generator::Annihilate, site, &f, &p).unwrap(), &p).unwrap();
        let lhs = ab.sub(&ba.scale(Complex::new(p.t(), 0.0))).unwrap();
        let d = lhs.sub(&f).unwrap().max_abs();
        prop_assert!(d < 1e-12 * (1.0 + f.max_abs()), "{d}");
    }

    #[test]
    fn annihilator_is_bounded(p in params(), site in 0usize..4) {
        let site = site.min(p.m());
        let sector = enumerate_sector(p.n(), p.m());
        let op = operator_matrix(&OperatorDescriptor::Generator { kind: Generator::Annihilate, site }, &p, &sector, &SectorLimits::default()).unwrap();
        let t = p.t();
        let bound = 1.0 / (1.0 - t).sqrt();
        for j in 0..sector.len() {
            let e = FockVector::basis(sector.clone(), j);
            let img = op.apply(&e).unwrap();
            prop_assert!(img.norm(t) <= bound * e.norm(t) * (1.0 + 1e-12));
        }
    }

    #[test]
    fn number_operator_is_scalar(p in params(), seed in any::<u64>()) {
        let sector = enumerate_sector(p.n(), p.m());
        let op = operator_matrix(&OperatorDescriptor::Number, &p, &sector, &SectorLimits::default()).unwrap();
        let f = vector(p.n(), p.m(), seed);
        let expect = p.q().powi(p.m() as i32 + 1) * p.t().powi(p.n() as i32);
        let g = op.apply(&f).unwrap().sub(&f.scale(Complex::new(expect, 0.0))).unwrap();
        prop_assert!(g.max_abs() < 1e-13);
    }

    #[test]
    fn hamiltonian_is_self_adjoint(p in params()) {
        let sector = enumerate_sector(p.n(), p.m());
        let op = operator_matrix(&OperatorDescriptor::Hamiltonian, &p, &sector, &SectorLimits::default()).unwrap();
        prop_assert!(op.hermiticity_defect(p.t()).unwrap() < 1e-12);
    }

    #[test]
    fn transfer_is_hermitian_and_commuting(p in params(), u in 0.4f64..0.9, v in 1.1f64..1.8) {
        let sector = enumerate_sector(p.n(), p.m());
        let lim = SectorLimits::default();
        let mu = operator_matrix(&OperatorDescriptor::Transfer { u: Complex::new(u, 0.0) }, &p, &sector, &lim).unwrap();
        let mv = operator_matrix(&OperatorDescriptor::Transfer { u: Complex::new(v, 0.0) }, &p, &sector, &lim).unwrap();
        prop_assert!(mu.hermiticity_defect(p.t()).unwrap() < 1e-10);
        let c = mu.entries().commutator(mv.entries());
        prop_assert!(c.max_abs() <= 1e-10 * mu.entries().max_abs() * mv.entries().max_abs());
    }

    #[test]
    fn v_a_is_odd_and_quasi_periodic(theta in -10.0f64..10.0, a in -0.95f64..0.95) {
        prop_assert!((v_a(-theta, a) + v_a(theta, a)).abs() < 1e-12);
        prop_assert!((v_a(theta + 2.0 * PI, a) - v_a(theta, a) - 2.0 * PI).abs() < 1e-11);
    }

    #[test]
    fn lattice_points_are_certified((p, lam) in params().prop_flat_map(|p| (Just(p), partition_in(p.n(), p.m())))) {
        let prob = MorseProblem::lattice(p, lam).unwrap();
        let sp = solve_spectral_point(&prob, &Tolerances::default()).unwrap();
        prop_assert!(sp.in_chamber());
        prop_assert!(prob.brackets().contain(&sp.xi));
        prop_assert!(prob.bae_residual(&sp.xi) < 1e-10);
    }

    #[test]
    fn continuum_points_are_certified(lam in partition_in(2, 4), g in 0.2f64..5.0, gp in 0.2f64..5.0, gm in 0.2f64..5.0) {
        let cp = ContinuumParams::new(2, g, gp, gm).unwrap();
        let prob = MorseProblem::continuum(cp, lam).unwrap();
        let sp = solve_spectral_point(&prob, &Tolerances::default()).unwrap();
        prop_assert!(sp.in_chamber());
        prop_assert!(prob.brackets().contain(&sp.xi));
        prop_assert!(prob.bae_residual(&sp.xi) < 1e-10);
    }

    #[test]
    fn continuum_energy_grows_along_first_part(g in 0.2f64..5.0, gp in 0.2f64..5.0, gm in 0.2f64..5.0) {
        let cp = ContinuumParams::new(2, g, gp, gm).unwrap();
        let mut last = 0.0;
        for l1 in 1..=4 {
            let prob = MorseProblem::continuum(cp, Partition::new(vec![l1, 1]).unwrap()).unwrap();
            let e: f64 = solve_spectral_point(&prob, &Tolerances::default()).unwrap().xi.iter().map(|x| x * x).sum();
            prop_assert!(e > last);
            last = e;
        }
    }

    #[test]
    fn wave_has_hyperoctahedral_symmetry(
        p in params(),
        r in prop::collection::vec(0.8f64..1.2, 3),
        th in prop::collection::vec(0.2f64..2.9, 3),
        flip in 0usize..3,
    ) {
        let n = p.n();
        let v: Vec<C64> = (0..n).map(|j| Complex::from_polar(r[j], th[j] + 0.37 * j as f64)).collect();
        let base = wave_by_branching(&SpectralVariables::new(v.clone()).unwrap(), &p, 1e-9);
        prop_assume!(base.is_ok());
        let base = base.unwrap();
        let mut w = v.clone();
        w.reverse();
        w[flip.min(n - 1)] = w[flip.min(n - 1)].inv();
        let other = wave_by_branching(&SpectralVariables::new(w).unwrap(), &p, 1e-9);
        prop_assume!(other.is_ok());
        let d = base.sub(&other.unwrap()).unwrap().max_abs();
        prop_assert!(d <= 1e-9 * (1.0 + base.max_abs()), "{d}");
    }

    #[test]
    fn cell_centres_map_back(lam in partition_in(3, 6), m in 6usize..12) {
        let x: Vec<f64> = cell_center(&lam, m);
        prop_assert_eq!(floor_map(&x, m), Some(lam));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 6, ..ProptestConfig::default() })]

    #[test]
    fn continuum_gram_is_hermitian(g in 0.3f64..3.0, gp in 0.3f64..3.0, gm in 0.3f64..3.0) {
        let cp = ContinuumParams::new(2, g, gp, gm).unwrap();
        let lams: Vec<Partition> = [[0, 0], [1, 0], [2, 1]].iter().map(|l| Partition::new(l.to_vec()).unwrap()).collect();
        let gm = gram_continuum(&lams, &cp, &Tolerances::default()).unwrap();
        let scale = gm.max_abs();
        for i in 0..3 {
            for j in 0..3 {
                prop_assert!((gm.row(i)[j] - gm.row(j)[i].conj()).norm() <= 1e-10 * scale);
            }
        }
    }
}
