use crate::error::{Error, Result};
use crate::fock::Partition;
use crate::params::{ContinuumParams, ModelParams};
use crate::scalar::Real;

/// Which Bethe system a problem belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    Lattice,
    Continuum,
}

/// Couplings of either Bethe system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Couplings<T: Real> {
    Lattice(ModelParams<T>),
    Continuum(ContinuumParams<T>),
}

/// Strictly convex Morse function `V_λ` whose critical point is the spectral point.
#[derive(Debug, Clone, PartialEq)]
pub struct MorseProblem<T: Real = f64> {
    couplings: Couplings<T>,
    lambda: Partition,
    rho: Vec<usize>,
}

fn staircase(n: usize) -> Vec<usize> {
    (1..=n).map(|j| n + 1 - j).collect()
}

impl<T: Real> MorseProblem<T> {
    /// Lattice problem on `Λ_{n,m}`.
    pub fn lattice(p: ModelParams<T>, lambda: Partition) -> Result<Self> {
        if lambda.len() != p.n() || !lambda.fits(p.m()) {
            return Err(Error::SectorMismatch(format!("{lambda} is not in Λ_{{{},{}}}", p.n(), p.m())));
        }
        let rho = staircase(p.n());
        Ok(Self { couplings: Couplings::Lattice(p), lambda, rho })
    }

    /// Continuum problem, any partition with `n` parts.
    pub fn continuum(c: ContinuumParams<T>, lambda: Partition) -> Result<Self> {
        if lambda.len() != c.n() {
            return Err(Error::SectorMismatch(format!("{lambda} does not have {} parts", c.n())));
        }
        let rho = staircase(c.n());
        Ok(Self { couplings: Couplings::Continuum(c), lambda, rho })
    }

    pub fn couplings(&self) -> &Couplings<T> {
        &self.couplings
    }

    pub fn flavor(&self) -> Flavor {
        match self.couplings {
            Couplings::Lattice(_) => Flavor::Lattice,
            Couplings::Continuum(_) => Flavor::Continuum,
        }
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    /// `ρⱼ = n + 1 − j`.
    pub fn rho(&self) -> &[usize] {
        &self.rho
    }

    pub fn n(&self) -> usize {
        self.rho.len()
    }

    /// `ρⱼ + λⱼ`.
    pub fn shifted(&self, j: usize) -> T {
        T::count(self.rho[j] + self.lambda.parts()[j])
    }

    /// `∇V_λ(ξ)`.
    pub fn gradient(&self, xi: &[T]) -> Vec<T> {
        let n = self.n();
        let two_pi = T::TAU();
        (0..n)
            .map(|j| {
                let x = xi[j];
                let target = two_pi * self.shifted(j);
                match &self.couplings {
                    Couplings::Lattice(p) => {
                        let mut acc = T::count(2 * (p.m() + 1)) * x + v_a(x, p.a_plus()) + v_a(x, p.a_minus());
                        for k in (0..n).filter(|&k| k != j) {
                            acc = acc + v_a(xi[k] + x, p.t()) - v_a(xi[k] - x, p.t());
                        }
                        acc - target
                    }
                    Couplings::Continuum(c) => {
                        let two = T::lit(2.0);
                        let mut acc = x + two * (x / c.g_plus()).atan() + two * (x / c.g_minus()).atan();
                        for k in (0..n).filter(|&k| k != j) {
                            acc = acc + two * (((xi[k] + x) / c.g()).atan() - ((xi[k] - x) / c.g()).atan());
                        }
                        acc - target
                    }
                }
            })
            .collect()
    }

    /// Row-major Hessian of `V_λ`.
    pub fn hessian(&self, xi: &[T]) -> Vec<T> {
        let n = self.n();
        let (base, edge_p, edge_m, pair): (T, Box<dyn Fn(T) -> T>, Box<dyn Fn(T) -> T>, Box<dyn Fn(T) -> T>) =
            match self.couplings {
                Couplings::Lattice(p) => (
                    T::count(2 * (p.m() + 1)),
                    Box::new(move |x| dv_a(x, p.a_plus())),
                    Box::new(move |x| dv_a(x, p.a_minus())),
                    Box::new(move |x| dv_a(x, p.t())),
                ),
                Couplings::Continuum(c) => (
                    T::one(),
                    Box::new(move |x| datan(x, c.g_plus())),
                    Box::new(move |x| datan(x, c.g_minus())),
                    Box::new(move |x| datan(x, c.g())),
                ),
            };
        let mut h = vec![T::zero(); n * n];
        for j in 0..n {
            let mut d = base + edge_p(xi[j]) + edge_m(xi[j]);
            for l in (0..n).filter(|&l| l != j) {
                d = d + pair(xi[j] + xi[l]) + pair(xi[j] - xi[l]);
                h[j * n + l] = pair(xi[j] + xi[l]) - pair(xi[j] - xi[l]);
            }
            h[j * n + j] = d;
        }
        h
    }

    /// Newton starting point.
    pub fn initial_point(&self) -> Vec<T> {
        let n = self.n();
        match &self.couplings {
            Couplings::Lattice(p) => {
                let den = T::count(p.m() + n + 1);
                (0..n).map(|j| T::PI() * self.shifted(j) / den).collect()
            }
            Couplings::Continuum(c) => {
                let kappa = continuum_kappa(c);
                (0..n)
                    .map(|j| {
                        let hi = T::TAU() * self.shifted(j);
                        (hi / (T::one() + kappa) + hi) / T::lit(2.0)
                    })
                    .collect()
            }
        }
    }

    /// Lower and upper estimates for `ξⱼ` and for the gaps `ξⱼ − ξₖ`.
    pub fn brackets(&self) -> Brackets<T> {
        let n = self.n();
        let (lo_scale, hi_scale) = match &self.couplings {
            Couplings::Lattice(p) => {
                let (kp, km) = lattice_kappa(p);
                let m1 = T::count(p.m() + 1);
                (T::PI() / (m1 + km), T::PI() / (m1 + kp))
            }
            Couplings::Continuum(c) => (T::TAU() / (T::one() + continuum_kappa(c)), T::TAU()),
        };
        let mut moments = Vec::with_capacity(n);
        for j in 0..n {
            let s = self.shifted(j);
            moments.push((lo_scale * s, hi_scale * s));
        }
        let mut gaps = Vec::new();
        for j in 0..n {
            for k in j + 1..n {
                let s = self.shifted(j) - self.shifted(k);
                gaps.push((j, k, lo_scale * s, hi_scale * s));
            }
        }
        Brackets { moments, gaps }
    }

    /// Largest deviation from the exponentiated Bethe equations at `ξ`.
    pub fn bae_residual(&self, xi: &[T]) -> T {
        super::bae::residual(self, xi)
    }
}

/// Open intervals the spectral point must lie in.
#[derive(Debug, Clone, PartialEq)]
pub struct Brackets<T> {
    /// `(lower, upper)` for each `ξⱼ`.
    pub moments: Vec<(T, T)>,
    /// `(j, k, lower, upper)` for each `ξⱼ − ξₖ`, `j < k`.
    pub gaps: Vec<(usize, usize, T, T)>,
}

impl<T: Real> Brackets<T> {
    /// Every estimate holds strictly at `ξ`.
    pub fn contain(&self, xi: &[T]) -> bool {
        self.moments.iter().zip(xi).all(|(&(lo, hi), &x)| lo < x && x < hi)
            && self.gaps.iter().all(|&(j, k, lo, hi)| {
                let d = xi[j] - xi[k];
                lo < d && d < hi
            })
    }
}

/// `κ₊, κ₋` of the lattice estimates.
pub fn lattice_kappa<T: Real>(p: &ModelParams<T>) -> (T, T) {
    let one = T::one();
    let half = T::lit(0.5);
    let term = |a: T, sign: T| (one - a * a) / ((one + sign * a.abs()) * (one + sign * a.abs()));
    let k = |sign: T| {
        half * (term(p.a_plus(), sign) + term(p.a_minus(), sign)) + T::count(p.n() - 1) * term(p.t(), sign)
    };
    (k(one), k(-one))
}

/// `κ = 2(g₊⁻¹ + g₋⁻¹ + 2(n−1)g⁻¹)`.
pub fn continuum_kappa<T: Real>(c: &ContinuumParams<T>) -> T {
    let two = T::lit(2.0);
    two * (c.g_plus().recip() + c.g_minus().recip() + two * T::count(c.n() - 1) / c.g())
}

/// `v_a(θ) = 2 arctan(((1+a)/(1−a)) tan(θ/2))`, continued by `v_a(θ+2π) = v_a(θ) + 2π`.
pub fn v_a<T: Real>(theta: T, a: T) -> T {
    let two_pi = T::TAU();
    let k = (theta / two_pi).round();
    let r = theta - k * two_pi;
    let (s, c) = (r / T::lit(2.0)).sin_cos();
    T::lit(2.0) * ((T::one() + a) * s).atan2((T::one() - a) * c) + k * two_pi
}

/// `v′_a(θ) = (1−a²)/(1 − 2a cos θ + a²)`.
pub fn dv_a<T: Real>(theta: T, a: T) -> T {
    (T::one() - a * a) / (T::one() - T::lit(2.0) * a * theta.cos() + a * a)
}

/// Derivative of `2 arctan(x/g)`.
fn datan<T: Real>(x: T, g: T) -> T {
    T::lit(2.0) * g / (g * g + x * x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn v_a_basic_values() {
        assert_eq!(v_a(0.0, 0.4), 0.0);
        for th in [-2.0_f64, -0.3, 0.7, 2.9, 5.0] {
            assert!((v_a(th, 0.0) - th).abs() < 1e-14);
        }
        assert!((v_a(3.0 * PI, 0.6) - 3.0 * PI).abs() < 1e-12);
        assert!((v_a(PI, -0.7) - PI).abs() < 1e-12);
        assert!((v_a(-PI, -0.7) + PI).abs() < 1e-12);
    }

    #[test]
    fn v_a_continuous_across_pi() {
        for a in [-0.9, -0.2, 0.5, 0.95] {
            for k in -2..=2 {
                let c = PI + 2.0 * PI * k as f64;
                let jump = v_a(c + 1e-9, a) - v_a(c - 1e-9, a);
                assert!(jump.abs() < 1e-6, "a={a} k={k} jump={jump}");
            }
        }
    }

    #[test]
    fn v_a_matches_principal_formula() {
        for a in [-0.5, 0.3, 0.8] {
            for th in [-3.0, -1.0, 0.4, 2.5] {
                let f = 2.0 * (((1.0 + a) / (1.0 - a)) * (th / 2.0_f64).tan()).atan();
                assert!((v_a(th, a) - f).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn v_a_is_odd() {
        for th in [0.1_f64, 1.7, 4.4, 9.0] {
            assert!((v_a(th, 0.37) + v_a(-th, 0.37)).abs() < 1e-13);
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        for a in [-0.6, 0.2, 0.9] {
            for th in [-2.0_f64, 0.5, 3.0] {
                let h = 1e-6;
                let fd = (v_a(th + h, a) - v_a(th - h, a)) / (2.0 * h);
                assert!((fd - dv_a(th, a)).abs() < 1e-6 * dv_a(th, a).abs().max(1.0));
            }
        }
    }
}
