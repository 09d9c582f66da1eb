//! Parameter records, tolerances and the Laurent helpers `s`, `c`, `e`, `f`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{re, Cplx, Real};

/// Lattice couplings of the open-end q-boson chain on sites `0..=m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams<T: Real = f64> {
    m: usize,
    n: usize,
    q: T,
    t: T,
    a_plus: T,
    a_minus: T,
}

impl<T: Real> ModelParams<T> {
    /// Validates and builds a parameter record; `t` is set to `q²`.
    pub fn new(m: usize, n: usize, q: T, a_plus: T, a_minus: T) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("particle count n must be at least 1".into()));
        }
        if !(q > T::zero() && q < T::one()) {
            return Err(Error::InvalidParams(format!("q = {q} must lie in (0, 1)")));
        }
        for (name, a) in [("a_plus", a_plus), ("a_minus", a_minus)] {
            if !(a > -T::one() && a < T::one()) {
                return Err(Error::InvalidParams(format!("{name} = {a} must lie in (-1, 1)")));
            }
        }
        Ok(Self { m, n, q, t: q * q, a_plus, a_minus })
    }

    /// Builds the record from `t` instead of `q`, with `q = √t`.
    pub fn from_t(m: usize, n: usize, t: T, a_plus: T, a_minus: T) -> Result<Self> {
        if !(t > T::zero() && t < T::one()) {
            return Err(Error::InvalidParams(format!("t = {t} must lie in (0, 1)")));
        }
        Self::new(m, n, t.sqrt(), a_plus, a_minus)
    }

    /// Default verification couplings `q = 0.6`, `a₊ = 0.3`, `a₋ = −0.4`.
    pub fn defaults(m: usize, n: usize) -> Self {
        Self::new(m, n, T::lit(0.6), T::lit(0.3), T::lit(-0.4)).expect("default couplings are valid")
    }

    /// Same couplings on a different sector.
    pub fn with_sector(&self, n: usize, m: usize) -> Result<Self> {
        Self::new(m, n, self.q, self.a_plus, self.a_minus)
    }

    /// Same couplings with different boundary parameters.
    pub fn with_boundary(&self, a_plus: T, a_minus: T) -> Result<Self> {
        Self::new(self.m, self.n, self.q, a_plus, a_minus)
    }

    pub fn m(&self) -> usize {
        self.m
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn q(&self) -> T {
        self.q
    }
    pub fn t(&self) -> T {
        self.t
    }
    pub fn a_plus(&self) -> T {
        self.a_plus
    }
    pub fn a_minus(&self) -> T {
        self.a_minus
    }

    /// Converts the record to another scalar field.
    pub fn cast<S: Real>(&self) -> ModelParams<S> {
        ModelParams::new(
            self.m,
            self.n,
            S::lit(self.q.as_f64()),
            S::lit(self.a_plus.as_f64()),
            S::lit(self.a_minus.as_f64()),
        )
        .expect("valid parameters stay valid")
    }

    /// The q-integer `[k] = (1 − t^k)/(1 − t)`.
    pub fn qint(&self, k: usize) -> T {
        qint(self.t, k)
    }

    /// The q-factorial `[k]! = [1][2]⋯[k]`.
    pub fn qfact(&self, k: usize) -> T {
        qfact(self.t, k)
    }
}

/// The q-integer `[k] = 1 + t + … + t^{k−1}`.
pub fn qint<T: Real>(t: T, k: usize) -> T {
    let mut acc = T::zero();
    let mut p = T::one();
    for _ in 0..k {
        acc = acc + p;
        p = p * t;
    }
    acc
}

/// The q-factorial `[k]!`, with `[0]! = 1`.
pub fn qfact<T: Real>(t: T, k: usize) -> T {
    (1..=k).fold(T::one(), |acc, j| acc * qint(t, j))
}

/// Couplings of the continuum eigenvalue problem on the alcove.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuumParams<T: Real = f64> {
    n: usize,
    g: T,
    g_plus: T,
    g_minus: T,
}

impl<T: Real> ContinuumParams<T> {
    pub fn new(n: usize, g: T, g_plus: T, g_minus: T) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("particle count n must be at least 1".into()));
        }
        for (name, v) in [("g", g), ("g_plus", g_plus), ("g_minus", g_minus)] {
            if !(v > T::zero() && v.is_finite()) {
                return Err(Error::InvalidParams(format!("{name} = {v} must be positive")));
            }
        }
        Ok(Self { n, g, g_plus, g_minus })
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn g(&self) -> T {
        self.g
    }
    pub fn g_plus(&self) -> T {
        self.g_plus
    }
    pub fn g_minus(&self) -> T {
        self.g_minus
    }

    /// Lattice couplings `t = e^{−g/2m}`, `a± = e^{−g±/2m}` on `Λ_{n,m}`.
    pub fn lattice(&self, m: usize) -> Result<ModelParams<T>> {
        let two_m = T::count(2 * m);
        let t = (-self.g / two_m).exp();
        ModelParams::from_t(m, self.n, t, (-self.g_plus / two_m).exp(), (-self.g_minus / two_m).exp())
    }
}

/// Numerical thresholds used across the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative tolerance for operator identities.
    pub identity_tol: f64,
    /// Max-norm gradient threshold of the Newton solver.
    pub solver_tol: f64,
    /// Smallest admissible magnitude of a denominator.
    pub singularity_floor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { identity_tol: 1e-9, solver_tol: 1e-12, singularity_floor: 1e-6 }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("identity_tol", self.identity_tol),
            ("solver_tol", self.solver_tol),
            ("singularity_floor", self.singularity_floor),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParams(format!("{name} = {v} must be positive")));
            }
        }
        Ok(())
    }
}

/// Size caps for dense operator matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SectorLimits {
    pub max_n: usize,
    pub max_m: usize,
    pub max_dim: usize,
}

impl Default for SectorLimits {
    fn default() -> Self {
        Self { max_n: 6, max_m: 8, max_dim: 5000 }
    }
}

impl SectorLimits {
    pub fn check(&self, n: usize, m: usize) -> Result<()> {
        let size = crate::fock::sector_size(n, m);
        if n > self.max_n || m > self.max_m || size > self.max_dim {
            return Err(Error::SectorTooLarge { n, m, size });
        }
        Ok(())
    }
}

fn nonzero<T: Real>(u: Cplx<T>) -> Result<Cplx<T>> {
    if u.is_zero() {
        Err(Error::ZeroArgument)
    } else {
        Ok(u)
    }
}

/// `s(u) = u − u⁻¹`.
pub fn laurent_s<T: Real>(u: Cplx<T>) -> Result<Cplx<T>> {
    nonzero(u).map(s)
}

/// `c(u) = u + u⁻¹`.
pub fn laurent_c<T: Real>(u: Cplx<T>) -> Result<Cplx<T>> {
    nonzero(u).map(c)
}

/// `e(u; a) = a·u − u⁻¹`.
pub fn laurent_e<T: Real>(u: Cplx<T>, a: T) -> Result<Cplx<T>> {
    nonzero(u).map(|u| e(u, a))
}

/// `f(u; a) = e(q⁻¹u⁻¹; a)`.
pub fn laurent_f<T: Real>(u: Cplx<T>, a: T, q: T) -> Result<Cplx<T>> {
    nonzero(u).map(|u| f(u, a, q))
}

#[inline]
pub(crate) fn s<T: Real>(u: Cplx<T>) -> Cplx<T> {
    u - u.inv()
}

#[inline]
pub(crate) fn c<T: Real>(u: Cplx<T>) -> Cplx<T> {
    u + u.inv()
}

#[inline]
pub(crate) fn e<T: Real>(u: Cplx<T>, a: T) -> Cplx<T> {
    u * a - u.inv()
}

#[inline]
pub(crate) fn f<T: Real>(u: Cplx<T>, a: T, q: T) -> Cplx<T> {
    e((u * q).inv(), a)
}

#[inline]
pub(crate) fn sr<T: Real>(x: T) -> Cplx<T> {
    s(re(x))
}
