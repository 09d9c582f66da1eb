use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fock::Partition;
use crate::scalar::{cpowi, re, Cplx, Real};

/// Parameters `(t, a, â)` of the hyperoctahedral Hall-Littlewood polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HLParams<T: Real = f64> {
    pub t: T,
    pub a: T,
    pub a_hat: T,
}

impl<T: Real> HLParams<T> {
    /// `â = 0`.
    pub fn new(t: T, a: T) -> Self {
        Self { t, a, a_hat: T::zero() }
    }
}

fn guarded<T: Real>(d: Cplx<T>, floor: f64, name: impl FnOnce() -> String) -> Result<Cplx<T>> {
    let magnitude = d.norm().as_f64();
    if magnitude < floor {
        return Err(Error::Singular { factor: name(), magnitude });
    }
    Ok(d)
}

/// `C(w)` for the signed, permuted variables `w`.
fn c_function<T: Real>(w: &[Cplx<T>], hp: &HLParams<T>, floor: f64) -> Result<Cplx<T>> {
    let one = Cplx::<T>::one();
    let t = re(hp.t);
    let mut acc = one;
    for (j, &wj) in w.iter().enumerate() {
        let den = guarded(wj * wj - one, floor, || format!("z_{}^2 - 1", j + 1))?;
        acc = acc * (wj - hp.a) * (wj - hp.a_hat) / den;
        for (k, &wk) in w.iter().enumerate().skip(j + 1) {
            let prod = wj * wk;
            let ratio = wj / wk;
            let d1 = guarded(prod - one, floor, || format!("z_{} z_{} - 1", j + 1, k + 1))?;
            let d2 = guarded(ratio - one, floor, || format!("z_{} / z_{} - 1", j + 1, k + 1))?;
            acc = acc * (prod - t) / d1 * (ratio - t) / d2;
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

/// `P_λ(z;t,a,â) = Σ_{σ,ε} C(z^ε_σ)·Π (z^{ε_j}_{σ_j})^{λ_j}`.
pub fn hl_direct<T: Real>(lambda: &Partition, z: &[Cplx<T>], hp: &HLParams<T>, floor: f64) -> Result<Cplx<T>> {
    let n = z.len();
    if lambda.len() != n {
        return Err(Error::SectorMismatch(format!("{lambda} evaluated at {n} variables")));
    }
    if z.iter().any(|x| x.norm() == T::zero()) {
        return Err(Error::ZeroArgument);
    }
    let mut total = Complex::zero();
    let mut w = vec![Complex::zero(); n];
    for sigma in permutations(n) {
        for signs in 0u32..(1 << n) {
            for j in 0..n {
                let x = z[sigma[j]];
                w[j] = if signs >> j & 1 == 1 { x.inv() } else { x };
            }
            let mono = w.iter().zip(lambda.parts()).fold(Cplx::<T>::one(), |acc, (&x, &l)| acc * cpowi(x, l as i64));
            total = total + c_function(&w, hp, floor)? * mono;
        }
    }
    Ok(total)
}
