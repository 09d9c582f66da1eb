//! Bethe Ansatz eigenvalues of the boundary transfer operator and the
//! Hamiltonian.

use num_complex::Complex;
use num_traits::One;

use crate::error::{Error, Result};
use crate::params::{e, s, ModelParams};
use crate::scalar::{cis, cpowi, Cplx, Real};

fn guard<T: Real>(value: Cplx<T>, floor: f64, factor: impl FnOnce() -> String) -> Result<Cplx<T>> {
    let magnitude = value.norm().as_f64();
    if magnitude < floor {
        Err(Error::Singular { factor: factor(), magnitude })
    } else {
        Ok(value)
    }
}

fn half<T: Real>(w: Cplx<T>, zs: &[Cplx<T>], p: &ModelParams<T>, floor: f64) -> Result<Cplx<T>> {
    let one = Cplx::<T>::one();
    let (t, w2) = (p.t(), w * w);
    let w4 = w2 * w2;
    let mut acc = cpowi(w, -2 * (p.m() as i64 + 2)) * (one - w4 / t) / guard(one - w4, floor, || "1 − u⁴".into())?;
    acc = acc * (one - w2 * p.a_plus()) * (one - w2 * p.a_minus());
    for (j, &z) in zs.iter().enumerate() {
        let num = (one - w2 * z * t) * (one - w2 / z * t);
        let d1 = guard(one - w2 * z, floor, || format!("1 − u²e^(iξ_{})", j + 1))?;
        let d2 = guard(one - w2 / z, floor, || format!("1 − u²e^(−iξ_{})", j + 1))?;
        acc = acc * num / (d1 * d2);
    }
    Ok(acc)
}

/// `(E^{(n,m)}(u;ξ), E^{(n)}(ξ))`: transfer-operator and Hamiltonian
/// eigenvalues at the point `ξ`. The particle number is `ξ.len()`.
///
/// Fails when `u` lies within `floor` of a pole.
pub fn bethe_eigenvalues<T: Real>(u: Cplx<T>, xi: &[T], p: &ModelParams<T>, floor: f64) -> Result<(Cplx<T>, T)> {
    if u.norm() == T::zero() {
        return Err(Error::ZeroArgument);
    }
    let zs: Vec<Cplx<T>> = xi.iter().map(|&x| cis(x)).collect();
    let pre = p.q().powi(-(p.m() as i32)) * p.t().powi(-(xi.len() as i32));
    let value = (half(u, &zs, p, floor)? + half(u.inv(), &zs, p, floor)?) * pre;
    let energy = xi.iter().fold(T::zero(), |acc, &x| acc + T::lit(2.0) * x.cos());
    Ok((value, energy))
}

/// `E_{n,m}(u;v)` for arbitrary nonzero spectral variables `v`, together
/// with `E_n(v) = Σ v_j² + v_j⁻²`.
pub fn eigenvalue_from_variables<T: Real>(u: Cplx<T>, v: &[Cplx<T>], p: &ModelParams<T>, floor: f64) -> Result<(Cplx<T>, Cplx<T>)> {
    let q = p.q();
    let term = |w: Cplx<T>| -> Result<Cplx<T>> {
        let w2 = w * w;
        let mut acc = cpowi(w, -2 * (p.m() as i64 + 1)) * s(w2 / q) / guard(s(w2), floor, || "s(u²)".into())?;
        acc = acc * e(w, p.a_plus()) * e(w, p.a_minus());
        for (j, &vj) in v.iter().enumerate() {
            let d = guard(s(w * vj) * s(w / vj), floor, || format!("s(u v_{0}) s(u / v_{0})", j + 1))?;
            acc = acc * s(w * vj * q) * s(w / vj * q) / d;
        }
        Ok(acc)
    };
    let value = (term(u)? + term(u.inv())?) * q.powi(-(p.m() as i32) - 1);
    let energy = v.iter().fold(Complex::new(T::zero(), T::zero()), |acc, &vj| acc + vj * vj + (vj * vj).inv());
    Ok((value, energy))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::re;
    use crate::fock::FockVector;
    use crate::transfer::apply_transfer;

    fn params(m: usize, n: usize) -> ModelParams<f64> {
        ModelParams::new(m, n, 0.6, 0.3, -0.4).unwrap()
    }

    #[test]
    fn zero_point_energy() {
        let (_, en) = bethe_eigenvalues(re(0.7), &[0.0, 0.0, 0.0], &params(3, 3), 1e-6).unwrap();
        assert_eq!(en, 6.0);
    }

    #[test]
    fn pole_is_reported() {
        let err = bethe_eigenvalues(re(1.0), &[0.5], &params(2, 1), 1e-6).unwrap_err();
        assert!(matches!(err, Error::Singular { ref factor, .. } if factor == "1 − u⁴"));
        let u = cis(-0.25);
        let err = bethe_eigenvalues(u, &[0.5], &params(2, 1), 1e-6).unwrap_err();
        assert!(matches!(err, Error::Singular { ref factor, .. } if factor.contains("ξ_1")));
    }

    #[test]
    fn vacuum_eigenvalue_matches_transfer() {
        for m in 0..4 {
            let p = params(m, 1);
            let u = re(0.7);
            let vac = FockVector::vacuum(m);
            let img = apply_transfer(u, &vac, &p).unwrap();
            let (ev, _) = bethe_eigenvalues(u, &[], &p, 1e-6).unwrap();
            assert!((img.amplitudes()[0] - ev).norm() < 1e-10 * ev.norm(), "m {m}");
        }
    }

    #[test]
    fn both_forms_agree() {
        let p = params(3, 2);
        let xi = [1.1, 0.4];
        let v: Vec<Cplx<f64>> = xi.iter().map(|&x| cis(x / 2.0)).collect();
        for u in [re(0.6), re(1.3), Complex::new(0.8, 0.3)] {
            let (a, ea) = bethe_eigenvalues(u, &xi, &p, 1e-6).unwrap();
            let (b, eb) = eigenvalue_from_variables(u, &v, &p, 1e-6).unwrap();
            assert!((a - b).norm() < 1e-10 * a.norm(), "{a} vs {b}");
            assert!((eb - re(ea)).norm() < 1e-12);
        }
    }

    #[test]
    fn leading_term() {
        let p = params(2, 2);
        let xi = [0.9, 0.3];
        let u = re(1e-3);
        let (ev, _) = bethe_eigenvalues(u, &xi, &p, 1e-6).unwrap();
        let lead = p.q().powi(-2) * p.t().powi(-2) * 1e-3f64.powi(-8);
        assert!(((ev.re - lead) / lead).abs() < 1e-4);
    }
}
