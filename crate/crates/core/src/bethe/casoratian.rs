use crate::error::{Error, Result};
use crate::scalar::{cis, Cplx, Real};

/// `F(u) = Π (u² − vⱼ²)(u² − vⱼ⁻²)` with `vⱼ = e^{iξⱼ/2}`.
pub fn spectral_polynomial<T: Real>(u: Cplx<T>, xi: &[T]) -> Cplx<T> {
    let u2 = u * u;
    xi.iter().fold(Cplx::new(T::one(), T::zero()), |acc, &x| {
        let v2 = cis(x);
        acc * (u2 - v2) * (u2 - v2.inv())
    })
}

/// `W(u) = F(qu)G(u) − F(u)G(qu)`.
pub fn casoratian<T: Real>(u: Cplx<T>, xi1: &[T], xi2: &[T], q: T) -> Result<Cplx<T>> {
    Ok(casoratian_parts(u, xi1, xi2, q)?.0)
}

/// `W(u)` divided by `|F(qu)G(u)| + |F(u)G(qu)|`.
pub fn casoratian_normalized<T: Real>(u: Cplx<T>, xi1: &[T], xi2: &[T], q: T) -> Result<T> {
    let (w, scale) = casoratian_parts(u, xi1, xi2, q)?;
    Ok(w.norm() / scale)
}

fn casoratian_parts<T: Real>(u: Cplx<T>, xi1: &[T], xi2: &[T], q: T) -> Result<(Cplx<T>, T)> {
    if u.norm() == T::zero() {
        return Err(Error::ZeroArgument);
    }
    if xi1.len() != xi2.len() {
        return Err(Error::SectorMismatch(format!("spectral points of lengths {} and {}", xi1.len(), xi2.len())));
    }
    let qu = u * q;
    let a = spectral_polynomial(qu, xi1) * spectral_polynomial(u, xi2);
    let b = spectral_polynomial(u, xi1) * spectral_polynomial(qu, xi2);
    Ok((a - b, a.norm() + b.norm()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vanishes_on_equal_points() {
        let xi = [1.1, 0.4];
        for u in [Cplx::new(0.7, 0.2), Cplx::new(-1.3, 0.5)] {
            assert!(casoratian(u, &xi, &xi, 0.8).unwrap().norm() < 1e-14);
        }
    }

    #[test]
    fn even_in_u() {
        let u = Cplx::new(0.9, 0.35);
        let a = casoratian(u, &[1.0, 0.3], &[1.4, 0.6], 0.7).unwrap();
        let b = casoratian(-u, &[1.0, 0.3], &[1.4, 0.6], 0.7).unwrap();
        assert!((a - b).norm() < 1e-13);
    }

    #[test]
    fn zero_argument_rejected() {
        assert_eq!(casoratian(Cplx::new(0.0, 0.0), &[1.0], &[2.0], 0.5), Err(Error::ZeroArgument));
    }
}
