//! Operator-valued 2×2 and 4×4 arrays built from the q-boson generators:
//! Lax matrices, their products, inverses and the boundary dressing.

use std::sync::Arc;

use num_complex::Complex;

use super::monodromy::{apply_boundary, apply_periodic, Entry};
use super::operator::{GradedArray, OperatorMatrix, W2};
use crate::error::Result;
use crate::fock::{apply_generator, apply_hamiltonian, number_operator_scalar, Generator, SectorBasis};
use crate::linalg::CMatrix;
use crate::params::{e, f as fq, ModelParams};
use crate::scalar::{re, Cplx, Real};

/// Matrix of a single generator on a source sector.
pub fn generator_matrix<T: Real>(kind: Generator, l: usize, source: &Arc<SectorBasis>, p: &ModelParams<T>) -> Result<OperatorMatrix<T>> {
    OperatorMatrix::from_action(source, kind.degree(), |v| apply_generator(kind, l, v, p))
}

/// Matrix of the n-particle Hamiltonian on a sector.
pub fn hamiltonian_matrix<T: Real>(source: &Arc<SectorBasis>, p: &ModelParams<T>) -> Result<OperatorMatrix<T>> {
    OperatorMatrix::from_action(source, 0, |v| apply_hamiltonian(v, p))
}

fn gen<T: Real>(kind: Generator, l: usize, src: &Arc<SectorBasis>, p: &ModelParams<T>) -> Result<CMatrix<T>> {
    Ok(generator_matrix(kind, l, src, p)?.into_entries())
}

/// Lax matrix `L_l(u) = [[u⁻¹, (1−t)β*_l], [β_l, u]]` at `level`.
pub fn lax<T: Real>(l: usize, u: Cplx<T>, level: isize, p: &ModelParams<T>) -> Result<GradedArray<T>> {
    let one_minus_t = re(T::one() - p.t());
    GradedArray::from_blocks(level, p.m(), &W2, |i, j, src, _| match (i, j) {
        (0, 0) => Ok(CMatrix::identity(src.len()).scale(u.inv())),
        (0, 1) => Ok(gen(Generator::Create, l, src, p)?.scale(one_minus_t)),
        (1, 0) => gen(Generator::Annihilate, l, src, p),
        _ => Ok(CMatrix::identity(src.len()).scale(u)),
    })
}

/// `[[u, (1−t⁻¹)β*_l], [−β_l, u⁻¹t⁻¹]]·t^{−N_l}` at `level`.
pub fn lax_inverse<T: Real>(l: usize, u: Cplx<T>, level: isize, p: &ModelParams<T>) -> Result<GradedArray<T>> {
    let t = p.t();
    let left = GradedArray::from_blocks(level, p.m(), &W2, |i, j, src, _| match (i, j) {
        (0, 0) => Ok(CMatrix::identity(src.len()).scale(u)),
        (0, 1) => Ok(gen(Generator::Create, l, src, p)?.scale(re(T::one() - t.recip()))),
        (1, 0) => Ok(gen(Generator::Annihilate, l, src, p)?.scale(re(-T::one()))),
        _ => Ok(CMatrix::identity(src.len()).scale(u.inv() * t.recip())),
    })?;
    let tn = GradedArray::from_blocks(level, p.m(), &W2, |i, j, src, tgt| {
        if i == j {
            gen(Generator::TPowMinusN, l, src, p)
        } else {
            Ok(CMatrix::zeros(tgt.len(), src.len()))
        }
    })?;
    left.mul(&tn)
}

/// `U_m(u) = L_m(u)⋯L_0(u)` as a product of Lax matrices.
pub fn monodromy_from_lax<T: Real>(u: Cplx<T>, level: isize, p: &ModelParams<T>) -> Result<GradedArray<T>> {
    let mut acc = lax(0, u, level, p)?;
    for l in 1..=p.m() {
        acc = lax(l, u, level, p)?.mul(&acc)?;
    }
    Ok(acc)
}

/// Site-reversed product `L_0(u)L_1(u)⋯L_m(u)`.
pub fn reversed_monodromy_from_lax<T: Real>(u: Cplx<T>, level: isize, p: &ModelParams<T>) -> Result<GradedArray<T>> {
    let mut acc = lax(0, u, level, p)?;
    for l in 1..=p.m() {
        acc = acc.mul(&lax(l, u, level, p)?)?;
    }
    Ok(acc)
}

/// `U_m(u)⁻¹ = L_0(u)⁻¹⋯L_m(u)⁻¹` from the inverse Lax matrices.
pub fn inverse_monodromy_from_lax<T: Real>(u: Cplx<T>, level: isize, p: &ModelParams<T>) -> Result<GradedArray<T>> {
    let mut acc = lax_inverse(0, u, level, p)?;
    for l in 1..=p.m() {
        acc = acc.mul(&lax_inverse(l, u, level, p)?)?;
    }
    Ok(acc)
}

/// `U_m(u)` assembled from the closed-form strip actions.
pub fn monodromy<T: Real>(u: Cplx<T>, level: isize, p: &ModelParams<T>) -> Result<GradedArray<T>> {
    GradedArray::from_blocks(level, p.m(), &W2, |i, j, src, _| {
        let which = Entry::at(i, j);
        Ok(OperatorMatrix::from_action(src, which.degree(), |v| apply_periodic(which, u, v, p))?.into_entries())
    })
}

/// `𝒰_m(u;a)` assembled from the closed-form boundary actions.
pub fn boundary_monodromy<T: Real>(u: Cplx<T>, a: T, level: isize, p: &ModelParams<T>) -> Result<GradedArray<T>> {
    GradedArray::from_blocks(level, p.m(), &W2, |i, j, src, _| {
        let which = Entry::at(i, j);
        Ok(OperatorMatrix::from_action(src, which.degree(), |v| apply_boundary(which, u, a, v, p))?.into_entries())
    })
}

/// Scalar diagonal `diag(x, y)` as a graded 2×2 array.
pub fn diagonal2<T: Real>(x: Cplx<T>, y: Cplx<T>, level: isize, m: usize) -> Result<GradedArray<T>> {
    let zero = Complex::new(T::zero(), T::zero());
    GradedArray::scalar(level, m, &W2, &[vec![x, zero], vec![zero, y]])
}

/// `K₋(u;a) = diag(e(u;a), f(u;a))` as a graded 2×2 array.
pub fn k_minus_graded<T: Real>(u: Cplx<T>, a: T, level: isize, p: &ModelParams<T>) -> Result<GradedArray<T>> {
    diagonal2(e(u, a), fq(u, a, p.q()), level, p.m())
}

/// `𝒰_m(u;a) = U_m(u)·K₋(u;a)·U_m⁻¹(q⁻¹u⁻¹)` from Lax products and inverse Lax matrices.
pub fn boundary_monodromy_from_lax<T: Real>(u: Cplx<T>, a: T, level: isize, p: &ModelParams<T>) -> Result<GradedArray<T>> {
    let w = (u * p.q()).inv();
    monodromy_from_lax(u, level, p)?
        .mul(&k_minus_graded(u, a, level, p)?)?
        .mul(&inverse_monodromy_from_lax(w, level, p)?)
}

/// `𝒩_m` as a graded 2×2 array (diagonal, level-dependent scalars).
pub fn number_operator_graded<T: Real>(level: isize, p: &ModelParams<T>, power: i32) -> Result<GradedArray<T>> {
    GradedArray::from_blocks(level, p.m(), &W2, |i, j, src, tgt| {
        if i == j {
            let k = number_operator_scalar(p, src.n()).powi(power);
            Ok(CMatrix::identity(src.len()).scale(re(k)))
        } else {
            Ok(CMatrix::zeros(tgt.len(), src.len()))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;

    fn params(m: usize) -> ModelParams<f64> {
        ModelParams::new(m, 1, 0.6, 0.3, -0.4).unwrap()
    }

    #[test]
    fn lax_inverse_inverts() {
        let p = params(2);
        let u = Complex::new(0.7, 0.2);
        for level in 1..=3 {
            for l in 0..=2 {
                let prod = lax(l, u, level, &p).unwrap().mul(&lax_inverse(l, u, level, &p).unwrap()).unwrap();
                let id = diagonal2(Complex::new(1.0, 0.0), Complex::new(1.0, 0.0), level, 2).unwrap();
                let d1 = prod.deviation(&id).unwrap();
                assert!(d1 < 1e-12, "level {level} site {l}: {d1}");
            }
        }
    }

    #[test]
    fn periodic_closed_form_matches_lax_product() {
        for m in 0..=3 {
            let p = params(m);
            for u in [Complex::new(0.7, 0.0), Complex::new(1.3, -0.4)] {
                for level in 1..=3 {
                    let a = monodromy_from_lax(u, level, &p).unwrap();
                    let b = monodromy(u, level, &p).unwrap();
                    let d = a.deviation(&b).unwrap();
                    assert!(d < 1e-12, "m {m} level {level}: {d}");
                }
            }
        }
    }

    #[test]
    fn boundary_closed_form_matches_dressed_lax_product() {
        for m in 0..=2 {
            let p = params(m);
            for u in [Complex::new(0.7, 0.0), Complex::new(1.3, -0.4)] {
                for level in 1..=3 {
                    let a = boundary_monodromy_from_lax(u, -0.4, level, &p).unwrap();
                    let b = boundary_monodromy(u, -0.4, level, &p).unwrap();
                    let d = a.deviation(&b).unwrap();
                    assert!(d < 1e-12, "m {m} level {level}: {d}");
                }
            }
        }
    }
}
