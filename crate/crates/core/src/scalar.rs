//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use f128::f128;

/// Real field the library is generic over.
///
/// Implemented for `f32`, `f64` and IEEE quadruple precision [`f128`]
/// (about 34 significant digits).
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` literal into the scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Converts an integer count into the scalar type.
    #[inline]
    fn count(k: usize) -> Self {
        Self::from_usize(k).expect("integer representable")
    }

    /// Lossy conversion used for reporting.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
impl Real for f128 {}

/// Complex scalar over a [`Real`] field.
pub type Cplx<T> = Complex<T>;

/// Embeds a real value in the complex plane.
#[inline]
pub fn re<T: Real>(x: T) -> Cplx<T> {
    Complex::new(x, T::zero())
}

/// `e^{iθ}`.
#[inline]
pub fn cis<T: Real>(theta: T) -> Cplx<T> {
    let (s, c) = theta.sin_cos();
    Complex::new(c, s)
}

/// Integer power of a complex number, negative exponents allowed.
#[inline]
pub fn cpowi<T: Real>(z: Cplx<T>, k: i64) -> Cplx<T> {
    let mut base = if k < 0 { z.inv() } else { z };
    let mut e = k.unsigned_abs();
    let mut acc = Complex::new(T::one(), T::zero());
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base;
        }
        base = base * base;
        e >>= 1;
    }
    acc
}

/// Converts a complex number between scalar fields.
#[inline]
pub fn cast_c<S: Real, T: Real>(z: Cplx<S>) -> Cplx<T> {
    Complex::new(T::lit(z.re.as_f64()), T::lit(z.im.as_f64()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn cpowi_matches_repeated_products() {
        let z = Complex::new(0.3, -1.1);
        let mut p = Complex::new(1.0, 0.0);
        for k in 0..7 {
            assert!((cpowi(z, k) - p).norm() < 1e-14);
            assert!((cpowi(z, -k) * p - 1.0).norm() < 1e-13);
            p *= z;
        }
    }

    #[test]
    fn quad_literals_round_trip() {
        let x = f128::lit(0.6);
        assert_eq!(x.as_f64(), 0.6);
        let third = f128::one() / f128::count(3);
        let err = (third * f128::count(3) - f128::one()).abs();
        assert!(err.as_f64() < 1e-30);
    }
}
