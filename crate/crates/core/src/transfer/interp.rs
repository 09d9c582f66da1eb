//! Laurent-coefficient extraction for operator-valued functions of the
//! spectral parameter.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{relative_deviation, solve_real, CMatrix};
use crate::scalar::{cis, cpowi, re, Cplx, Real};

/// Ratio of the geometric node grid in `z = u²`.
pub const GRID_RATIO: f64 = 1.25;

/// Off-grid point at which the interpolant is checked against a direct evaluation.
pub const CHECK_POINT: f64 = 1.1;

/// Coefficients `c_k` of `F(z) = Σ_{k=−d}^{d} c_k z^{−k}` recovered from
/// `2d+1` samples on the grid `z_j = 1.25^{j−d}`.
#[derive(Debug, Clone)]
pub struct LaurentFit<T: Real = f64> {
    half_degree: usize,
    coeffs: Vec<CMatrix<T>>,
    residual: f64,
}

impl<T: Real> LaurentFit<T> {
    /// Coefficient of `z^{−k}`.
    pub fn coeff(&self, k: i64) -> &CMatrix<T> {
        let d = self.half_degree as i64;
        assert!(k.abs() <= d, "coefficient index {k} outside ±{d}");
        &self.coeffs[(d - k) as usize]
    }

    pub fn half_degree(&self) -> usize {
        self.half_degree
    }

    /// Relative deviation between the interpolant and the direct value at
    /// [`CHECK_POINT`].
    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn evaluate(&self, z: Cplx<T>) -> CMatrix<T> {
        let d = self.half_degree as i64;
        let mut acc = self.coeffs[0].scale(Complex::zero());
        for k in -d..=d {
            acc = &acc + &self.coeff(k).scale(cpowi(z, -k));
        }
        acc
    }

    pub fn map<S: Real>(&self, f: impl Fn(&CMatrix<T>) -> CMatrix<S>) -> LaurentFit<S> {
        LaurentFit { half_degree: self.half_degree, coeffs: self.coeffs.iter().map(f).collect(), residual: self.residual }
    }
}

/// Solves the Vandermonde system for `z^d F(z)` on the geometric grid.
pub fn fit_laurent<T: Real>(half_degree: usize, eval: impl Fn(T) -> Result<CMatrix<T>>) -> Result<LaurentFit<T>> {
    let d = half_degree as i64;
    let npts = 2 * half_degree + 1;
    let ratio = T::lit(GRID_RATIO);
    let nodes: Vec<T> = (0..npts as i64).map(|j| ratio.powi((j - d) as i32)).collect();
    let samples = nodes
        .iter()
        .map(|&z| Ok(eval(z)?.scale(re(z.powi(d as i32)))))
        .collect::<Result<Vec<_>>>()?;
    let (rows, cols) = (samples[0].rows(), samples[0].cols());
    let vander: Vec<T> = nodes.iter().flat_map(|&z| (0..npts).map(move |p| z.powi(p as i32))).collect();
    // Inverse columns of the Vandermonde matrix, reused for every entry.
    let inv_cols = (0..npts)
        .map(|j| {
            let mut e = vec![T::zero(); npts];
            e[j] = T::one();
            solve_real(vander.clone(), e)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut coeffs: Vec<CMatrix<T>> = vec![CMatrix::zeros(rows, cols); npts];
    for (j, col) in inv_cols.iter().enumerate() {
        for (pw, &w) in col.iter().enumerate() {
            if w == T::zero() {
                continue;
            }
            coeffs[pw] = &coeffs[pw] + &samples[j].scale_re(w);
        }
    }
    let mut fit = LaurentFit { half_degree, coeffs, residual: 0.0 };
    let zc = T::lit(CHECK_POINT);
    fit.residual = relative_deviation(&fit.evaluate(re(zc)), &eval(zc)?);
    Ok(fit)
}

/// Runs [`fit_laurent`] in double precision and repeats it in quadruple
/// precision when the check-point residual exceeds `tol`.
pub fn fit_laurent_adaptive(
    half_degree: usize,
    tol: f64,
    eval_f64: impl Fn(f64) -> Result<CMatrix<f64>>,
    eval_ext: impl Fn(f128::f128) -> Result<CMatrix<f128::f128>>,
) -> Result<(LaurentFit<f64>, bool)> {
    let fit = fit_laurent(half_degree, eval_f64)?;
    if fit.residual() <= tol {
        return Ok((fit, false));
    }
    let ext = fit_laurent(half_degree, eval_ext)?;
    if ext.residual() > tol {
        return Err(Error::Singular { factor: "interpolation residual".into(), magnitude: ext.residual() });
    }
    Ok((ext.map(|m| m.cast()), true))
}

/// Exact Laurent coefficients `c_j`, `|j| ≤ span`, of `F(w) = Σ c_j w^j` from
/// `2·span+1` samples on the unit circle (discrete Fourier inversion).
pub fn circle_coefficients<T: Real>(span: usize, eval: impl Fn(Cplx<T>) -> Result<CMatrix<T>>) -> Result<Vec<(i64, CMatrix<T>)>> {
    let npts = 2 * span + 1;
    let step = T::lit(2.0) * T::PI() / T::count(npts);
    let samples = (0..npts).map(|k| Ok((cis(step * T::count(k)), eval(cis(step * T::count(k)))?))).collect::<Result<Vec<_>>>()?;
    let norm = re(T::count(npts).recip());
    Ok((-(span as i64)..=span as i64)
        .map(|j| {
            let mut acc = samples[0].1.scale(Complex::zero());
            for (w, f) in &samples {
                acc = &acc + &f.scale(cpowi(*w, -j));
            }
            (j, acc.scale(norm))
        })
        .collect())
}
