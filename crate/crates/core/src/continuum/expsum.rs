use num_complex::Complex;
use num_traits::{One, Zero};

use crate::scalar::{cis, Cplx, Real};

/// Finite sum `Σ c·e^{i⟨k,x⟩}` of plane waves in `n` variables.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentialSum<T: Real = f64> {
    n: usize,
    terms: Vec<(Cplx<T>, Vec<T>)>,
}

impl<T: Real> ExponentialSum<T> {
    pub fn new(n: usize) -> Self {
        Self { n, terms: Vec::new() }
    }

    pub fn from_terms(n: usize, terms: Vec<(Cplx<T>, Vec<T>)>) -> Self {
        assert!(terms.iter().all(|(_, k)| k.len() == n), "frequency length must equal n");
        Self { n, terms }
    }

    pub fn push(&mut self, c: Cplx<T>, k: Vec<T>) {
        assert_eq!(k.len(), self.n, "frequency length must equal n");
        self.terms.push((c, k));
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(Cplx<T>, Vec<T>)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, x: &[T]) -> Cplx<T> {
        self.terms.iter().fold(Complex::zero(), |acc, (c, k)| {
            let phase = k.iter().zip(x).fold(T::zero(), |s, (&a, &b)| s + a * b);
            acc + *c * cis(phase)
        })
    }

    /// `∂_{x_j}`, term by term.
    pub fn derivative(&self, j: usize) -> Self {
        let terms = self.terms.iter().map(|(c, k)| (*c * Complex::new(T::zero(), k[j]), k.clone())).collect();
        Self { n: self.n, terms }
    }

    /// Pointwise complex conjugate.
    pub fn conj(&self) -> Self {
        let terms = self.terms.iter().map(|(c, k)| (c.conj(), k.iter().map(|&x| -x).collect())).collect();
        Self { n: self.n, terms }
    }

    pub fn scale(&self, s: Cplx<T>) -> Self {
        Self { n: self.n, terms: self.terms.iter().map(|(c, k)| (*c * s, k.clone())).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self { n: self.n, terms }
    }

    /// Pointwise product.
    pub fn product(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut terms = Vec::with_capacity(self.len() * other.len());
        for (a, ka) in &self.terms {
            for (b, kb) in &other.terms {
                terms.push((*a * *b, ka.iter().zip(kb).map(|(&x, &y)| x + y).collect()));
            }
        }
        Self { n: self.n, terms }
    }

    /// `∫_A` over the alcove `1/2 > x₁ > … > xₙ > 0`.
    pub fn integrate_alcove(&self) -> Cplx<T> {
        alcove_integral(self)
    }
}

/// Exact `∫_A Σ c·e^{i⟨k,x⟩} dx` over `A = {1/2 > x₁ > … > xₙ > 0}`.
///
/// The alcove is the simplex with vertices `½(e₁+…+e_j)`, `j = 0..n`, so each
/// term equals `2⁻ⁿ` times the divided difference of `exp` at the values
/// `(i/2)(k₁+…+k_j)`.
pub fn alcove_integral<T: Real>(es: &ExponentialSum<T>) -> Cplx<T> {
    let half = T::lit(0.5);
    let scale = half.powi(es.n as i32);
    es.terms.iter().fold(Complex::zero(), |acc, (c, k)| {
        let mut nodes = Vec::with_capacity(es.n + 1);
        let mut run = T::zero();
        nodes.push(Complex::zero());
        for &kj in k {
            run = run + kj;
            nodes.push(Complex::new(T::zero(), half * run));
        }
        acc + *c * exp_divided_difference(&nodes) * scale
    })
}

type Tri<T> = Vec<Vec<Cplx<T>>>;

fn tri_mul<T: Real>(a: &Tri<T>, b: &Tri<T>) -> Tri<T> {
    let n = a.len();
    let mut out = vec![vec![Complex::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let mut acc = Complex::zero();
            for l in i..=j {
                acc = acc + a[i][l] * b[l][j];
            }
            out[i][j] = acc;
        }
    }
    out
}

/// `exp[w₀,…,wₙ]`, the divided difference of the exponential, read off the
/// corner of `exp(Z)` for the bidiagonal matrix with `wⱼ` on the diagonal and
/// ones above it. Confluent and nearly confluent nodes are handled uniformly.
pub fn exp_divided_difference<T: Real>(w: &[Cplx<T>]) -> Cplx<T> {
    let n = w.len();
    assert!(n > 0, "divided difference needs at least one node");
    if n == 1 {
        return w[0].exp();
    }
    let mean = w.iter().fold(Complex::zero(), |a, &x| a + x) / T::count(n);
    let spread = w.iter().fold(T::zero(), |m, &x| m.max((x - mean).norm())) + T::one();
    let mut squarings = 0;
    let mut factor = T::one();
    while spread * factor > T::lit(0.5) {
        factor = factor / T::lit(2.0);
        squarings += 1;
    }
    let mut z: Tri<T> = vec![vec![Complex::zero(); n]; n];
    for j in 0..n {
        z[j][j] = (w[j] - mean) * factor;
        if j + 1 < n {
            z[j][j + 1] = Complex::new(factor, T::zero());
        }
    }
    let mut e: Tri<T> = vec![vec![Complex::zero(); n]; n];
    for (j, row) in e.iter_mut().enumerate() {
        row[j] = Cplx::<T>::one();
    }
    let mut term = e.clone();
    for k in 1..40 {
        term = tri_mul(&term, &z);
        let inv = T::count(k).recip();
        let mut size = T::zero();
        for i in 0..n {
            for j in i..n {
                term[i][j] = term[i][j] * inv;
                e[i][j] = e[i][j] + term[i][j];
                size = size.max(term[i][j].norm());
            }
        }
        if size < T::epsilon() * T::lit(1e-3) {
            break;
        }
    }
    for _ in 0..squarings {
        e = tri_mul(&e, &e);
    }
    e[0][n - 1] * mean.exp()
}
