//! Spectral points of the lattice and continuum Bethe equations as minima of
//! strictly convex Morse functions.

mod bae;
mod casoratian;
mod morse;
mod solver;

pub use casoratian::{casoratian, casoratian_normalized, spectral_polynomial};
pub use morse::{continuum_kappa, dv_a, lattice_kappa, v_a, Brackets, Couplings, Flavor, MorseProblem};
pub use solver::{solve_all, solve_spectral_point, SpectralPoint, MAX_HALVINGS, MAX_ITERATIONS};

#[cfg(test)]
mod tests;
