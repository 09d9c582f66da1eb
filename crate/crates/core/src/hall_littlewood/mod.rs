//! Bethe wave functions on `Λ_{n,m}` from the branching rule, from creation
//! operators and from hyperoctahedral Hall-Littlewood polynomials.

mod gram;
mod pieri;
mod polynomial;
mod wave;

pub use gram::{eigen_residuals, gram_discrete, max_correlation, spectral_wave, EigenResiduals};
pub use pieri::{pieri_residual, pieri_transfer_residual, Residual};
pub use polynomial::{hl_direct, HLParams};
pub use wave::{branch_coeff, one_particle_wave, wave_by_branching, wave_by_creation, SpectralVariables};
