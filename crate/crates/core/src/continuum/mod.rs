//! The continuum wave functions on the alcove, exact plane-wave integration
//! and the staircase embedding used for the lattice-to-continuum limit.

mod expsum;
mod staircase;
mod sweep;
mod wave;

pub use expsum::{alcove_integral, exp_divided_difference, ExponentialSum};
pub use staircase::{cell_center, floor_map, scaled_inner, staircase_embed, staircase_inner, staircase_wave};
pub use sweep::{convergence_sweep, ConvergenceReport, SweepRow};
pub use wave::{
    c_function, continuum_wave, continuum_wave_sum, gram_continuum, robin_residual, robin_residual_of, sup_norm_estimate,
    AlcovePoint, Wall,
};
