//! Bethe Ansatz for the open-end q-boson chain and the Laplacian on the
//! hyperoctahedral Weyl alcove.

pub mod bethe;
pub mod continuum;
pub mod error;
pub mod fock;
pub mod hall_littlewood;
pub mod linalg;
pub mod params;
pub mod scalar;
pub mod transfer;

pub use error::{Error, Result};
pub use params::{ContinuumParams, ModelParams, SectorLimits, Tolerances};
pub use scalar::{Cplx, Real};

/// Extended-precision real scalar.
pub type ExtFloat = f128::f128;
/// Double-precision complex scalar.
pub type C64 = Cplx<f64>;
