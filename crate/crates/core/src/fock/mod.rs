//! The sector spaces `F_{n,m}`, their weighted inner product and the
//! q-boson algebra acting on them.

mod generators;
mod partition;
mod sector;
mod vector;

pub use generators::{apply_generator, apply_hamiltonian, number_operator_scalar, Generator};
pub(crate) use generators::check_lattice;
pub use partition::Partition;
pub use sector::{enumerate_sector, sector_size, weight_delta, SectorBasis};
pub use vector::{inner_product, FockVector};
