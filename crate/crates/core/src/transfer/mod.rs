//! Monodromy and transfer operators on the sector spaces, the scalar R- and
//! K-matrices, and a verifier for the structural identities between them.

pub mod algebra;
mod descriptor;
mod eigen;
pub mod interp;
mod monodromy;
mod operator;
mod rmatrix;
mod strips;
pub mod verify;

pub use descriptor::{operator_matrix, real_u, OperatorDescriptor};
pub use eigen::{bethe_eigenvalues, eigenvalue_from_variables};
pub use monodromy::{
    apply_boundary, apply_creation, apply_d_hat, apply_periodic, apply_transfer, boundary_coeff, creation_normalizer, Entry,
};
pub use operator::{GradedArray, OperatorMatrix, W2, W4};
pub use rmatrix::{k_minus, k_plus, r_matrix, rho, swap_matrix, SmallMatrix};
pub use strips::{phi_psi, precedes, relation_holds, strips_above, strips_below, StripRelation};
pub(crate) use strips::phi;
pub use verify::{verify_all, verify_structure, CheckItem, StructureCheck, StructureReport};
