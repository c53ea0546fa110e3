//! Exact integer linear algebra: Smith normal form, lattices, finitely
//! generated abelian groups and homomorphisms between presented groups.

mod group;
mod hom;
pub mod lattice;
mod matrix;
mod snf;

pub use group::FinAbGroup;
pub use hom::{cokernel, dual_group, hom_kernel_image, tensor_mod_m, AbHom, KernelImage, Presentation};
pub use lattice::Subquotient;
pub use matrix::{big, big_vec, IntMatrix};
pub use snf::{smith_diagonal, snf, SmithForm};
