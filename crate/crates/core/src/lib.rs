//! Galois lattices, explicit finite group cohomology and depth-zero checks
//! for tori over local fields.
//!
//! The crate is layered bottom-up:
//!
//! - [`abelian`]: exact integer linear algebra (Smith normal form, lattices,
//!   finitely generated abelian groups and their homomorphisms).
//! - [`galois`]: finite groups as multiplication tables, cosets, quotients and
//!   the finite-level model of a Weil group with its ramification filtration.
//! - [`gmodule`]: modules over finite groups and the constructions performed on
//!   them (permutation modules, invariants, coinvariants, norms).
//! - [`cohomology`]: cocycle-level H⁰, H¹, H², restriction, corestriction,
//!   connecting maps and the norm/restriction compatibility checker.
//! - [`langlands`]: tori and root data over local fields, depth-zero
//!   characters and parameters, and the archimedean norm identity.

pub mod abelian;
pub mod arith;
pub mod cohomology;
pub mod error;
pub mod galois;
pub mod gmodule;
pub mod langlands;

pub use error::{Error, Result};
