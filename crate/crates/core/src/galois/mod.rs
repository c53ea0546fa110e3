//! Finite groups as multiplication tables, cosets, quotients, and the
//! finite-level model of a local Weil group with its ramification chain.

pub mod catalog;
mod group;
mod local;

pub use group::{coset_reps, double_cosets, quotient_group, FiniteGroup, LeftCosets, Subgroup};
pub use local::{validate_local_datum, Check, LocalGaloisDatum, ValidationReport};
