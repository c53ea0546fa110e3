//! Cocycle-level cohomology of finite groups: `H⁰`, `H¹`, `H²` of lattices,
//! restriction, corestriction, connecting maps, and the norm/restriction
//! compatibility check.

mod checks;
mod cochain;
mod h1;
mod maps;
mod torus;

pub use cochain::{cocycle_failure, Cocycle1};
pub use h1::{h0, h1, h2_lattice, tate_h1_cyclic, tate_h2_cyclic, H1Result, H2Options};
pub use maps::{
    averaging_map, class_hom, class_map, conjugate, connecting_delta0, corestrict, induced_map, restrict, CorFormula,
    Delta0,
};
pub use checks::{
    averaging_factors_through_coinvariants, corestriction_matrix, verify_corestriction, verify_prop18,
    verify_prop18_all_chains, CheckReport, Counterexample, DEFAULT_CLASS_CAP,
};
pub use torus::{h1_torus_coeffs, h1_torus_coeffs_at, TorusH1};
