//! Modules over finite groups: presentations with an action, equivariant
//! maps, short exact sequences, and the standard constructions on them.

mod constructions;
pub mod family;
mod module;

pub use constructions::{
    coinvariants, descend_action, direct_sum, dual_lattice, hom_to_cyclic, hom_to_cyclic_basis, inflate_action, invariants,
    norm_on_coinvariants, norm_sum, permutation_module, reduce_mod, restrict_action, trivial_cyclic,
    QuotientResult, SubmoduleResult,
};
pub use module::{DiagonalForm, GammaModule, ModuleMap, ShortExactSeq};
pub(crate) use constructions::coinvariant_relations;
pub(crate) use module::relations_or_empty;
