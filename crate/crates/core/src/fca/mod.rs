//! Formal contexts, concept lattices, implications and Guttman scales.

mod concepts;
mod context;
mod cxt;
mod guttman;
mod implications;

pub use concepts::{
    concepts, concepts_with_cap, ConceptLattice, FormalConcept, DEFAULT_CONCEPT_CAP,
};
pub use context::{FormalContext, MergeReport};
pub use cxt::{parse_cxt, write_cxt};
pub use guttman::{has_crossing, is_guttman, GuttmanWitness};
pub use implications::{
    canonical_base, canonical_base_with_cap, entails, holds, holds_named, implication_closure,
    Implication, DEFAULT_BASE_CAP,
};

use thiserror::Error;

use crate::bitset::BitSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FcaError {
    #[error("unknown attribute `{0}`")]
    UnknownAttribute(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("duplicate {kind} name `{name}`")]
    DuplicateName { kind: &'static str, name: String },
    #[error("incidence dimensions do not match the name lists")]
    DimensionMismatch,
    #[error("more than {cap} concepts")]
    ConceptBudgetExceeded { cap: usize },
    #[error("more than {cap} closed sets visited")]
    BudgetExceeded { cap: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Which side of the context a derivation starts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Objects,
    Attributes,
}

/// The derivation (prime) operator: common attributes of an object set, or
/// common objects of an attribute set.
pub fn derive(ctx: &FormalContext, side: Side, set: &BitSet) -> BitSet {
    match side {
        Side::Objects => ctx.common_attributes(set),
        Side::Attributes => ctx.common_objects(set),
    }
}
