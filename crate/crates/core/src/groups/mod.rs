//! Finite groups: family expressions, permutation realizations and the
//! structural queries used by the bound engine.

mod character;
mod embed;
mod expr;
mod perm;
mod permgroup;
mod structure;

pub use character::{character_exists, character_value, CharacterAnswer, CharacterWitness};
pub use embed::{embedding_certificate, verify_embedding, Embedding, EmbeddingResult};
pub use expr::{GroupExpr, MAX_DEGREE};
pub use perm::Perm;
pub use permgroup::{CayleyTree, PermGroup, StabChain, ENUMERATION_CAP};
pub use structure::{
    center, center_order_symbolic, element_orders, element_orders_symbolic, exponent_symbolic,
    l_core, l_core_order_symbolic, sylow_subgroup, CORE_CAP, PARTITION_LIMIT,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("invalid group: {0}")]
    Invalid(String),
    #[error("cannot parse group expression: {0}")]
    Parse(String),
    #[error("element of order {0} is not of prime order")]
    NotPrimeOrder(u64),
}
