//! Exact arithmetic over `Q` and finite fields `F_{p^k}`.

pub mod arith;
mod fq;
mod poly;

pub use fq::{fq_context, has_zeta, multiplicative_order, Fq, FqContext, FqElement, MAX_DEGREE};
pub use poly::{
    distinct_degree_factorization, equal_degree_factorization, factor, is_irreducible, roots,
    squarefree_factorization, FieldEmbedding, ResidueField, UniPoly,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("{0} is not a supported prime")]
    NotPrime(u64),
    #[error("extension degree {0} is outside 1..=12")]
    DegreeTooLarge(u32),
    #[error("zero has no multiplicative order or inverse")]
    ZeroElement,
    #[error("elements belong to different fields")]
    DomainMismatch,
    #[error("computation too large: {0}")]
    TooLarge(String),
}
