//! Sparse multivariate polynomials and normalized rational functions.

mod gcd;
mod multipoly;
mod ratfn;

pub use gcd::{content, gcd};
pub use multipoly::{var_names, Monomial, MultiPoly, Vars};
pub use ratfn::{ratfn_arith, ArithOp, RatFn};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RatFnError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands have different variables or coefficient domains")]
    DomainMismatch,
    #[error("variable {0} has no binding")]
    UnboundVariable(String),
    #[error("substitution makes the denominator vanish identically")]
    IndeterminateForm,
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
}
