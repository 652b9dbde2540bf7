//! Essential-dimension bounds for finite groups, with the symbolic
//! machinery behind them: exact fields, rational functions, permutation
//! groups, cross-ratios, Tschirnhaus reductions and `PGL_2(F_q)`.
//!
//! The symbolic layers are generic over [`Scalar`]; the aliases below fix
//! the two coefficient domains used throughout.

pub mod crossratio;
pub mod edengine;
pub mod exactfield;
pub mod fielddesc;
pub mod groups;
pub mod pgl2;
pub mod ratfunc;
pub mod scalar;
pub mod tschirnhaus;

pub use scalar::Scalar;

/// Arbitrary-precision rational numbers.
pub type Rational = num_rational::BigRational;

/// Polynomials and rational functions over `Q` and over finite fields.
pub type QPoly = ratfunc::MultiPoly<Rational>;
pub type FqPoly = ratfunc::MultiPoly<exactfield::FqElement>;
pub type QRatFn = ratfunc::RatFn<Rational>;
pub type FqRatFn = ratfunc::RatFn<exactfield::FqElement>;
