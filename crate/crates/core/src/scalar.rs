//! Exact scalar abstraction shared by every symbolic module.
//!
//! Coefficients are either exact rationals (any `num_rational::Ratio<T>`
//! over an integer type) or finite-field elements. Finite-field elements
//! need their field to build a zero or a one, so constructors take a
//! `Domain` value; for rationals the domain is `()`.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

/// An element of an exact field.
pub trait Scalar: Clone + Eq + Hash + Debug + Display + Send + Sync + 'static {
    /// Runtime description of the field the element lives in.
    type Domain: Clone + Eq + Hash + Debug + Send + Sync + 'static;

    fn domain(&self) -> Self::Domain;
    fn zero(domain: &Self::Domain) -> Self;
    fn one(domain: &Self::Domain) -> Self;
    fn from_int(domain: &Self::Domain, value: i64) -> Self;
    /// 0 for characteristic zero, otherwise the prime.
    fn characteristic(domain: &Self::Domain) -> u64;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;

    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inverse(&self) -> Option<Self>;

    fn divided(&self, other: &Self) -> Option<Self> {
        other.inverse().map(|inv| self.times(&inv))
    }

    fn pow_u64(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.domain());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.times(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.times(&base);
            }
        }
        acc
    }

    /// Whether the rendered form needs parentheses when used as a factor.
    fn is_compound(&self) -> bool {
        false
    }

    /// Whether the element renders with a leading minus sign.
    fn is_negative(&self) -> bool {
        false
    }

    /// A prime `p` for which [`Scalar::reduce_mod`] maps the domain's
    /// integral elements homomorphically onto `F_p`.
    fn modular_prime(_domain: &Self::Domain) -> Option<u64> {
        None
    }

    /// Image in `F_p`; `None` when the element is not `p`-integral.
    fn reduce_mod(&self, _p: u64) -> Option<u64> {
        None
    }
}

impl<T> Scalar for Ratio<T>
where
    T: Clone + Integer + Signed + FromPrimitive + ToPrimitive + Hash + Debug + Display + Send + Sync + 'static,
{
    type Domain = ();

    fn domain(&self) -> Self::Domain {}

    fn zero(_: &()) -> Self {
        Zero::zero()
    }

    fn one(_: &()) -> Self {
        One::one()
    }

    fn from_int(_: &(), value: i64) -> Self {
        Ratio::from_integer(T::from_i64(value).expect("integer fits the scalar type"))
    }

    fn characteristic(_: &()) -> u64 {
        0
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }

    fn plus(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }

    fn minus(&self, other: &Self) -> Self {
        self.clone() - other.clone()
    }

    fn times(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }

    fn negated(&self) -> Self {
        -self.clone()
    }

    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn is_compound(&self) -> bool {
        !self.is_integer()
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn modular_prime(_: &()) -> Option<u64> {
        Some(2_147_483_647)
    }

    fn reduce_mod(&self, p: u64) -> Option<u64> {
        let pt = T::from_u64(p)?;
        let n = self.numer().mod_floor(&pt).to_u64()?;
        let d = self.denom().mod_floor(&pt).to_u64()?;
        let dinv = crate::exactfield::arith::inv_mod(d, p)?;
        Some(crate::exactfield::arith::mul_mod(n, dinv, p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn rational_field_ops() {
        let a = Rational::from_int(&(), 3);
        let b = Rational::from_int(&(), 4);
        assert_eq!(a.divided(&b).unwrap().to_string(), "3/4");
        assert!(<Rational as Scalar>::zero(&()).inverse().is_none());
        assert_eq!(b.pow_u64(3), Rational::from_int(&(), 64));
        assert_eq!(Rational::characteristic(&()), 0);
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(half.reduce_mod(7), Some(4));
        assert_eq!(half.reduce_mod(2), None);
        assert!(Scalar::is_negative(&half.negated()));
    }

    #[test]
    fn small_ratio_works_too() {
        let x: Ratio<i64> = Scalar::from_int(&(), 6);
        let y: Ratio<i64> = Scalar::from_int(&(), 4);
        assert_eq!(x.divided(&y).unwrap(), Ratio::new(3, 2));
    }
}
