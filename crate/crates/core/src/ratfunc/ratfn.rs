//! Normalized rational functions `num / den`.

use std::collections::BTreeMap;
use std::fmt;

use super::gcd::gcd;
use super::multipoly::{MultiPoly, Vars};
use super::RatFnError;
use crate::scalar::Scalar;

/// A rational function with coprime numerator and denominator, the
/// denominator having graded-lex leading coefficient 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn<C: Scalar> {
    num: MultiPoly<C>,
    den: MultiPoly<C>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked arithmetic on two rational functions.
pub fn ratfn_arith<C: Scalar>(a: &RatFn<C>, b: &RatFn<C>, op: ArithOp) -> Result<RatFn<C>, RatFnError> {
    if !a.num.same_context(&b.num) {
        return Err(RatFnError::DomainMismatch);
    }
    Ok(match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.div(b)?,
    })
}

impl<C: Scalar> RatFn<C> {
    pub fn new(num: MultiPoly<C>, den: MultiPoly<C>) -> Result<Self, RatFnError> {
        if !num.same_context(&den) {
            return Err(RatFnError::DomainMismatch);
        }
        if den.is_zero() {
            return Err(RatFnError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: MultiPoly<C>, den: MultiPoly<C>) -> Self {
        if num.is_zero() {
            let one = MultiPoly::one(den.domain(), den.vars());
            return RatFn { num, den: one };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
            }
        };
        Self::with_monic_den(num, den)
    }

    fn with_monic_den(num: MultiPoly<C>, den: MultiPoly<C>) -> Self {
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        if lc.is_one() {
            return RatFn { num, den };
        }
        let inv = lc.inverse().unwrap();
        RatFn {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn from_poly(p: MultiPoly<C>) -> Self {
        let one = MultiPoly::one(p.domain(), p.vars());
        RatFn { num: p, den: one }
    }

    pub fn zero(domain: &C::Domain, vars: &Vars) -> Self {
        Self::from_poly(MultiPoly::zero(domain, vars))
    }

    pub fn one(domain: &C::Domain, vars: &Vars) -> Self {
        Self::from_poly(MultiPoly::one(domain, vars))
    }

    pub fn constant(domain: &C::Domain, vars: &Vars, c: C) -> Self {
        Self::from_poly(MultiPoly::constant(domain, vars, c))
    }

    pub fn from_int(domain: &C::Domain, vars: &Vars, v: i64) -> Self {
        Self::from_poly(MultiPoly::from_int(domain, vars, v))
    }

    pub fn var(domain: &C::Domain, vars: &Vars, i: usize) -> Self {
        Self::from_poly(MultiPoly::var(domain, vars, i))
    }

    /// The variable with the given name.
    pub fn named(domain: &C::Domain, vars: &Vars, name: &str) -> Option<Self> {
        let i = vars.iter().position(|v| v == name)?;
        Some(Self::var(domain, vars, i))
    }

    pub fn num(&self) -> &MultiPoly<C> {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly<C> {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn domain(&self) -> &C::Domain {
        self.num.domain()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<C> {
        Some(self.num.as_constant()?.divided(&self.den.as_constant()?)?)
    }

    /// Variables occurring in the numerator or denominator.
    pub fn occurring_vars(&self) -> Vec<usize> {
        let mut v = self.num.occurring_vars();
        for i in self.den.occurring_vars() {
            if !v.contains(&i) {
                v.push(i);
            }
        }
        v.sort_unstable();
        v
    }

    /// Sum. Panics when the operands come from different contexts; use
    /// [`ratfn_arith`] for a checked variant.
    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::normalized(self.num.add(&other.num), self.den.clone());
        }
        let g = gcd(&self.den, &other.den);
        let a_cof = self.den.div_exact(&g).unwrap();
        let b_cof = other.den.div_exact(&g).unwrap();
        let num = self.num.mul(&b_cof).add(&other.num.mul(&a_cof));
        let den = self.den.mul(&b_cof);
        Self::normalized(num, den)
    }

    pub fn neg(&self) -> Self {
        RatFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.domain(), self.vars());
        }
        // both operands are reduced, so cross-cancelling suffices
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let num = self
            .num
            .div_exact(&g1)
            .unwrap()
            .mul(&other.num.div_exact(&g2).unwrap());
        let den = self
            .den
            .div_exact(&g2)
            .unwrap()
            .mul(&other.den.div_exact(&g1).unwrap());
        Self::with_monic_den(num, den)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.domain(), self.vars());
        }
        RatFn {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self, RatFnError> {
        if self.is_zero() {
            return Err(RatFnError::DivisionByZero);
        }
        Ok(Self::with_monic_den(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, RatFnError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i32) -> Result<Self, RatFnError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RatFn {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    /// Substitutes `images[i]` for variable `i`. Images share one context,
    /// which becomes the context of the result.
    pub fn compose(&self, images: &[RatFn<C>]) -> Result<Self, RatFnError> {
        let needed = self.occurring_vars();
        let target = images
            .iter()
            .enumerate()
            .find(|(i, _)| needed.contains(i))
            .map(|(_, r)| r)
            .or(images.first());
        let Some(target) = target else {
            return if needed.is_empty() {
                Ok(self.clone())
            } else {
                Err(RatFnError::UnboundVariable(self.vars()[needed[0]].clone()))
            };
        };
        if images.len() != self.vars().len() {
            return Err(RatFnError::DomainMismatch);
        }
        let (tdom, tvars) = (target.domain().clone(), target.vars().clone());
        if tdom != *self.domain() || images.iter().any(|r| r.vars() != &tvars) {
            return Err(RatFnError::DomainMismatch);
        }
        let n = self.vars().len();
        let exps: Vec<u32> = (0..n)
            .map(|i| self.num.degree_in(i).max(self.den.degree_in(i)))
            .collect();
        // powers p_i^k and q_i^k for k ≤ e_i
        let mut num_pows = Vec::with_capacity(n);
        let mut den_pows = Vec::with_capacity(n);
        for i in 0..n {
            let mut np = vec![MultiPoly::one(&tdom, &tvars)];
            let mut dp = vec![MultiPoly::one(&tdom, &tvars)];
            for k in 1..=exps[i] as usize {
                np.push(np[k - 1].mul(&images[i].num));
                dp.push(dp[k - 1].mul(&images[i].den));
            }
            num_pows.push(np);
            den_pows.push(dp);
        }
        let homogenized = |p: &MultiPoly<C>| {
            let mut acc = MultiPoly::zero(&tdom, &tvars);
            for (m, c) in p.terms() {
                let mut t = MultiPoly::constant(&tdom, &tvars, c.clone());
                for i in 0..n {
                    if exps[i] == 0 {
                        continue;
                    }
                    let a = m.0[i] as usize;
                    if a > 0 {
                        t = t.mul(&num_pows[i][a]);
                    }
                    let b = exps[i] as usize - a;
                    if b > 0 {
                        t = t.mul(&den_pows[i][b]);
                    }
                }
                acc = acc.add(&t);
            }
            acc
        };
        let num = homogenized(&self.num);
        let den = homogenized(&self.den);
        if den.is_zero() {
            return Err(RatFnError::IndeterminateForm);
        }
        Ok(Self::normalized(num, den))
    }

    /// Substitution by variable name; unbound occurring variables are an
    /// error, unbound absent ones are ignored.
    pub fn substitute(&self, bindings: &BTreeMap<String, RatFn<C>>) -> Result<Self, RatFnError> {
        let occurring = self.occurring_vars();
        let mut images = Vec::with_capacity(self.vars().len());
        let mut fallback: Option<&RatFn<C>> = None;
        for (i, name) in self.vars().iter().enumerate() {
            match bindings.get(name) {
                Some(r) => {
                    fallback.get_or_insert(r);
                    images.push(Some(r.clone()));
                }
                None if occurring.contains(&i) => {
                    return Err(RatFnError::UnboundVariable(name.clone()));
                }
                None => images.push(None),
            }
        }
        let Some(proto) = fallback.or_else(|| bindings.values().next()) else {
            return Ok(self.clone());
        };
        let zero = RatFn::zero(proto.domain(), proto.vars());
        let images: Vec<RatFn<C>> = images.into_iter().map(|r| r.unwrap_or_else(|| zero.clone())).collect();
        self.compose(&images)
    }

    pub fn evaluate(&self, point: &[C]) -> Result<C, RatFnError> {
        self.evaluate_mapped(point, |c| c.clone())
    }

    /// Evaluates at a point of another field, mapping coefficients first.
    pub fn evaluate_mapped<D: Scalar>(&self, point: &[D], map: impl Fn(&C) -> D) -> Result<D, RatFnError> {
        if point.len() != self.vars().len() {
            return Err(RatFnError::DomainMismatch);
        }
        let d = self.den.evaluate_mapped(point, &map);
        let n = self.num.evaluate_mapped(point, &map);
        n.divided(&d).ok_or(RatFnError::PoleAtPoint)
    }

    /// Equality by cross-multiplication, independent of normal forms.
    pub fn cross_equal(&self, other: &Self) -> bool {
        self.num.mul(&other.den).sub(&other.num.mul(&self.den)).is_zero()
    }

    /// Re-expresses over another variable list by name.
    pub fn rebase(&self, target: &Vars) -> Option<Self> {
        Some(RatFn {
            num: self.num.rebase(target)?,
            den: self.den.rebase(target)?,
        })
    }
}

impl<C: Scalar> fmt::Display for RatFn<C> {
    /// Polynomials render directly; a monomial over a monomial renders as a
    /// single term with negative exponents; anything else as
    /// `(num) / (den)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.num_terms() == 1 && self.den.num_terms() == 1 {
            let (mn, cn) = self.num.leading_term().unwrap();
            let (md, cd) = self.den.leading_term().unwrap();
            let c = cn.divided(cd).unwrap();
            let exps: Vec<i64> = mn.0.iter().zip(&md.0).map(|(&a, &b)| a as i64 - b as i64).collect();
            return write!(f, "{}", self.num.fmt_factors(&c, &exps, true));
        }
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl<C: Scalar> fmt::Debug for RatFn<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFn({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::multipoly::var_names;
    use crate::Rational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type Q = RatFn<Rational>;

    fn vars() -> Vars {
        var_names("x", 1, 4)
    }

    fn x(i: usize) -> Q {
        Q::var(&(), &vars(), i)
    }

    fn c(v: i64) -> Q {
        Q::from_int(&(), &vars(), v)
    }

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn cross_ratio() -> Q {
        let d = |i: usize, j: usize| x(i).sub(&x(j));
        d(0, 2).mul(&d(1, 3)).div(&d(0, 3).mul(&d(1, 2))).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let a = x(0).div(&x(1)).unwrap();
        let b = x(1).div(&x(0)).unwrap();
        assert!(a.mul(&b).is_one());
        assert!(x(0).sub(&x(1)).add(&x(1).sub(&x(0))).is_zero());
        let r = x(0).pow(2).unwrap().sub(&x(1).pow(2).unwrap()).div(&x(0).sub(&x(1))).unwrap();
        assert_eq!(r, x(0).add(&x(1)));
        assert_eq!(x(0).div(&c(0)), Err(RatFnError::DivisionByZero));
    }

    #[test]
    fn substitution_examples() {
        let f = x(0).div(&x(1)).unwrap();
        let mut swap = BTreeMap::new();
        swap.insert("x1".to_string(), x(1));
        swap.insert("x2".to_string(), x(0));
        assert_eq!(f.substitute(&swap).unwrap(), x(1).div(&x(0)).unwrap());

        let t = cross_ratio();
        let perm = |a: usize, b: usize| -> Vec<Q> {
            (0..4)
                .map(|i| if i == a { x(b) } else if i == b { x(a) } else { x(i) })
                .collect()
        };
        assert_eq!(t.compose(&perm(0, 1)).unwrap(), t.inv().unwrap());
        assert_eq!(t.compose(&perm(2, 3)).unwrap(), t.inv().unwrap());
        assert_eq!(t.compose(&perm(1, 2)).unwrap(), c(1).sub(&t));

        let mut partial = BTreeMap::new();
        partial.insert("x1".to_string(), x(1));
        assert_eq!(
            f.substitute(&partial),
            Err(RatFnError::UnboundVariable("x2".into()))
        );
        let g = c(1).div(&x(0).sub(&x(1))).unwrap();
        let same: Vec<Q> = vec![x(2), x(2), x(2), x(3)];
        assert_eq!(g.compose(&same), Err(RatFnError::IndeterminateForm));
    }

    #[test]
    fn evaluation_examples() {
        let pt = [q(0), q(1), q(2), q(3)];
        assert_eq!(cross_ratio().evaluate(&pt).unwrap(), Rational::new(4.into(), 3.into()));
        assert_eq!(c(1).evaluate(&pt).unwrap(), q(1));
        let eq = [q(5), q(5), q(1), q(1)];
        assert_eq!(x(0).sub(&x(1)).evaluate(&eq).unwrap(), q(0));
        assert_eq!(
            cross_ratio().evaluate(&[q(0), q(1), q(1), q(3)]),
            Err(RatFnError::PoleAtPoint)
        );
    }

    #[test]
    fn rendering() {
        assert_eq!(x(2).div(&x(3)).unwrap().to_string(), "x3 * x4^-1");
        assert_eq!(c(1).sub(&x(2)).to_string(), "-x3 + 1");
        assert_eq!(
            c(1).div(&x(0).sub(&x(1))).unwrap().to_string(),
            "(1) / (x1 - x2)"
        );
        assert_eq!(c(-2).div(&x(0)).unwrap().to_string(), "-2 * x1^-1");
    }

    #[test]
    fn normalization_and_evaluation_consistency() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let rand_lin = |rng: &mut ChaCha8Rng| {
            let mut p = c(rng.gen_range(-3..4));
            for i in 0..4 {
                p = p.add(&x(i).mul(&c(rng.gen_range(-2..3))));
            }
            p
        };
        for _ in 0..100 {
            let f = rand_lin(&mut rng);
            let g = rand_lin(&mut rng);
            let h = rand_lin(&mut rng);
            if g.is_zero() || h.is_zero() || f.is_zero() {
                continue;
            }
            let a = f.mul(&g).div(&h.mul(&g)).unwrap();
            let b = f.div(&h).unwrap();
            assert_eq!(a, b);
            assert!(a.cross_equal(&b));
            let pt: Vec<Rational> = (0..4).map(|_| q(rng.gen_range(-20..20))).collect();
            if let (Ok(va), Ok(vb), Ok(vf), Ok(vh)) =
                (a.evaluate(&pt), b.add(&f).evaluate(&pt), f.evaluate(&pt), h.evaluate(&pt))
            {
                assert_eq!(va.clone() + vf.clone(), vb);
                assert_eq!(va * vh, vf);
            }
        }
    }
}
