//! Sparse multivariate polynomials over an exact [`Scalar`] domain.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::scalar::Scalar;

/// Ordered variable names shared by every polynomial of an expression context.
pub type Vars = Arc<[String]>;

/// Builds `prefix{lo}, …, prefix{hi}`.
pub fn var_names(prefix: &str, lo: usize, hi: usize) -> Vars {
    (lo..=hi).map(|i| format!("{prefix}{i}")).collect::<Vec<_>>().into()
}

/// Exponent vector ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly<C: Scalar> {
    domain: C::Domain,
    vars: Vars,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> MultiPoly<C> {
    pub fn zero(domain: &C::Domain, vars: &Vars) -> Self {
        MultiPoly {
            domain: domain.clone(),
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(domain: &C::Domain, vars: &Vars, c: C) -> Self {
        let mut p = Self::zero(domain, vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn one(domain: &C::Domain, vars: &Vars) -> Self {
        Self::constant(domain, vars, C::one(domain))
    }

    pub fn from_int(domain: &C::Domain, vars: &Vars, v: i64) -> Self {
        Self::constant(domain, vars, C::from_int(domain, v))
    }

    /// The `i`-th variable.
    pub fn var(domain: &C::Domain, vars: &Vars, i: usize) -> Self {
        assert!(i < vars.len(), "variable index out of range");
        Self::from_terms(domain, vars, [(Monomial::var(vars.len(), i), C::one(domain))])
    }

    pub fn from_terms(
        domain: &C::Domain,
        vars: &Vars,
        terms: impl IntoIterator<Item = (Monomial, C)>,
    ) -> Self {
        let mut p = Self::zero(domain, vars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), vars.len(), "exponent vector length");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = old.plus(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn domain(&self) -> &C::Domain {
        &self.domain
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    /// The constant coefficient value when the polynomial is constant.
    pub fn as_constant(&self) -> Option<C> {
        if !self.is_constant() {
            return None;
        }
        Some(
            self.terms
                .values()
                .next()
                .cloned()
                .unwrap_or_else(|| C::zero(&self.domain)),
        )
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.leading_term().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Variables that occur with positive exponent.
    pub fn occurring_vars(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&i| self.degree_in(i) > 0).collect()
    }

    fn check_compatible(&self, other: &Self) {
        assert!(
            self.domain == other.domain && self.vars == other.vars,
            "polynomials from different contexts"
        );
    }

    pub fn same_context(&self, other: &Self) -> bool {
        self.domain == other.domain && self.vars == other.vars
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.negated();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.negated());
        }
        out
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero(&self.domain, &self.vars);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.times(s);
        }
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        let mut out = Self::zero(&self.domain, &self.vars);
        if c.is_zero() {
            return out;
        }
        for (mm, cc) in &self.terms {
            out.terms.insert(mm.mul(m), cc.times(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = Self::zero(&self.domain, &self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.times(cb));
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(&self.domain, &self.vars);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact quotient `self / d`; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        self.check_compatible(d);
        let (dm, dc) = d.leading_term()?;
        let dinv = dc.inverse()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.domain, &self.vars);
        while let Some((rm, rc)) = rem.leading_term() {
            let m = rm.div(dm)?;
            let c = rc.times(&dinv);
            rem = rem.sub(&d.mul_term(&m, &c));
            quot.add_term(m, c);
        }
        Some(quot)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) => self.scale(&c.inverse().expect("nonzero leading coefficient")),
        }
    }

    /// Coefficients with respect to `var`, as polynomials free of `var`,
    /// indexed by exponent.
    pub fn coefficients_in(&self, var: usize) -> Vec<Self> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![Self::zero(&self.domain, &self.vars); deg + 1];
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            let mut mm = m.clone();
            mm.0[var] = 0;
            out[e].add_term(mm, c.clone());
        }
        out
    }

    /// `var^e`.
    pub fn var_pow(&self, var: usize, e: u32) -> Monomial {
        let mut m = Monomial::one(self.nvars());
        m.0[var] = e;
        m
    }

    pub fn evaluate(&self, point: &[C]) -> C {
        self.evaluate_mapped(point, |c| c.clone())
    }

    /// Evaluates at a point of another domain, mapping coefficients first.
    pub fn evaluate_mapped<D: Scalar>(&self, point: &[D], map: impl Fn(&C) -> D) -> D {
        assert_eq!(point.len(), self.nvars(), "point dimension");
        let mut acc: Option<D> = None;
        for (m, c) in &self.terms {
            let mut t = map(c);
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = t.times(&x.pow_u64(e as u64));
                }
            }
            acc = Some(match acc {
                None => t,
                Some(a) => a.plus(&t),
            });
        }
        match acc {
            Some(a) => a,
            None => {
                let one = map(&C::one(&self.domain));
                one.minus(&one)
            }
        }
    }

    /// Re-expresses the polynomial over another variable list by name.
    /// Every occurring variable must exist in `target`.
    pub fn rebase(&self, target: &Vars) -> Option<Self> {
        let idx: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| target.iter().position(|t| t == v))
            .collect();
        let mut out = Self::zero(&self.domain, target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (i, &k) in m.0.iter().enumerate() {
                if k > 0 {
                    e[idx[i]?] += k;
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        Some(out)
    }

    /// Renders a term given signed exponents (for monomial quotients).
    pub(crate) fn fmt_factors(&self, c: &C, exps: &[i64], first: bool) -> String {
        let negative = c.is_negative();
        let abs = if negative { c.negated() } else { c.clone() };
        let mut factors = Vec::new();
        let unit = abs.is_one();
        let has_vars = exps.iter().any(|&e| e != 0);
        if !unit || !has_vars {
            factors.push(if abs.is_compound() && has_vars {
                format!("({abs})")
            } else {
                abs.to_string()
            });
        }
        for (i, &e) in exps.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(self.vars[i].clone()),
                e => factors.push(format!("{}^{}", self.vars[i], e)),
            }
        }
        let body = factors.join(" * ");
        match (first, negative) {
            (true, true) => format!("-{body}"),
            (true, false) => body,
            (false, true) => format!(" - {body}"),
            (false, false) => format!(" + {body}"),
        }
    }
}

impl<C: Scalar> fmt::Display for MultiPoly<C> {
    /// Terms in descending graded-lex order, `*` between factors, `^` for
    /// powers and ` + ` / ` - ` between terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let exps: Vec<i64> = m.0.iter().map(|&e| e as i64).collect();
            write!(f, "{}", self.fmt_factors(c, &exps, k == 0))?;
        }
        Ok(())
    }
}

impl<C: Scalar> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn ctx() -> Vars {
        var_names("x", 1, 3)
    }

    fn x(i: usize) -> MultiPoly<Rational> {
        MultiPoly::var(&(), &ctx(), i)
    }

    fn c(v: i64) -> MultiPoly<Rational> {
        MultiPoly::from_int(&(), &ctx(), v)
    }

    #[test]
    fn graded_lex_order() {
        let a = Monomial(vec![2, 0, 0]);
        let b = Monomial(vec![1, 1, 0]);
        let d = Monomial(vec![0, 0, 3]);
        assert!(a > b);
        assert!(d > a);
    }

    #[test]
    fn render() {
        let p = x(0).pow(2).mul(&c(3)).sub(&x(1).mul(&x(2))).add(&c(-1));
        assert_eq!(p.to_string(), "3 * x1^2 - x2 * x3 - 1");
        assert_eq!(c(0).to_string(), "0");
        let half = MultiPoly::constant(&(), &ctx(), Rational::new(1.into(), 2.into()));
        assert_eq!(half.mul(&x(0)).to_string(), "(1/2) * x1");
    }

    #[test]
    fn exact_division() {
        let a = x(0).sub(&x(1));
        let b = x(0).add(&x(1));
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.add(&c(1)).div_exact(&a), None);
    }

    #[test]
    fn evaluation() {
        let p = x(0).mul(&x(1)).sub(&x(2));
        let pt: Vec<Rational> = [2, 3, 4].iter().map(|&v| Rational::from_integer(v.into())).collect();
        assert_eq!(p.evaluate(&pt), Rational::from_integer(2.into()));
        assert_eq!(c(0).evaluate(&pt), Rational::from_integer(0.into()));
    }

    #[test]
    fn coefficients_and_rebase() {
        let p = x(0).pow(2).mul(&x(1)).add(&x(2));
        let co = p.coefficients_in(0);
        assert_eq!(co.len(), 3);
        assert_eq!(co[2], x(1));
        assert_eq!(co[0], x(2));
        let wider = var_names("x", 1, 4);
        let r = p.rebase(&wider).unwrap();
        assert_eq!(r.to_string(), "x1^2 * x2 + x3");
        let narrow = var_names("x", 1, 2);
        assert!(p.rebase(&narrow).is_none());
    }
}
