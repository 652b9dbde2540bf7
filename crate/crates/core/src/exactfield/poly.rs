//! Univariate polynomials over `F_q`: Euclidean arithmetic, factorization
//! (square-free, distinct-degree, equal-degree), residue fields and
//! embeddings between finite fields.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::fq::{Fq, FqElement};
use super::FieldError;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    field: Fq,
    /// Lowest degree first, no trailing zeros.
    coeffs: Vec<FqElement>,
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({})", self)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coef = if c.is_compound() {
                format!("({c})")
            } else {
                c.to_string()
            };
            parts.push(match i {
                0 => coef,
                _ => {
                    let x = if i == 1 { "X".to_string() } else { format!("X^{i}") };
                    if c.is_one() {
                        x
                    } else {
                        format!("{coef}*{x}")
                    }
                }
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl UniPoly {
    pub fn new(field: &Fq, mut coeffs: Vec<FqElement>) -> UniPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Fq) -> UniPoly {
        UniPoly::new(field, Vec::new())
    }

    pub fn constant(c: FqElement) -> UniPoly {
        let f = c.field().clone();
        UniPoly::new(&f, vec![c])
    }

    pub fn one(field: &Fq) -> UniPoly {
        UniPoly::constant(field.one())
    }

    /// The monomial `X`.
    pub fn x(field: &Fq) -> UniPoly {
        UniPoly::new(field, vec![field.zero(), field.one()])
    }

    /// `X - a`.
    pub fn linear(a: &FqElement) -> UniPoly {
        let f = a.field().clone();
        UniPoly::new(&f, vec![a.negated(), f.one()])
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn coeffs(&self) -> &[FqElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FqElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&FqElement> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| self.coeff(i).plus(&other.coeff(i))).collect();
        UniPoly::new(&self.field, c)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| self.coeff(i).minus(&other.coeff(i))).collect();
        UniPoly::new(&self.field, c)
    }

    pub fn scale(&self, s: &FqElement) -> UniPoly {
        UniPoly::new(&self.field, self.coeffs.iter().map(|c| c.times(s)).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        UniPoly::new(&self.field, out)
    }

    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = d.lead().unwrap().inverse().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UniPoly::zero(&self.field), self.clone());
        }
        let mut q = vec![self.field.zero(); r.len() - dd];
        while r.len() > dd {
            let shift = r.len() - 1 - dd;
            let c = r.last().unwrap().times(&lead_inv);
            for (i, di) in d.coeffs.iter().enumerate() {
                r[shift + i] = r[shift + i].minus(&c.times(di));
            }
            q[shift] = c;
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        (UniPoly::new(&self.field, q), UniPoly::new(&self.field, r))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.divrem(d).1
    }

    pub fn monic(&self) -> UniPoly {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&l.inverse().unwrap()),
        }
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UniPoly {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.times(&self.field.from_int(i as i64)))
            .collect();
        UniPoly::new(&self.field, c)
    }

    pub fn eval(&self, x: &FqElement) -> FqElement {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x).plus(c);
        }
        acc
    }

    pub fn mulmod(&self, other: &UniPoly, m: &UniPoly) -> UniPoly {
        self.mul(other).rem(m)
    }

    pub fn powmod(&self, exp: &BigUint, m: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::one(&self.field).rem(m);
        let base = self.rem(m);
        for i in (0..exp.bits()).rev() {
            acc = acc.mulmod(&acc, m);
            if exp.bit(i) {
                acc = acc.mulmod(&base, m);
            }
        }
        acc
    }

    fn coeff_indices(&self) -> Vec<Option<u64>> {
        self.coeffs.iter().map(|c| c.index()).collect()
    }
}

/// Deterministic ordering of monic factors: by degree, then coefficients
/// from the top down.
fn factor_key(f: &UniPoly) -> (usize, Vec<Option<u64>>) {
    let mut idx = f.coeff_indices();
    idx.reverse();
    (f.coeffs.len(), idx)
}

/// `x^{1/p}` in `F_q`.
fn pth_root(x: &FqElement) -> FqElement {
    let f = x.field();
    let mut y = x.clone();
    for _ in 1..f.k() {
        y = y.frobenius();
    }
    y
}

/// Square-free decomposition of a monic polynomial: pairs `(g, e)` with the
/// `g` pairwise coprime, square-free and `f = ∏ g^e`.
pub fn squarefree_factorization(f: &UniPoly) -> Vec<(UniPoly, u32)> {
    let field = f.field().clone();
    let p = field.p() as u32;
    let f = f.monic();
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.divrem(&c).0;
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.divrem(&y).0;
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.divrem(&w).0;
    }
    if !c.is_one() {
        // c is a polynomial in X^p
        let deg = c.degree().unwrap();
        let root: Vec<FqElement> = (0..=deg / p as usize)
            .map(|j| pth_root(&c.coeff(j * p as usize)))
            .collect();
        let r = UniPoly::new(&field, root);
        for (g, e) in squarefree_factorization(&r) {
            out.push((g, e * p));
        }
    }
    out
}

/// Distinct-degree factorization of a monic square-free polynomial.
pub fn distinct_degree_factorization(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    let field = f.field().clone();
    let q = field.q().clone();
    let x = UniPoly::x(&field);
    let mut rest = f.monic();
    let mut h = x.rem(&rest);
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.powmod(&q, &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            rest = rest.divrem(&g).0;
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        let deg = rest.degree().unwrap();
        out.push((rest, deg));
    }
    out
}

/// Splits a monic square-free product of irreducibles of degree `d`.
pub fn equal_degree_factorization(f: &UniPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<UniPoly> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![f.monic()];
    }
    let field = f.field().clone();
    let p = field.p();
    loop {
        let a = UniPoly::new(&field, (0..n).map(|_| field.random(rng)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace from F_{q^d} down to F_2
            let bits = field.k() as usize * d;
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..bits {
                t = t.mulmod(&t, f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = (field.q().pow(d as u32) - BigUint::one()) / 2u32;
            a.powmod(&e, f).sub(&UniPoly::one(&field))
        };
        let g = f.gcd(&b);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = f.divrem(&g).0.monic();
            let mut out = equal_degree_factorization(&g, d, rng);
            out.extend(equal_degree_factorization(&h, d, rng));
            return out;
        }
    }
}

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted by degree then coefficients. The leading coefficient is dropped.
pub fn factor(f: &UniPoly) -> Vec<(UniPoly, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    for (g, e) in squarefree_factorization(f) {
        for (h, d) in distinct_degree_factorization(&g) {
            for irr in equal_degree_factorization(&h, d, &mut rng) {
                out.push((irr, e));
            }
        }
    }
    out.sort_by_key(|(g, e)| (factor_key(g), *e));
    out
}

/// Distinct roots in `F_q`, in index order.
pub fn roots(f: &UniPoly) -> Vec<FqElement> {
    let mut out: Vec<FqElement> = factor(f)
        .into_iter()
        .filter(|(g, _)| g.degree() == Some(1))
        .map(|(g, _)| g.coeff(0).negated())
        .collect();
    out.sort_by_key(|x| x.index());
    out
}

pub fn is_irreducible(f: &UniPoly) -> bool {
    let fac = factor(f);
    fac.len() == 1 && fac[0].1 == 1
}

/// The field `F_q[X]/(g)` for a monic irreducible `g`, elements being
/// polynomials reduced modulo `g`.
#[derive(Clone, Debug)]
pub struct ResidueField {
    modulus: UniPoly,
}

impl ResidueField {
    pub fn new(g: &UniPoly) -> ResidueField {
        ResidueField { modulus: g.monic() }
    }

    pub fn base(&self) -> &Fq {
        self.modulus.field()
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    pub fn reduce(&self, a: &UniPoly) -> UniPoly {
        a.rem(&self.modulus)
    }

    /// The class of `X`, a root of the modulus.
    pub fn root(&self) -> UniPoly {
        self.reduce(&UniPoly::x(self.base()))
    }

    pub fn embed(&self, c: &FqElement) -> UniPoly {
        UniPoly::constant(c.clone())
    }

    pub fn mul(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        a.mulmod(b, &self.modulus)
    }

    pub fn inverse(&self, a: &UniPoly) -> Option<UniPoly> {
        let a = self.reduce(a);
        if a.is_zero() {
            return None;
        }
        // extended Euclid
        let (mut r0, mut r1) = (self.modulus.clone(), a);
        let (mut s0, mut s1) = (UniPoly::zero(self.base()), UniPoly::one(self.base()));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        let c = r0.coeff(0).inverse()?;
        if r0.degree() != Some(0) {
            return None;
        }
        Some(self.reduce(&s0.scale(&c)))
    }

    /// `a^q`, the generator of `Gal(F_q[X]/(g) / F_q)`.
    pub fn frobenius(&self, a: &UniPoly) -> UniPoly {
        a.powmod(self.base().q(), &self.modulus)
    }

    /// Minimal polynomial of `a` over the base field, as the product of
    /// `X - σ^i(a)` over the distinct Frobenius conjugates.
    pub fn minimal_polynomial(&self, a: &UniPoly) -> UniPoly {
        let a = self.reduce(a);
        let mut conj = vec![a.clone()];
        loop {
            let next = self.frobenius(conj.last().unwrap());
            if next == a {
                break;
            }
            conj.push(next);
        }
        // product in (F_q[X]/(g))[Y]; coefficients are residues
        let base = self.base().clone();
        let mut prod: Vec<UniPoly> = vec![UniPoly::one(&base)];
        for c in &conj {
            let mut next = vec![UniPoly::zero(&base); prod.len() + 1];
            for (i, pi) in prod.iter().enumerate() {
                next[i + 1] = next[i + 1].add(pi);
                next[i] = next[i].sub(&self.mul(pi, c));
            }
            prod = next;
        }
        let coeffs = prod
            .into_iter()
            .map(|r| {
                debug_assert!(r.degree().unwrap_or(0) == 0, "conjugate product leaves the base field");
                r.coeff(0)
            })
            .collect();
        UniPoly::new(&base, coeffs)
    }
}

/// A field embedding `F_{p^a} → F_{p^b}` for `a | b`, determined by the
/// image of the root of the source modulus.
#[derive(Clone, Debug)]
pub struct FieldEmbedding {
    src: Fq,
    dst: Fq,
    image: FqElement,
}

impl FieldEmbedding {
    pub fn new(src: &Fq, dst: &Fq) -> Result<FieldEmbedding, FieldError> {
        if src.p() != dst.p() || dst.k() % src.k() != 0 {
            return Err(FieldError::DomainMismatch);
        }
        let m: Vec<FqElement> = src.modulus().iter().map(|&c| dst.from_int(c as i64)).collect();
        let m = UniPoly::new(dst, m);
        let image = roots(&m)
            .into_iter()
            .next()
            .ok_or(FieldError::DomainMismatch)?;
        Ok(FieldEmbedding {
            src: src.clone(),
            dst: dst.clone(),
            image,
        })
    }

    pub fn source(&self) -> &Fq {
        &self.src
    }

    pub fn target(&self) -> &Fq {
        &self.dst
    }

    pub fn map(&self, x: &FqElement) -> FqElement {
        assert!(x.field() == &self.src, "element outside the embedding source");
        let mut acc = self.dst.zero();
        for &c in x.coeffs().iter().rev() {
            acc = acc.times(&self.image).plus(&self.dst.from_int(c as i64));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(f: &Fq, c: &[i64]) -> UniPoly {
        UniPoly::new(f, c.iter().map(|&x| f.from_int(x)).collect())
    }

    fn product(fs: &[(UniPoly, u32)], field: &Fq) -> UniPoly {
        let mut acc = UniPoly::one(field);
        for (g, e) in fs {
            for _ in 0..*e {
                acc = acc.mul(g);
            }
        }
        acc
    }

    #[test]
    fn factor_reconstructs_and_is_irreducible() {
        for (p, k) in [(2u64, 1u32), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)] {
            let field = Fq::new(p, k).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(p * 31 + k as u64);
            for deg in 1..=9usize {
                for _ in 0..4 {
                    let mut c: Vec<FqElement> = (0..deg).map(|_| field.random(&mut rng)).collect();
                    c.push(field.one());
                    let f = UniPoly::new(&field, c);
                    // force a repeated factor sometimes
                    let f = if deg % 3 == 0 { f.mul(&f) } else { f };
                    let fac = factor(&f);
                    assert_eq!(product(&fac, &field), f, "{f}");
                    for (g, _) in &fac {
                        // brute-force: irreducible factors of degree ≤ 3 are rootless
                        if g.degree().unwrap() <= 3 && g.degree().unwrap() > 1 {
                            if let Some(elts) = field.elements(256) {
                                assert!(elts.iter().all(|x| !g.eval(x).is_zero()));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_power_polynomial() {
        // X^4 + X^2 + 1 = (X^2 + X + 1)^2 over F_2
        let f2 = Fq::new(2, 1).unwrap();
        let f = poly(&f2, &[1, 0, 1, 0, 1]);
        let fac = factor(&f);
        assert_eq!(fac.len(), 1);
        assert_eq!(fac[0].0, poly(&f2, &[1, 1, 1]));
        assert_eq!(fac[0].1, 2);
    }

    #[test]
    fn roots_match_scan() {
        let f = Fq::new(3, 2).unwrap();
        let elems = f.elements(100).unwrap();
        let g = poly(&f, &[1, 0, 0, 0, 1]); // X^4 + 1
        let expected: Vec<_> = elems.iter().filter(|x| g.eval(x).is_zero()).cloned().collect();
        assert_eq!(roots(&g), expected);
    }

    #[test]
    fn minimal_polynomial_of_root() {
        let f = Fq::new(5, 1).unwrap();
        let g = poly(&f, &[1, 1, 0, 1]); // X^3 + X + 1, irreducible over F_5
        assert!(is_irreducible(&g));
        let r = ResidueField::new(&g);
        assert_eq!(r.minimal_polynomial(&r.root()), g);
        // a base-field element has a linear minimal polynomial
        let c = r.embed(&f.from_int(3));
        assert_eq!(r.minimal_polynomial(&c), poly(&f, &[-3, 1]));
        let inv = r.inverse(&r.root()).unwrap();
        assert!(r.mul(&inv, &r.root()).is_one());
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let src = Fq::new(3, 2).unwrap();
        let dst = Fq::new(3, 4).unwrap();
        let e = FieldEmbedding::new(&src, &dst).unwrap();
        let elems = src.elements(9).unwrap();
        for a in &elems {
            for b in &elems {
                assert_eq!(e.map(&a.times(b)), e.map(a).times(&e.map(b)));
                assert_eq!(e.map(&a.plus(b)), e.map(a).plus(&e.map(b)));
            }
        }
        assert!(FieldEmbedding::new(&Fq::new(3, 2).unwrap(), &Fq::new(3, 3).unwrap()).is_err());
    }
}
