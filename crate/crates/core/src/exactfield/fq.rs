//! Finite fields `F_q = F_p[X]/(m)` with `m` the lexicographically smallest
//! monic irreducible of degree `k`.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::arith::{self, inv_mod, mul_mod};
use super::FieldError;
use crate::scalar::Scalar;

pub const MAX_DEGREE: u32 = 12;
/// Largest prime accepted; keeps products of residues inside `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;
/// Work bound for choosing trial division over the Frobenius test.
const TRIAL_DIVISION_BUDGET: u128 = 200_000;

#[derive(Debug)]
pub struct FqContext {
    p: u64,
    k: u32,
    modulus: Vec<u64>,
    q: BigUint,
    q_small: Option<u64>,
}

/// Shared handle to a field context. Contexts are interned per `(p, k)`.
#[derive(Clone)]
pub struct Fq(Arc<FqContext>);

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.k == other.0.k
    }
}

impl Eq for Fq {}

impl Hash for Fq {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.k.hash(state);
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.0.p, self.0.k)
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F({})", self.0.q)
    }
}

fn cache() -> &'static Mutex<HashMap<(u64, u32), Fq>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Fq>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Builds (or fetches) the context for `F_{p^k}`.
pub fn fq_context(p: u64, k: u32) -> Result<Fq, FieldError> {
    Fq::new(p, k)
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = (f.len() - 1) as u32;
    let work: u128 = (1..=n / 2).map(|d| (p as u128).saturating_pow(d)).sum();
    if work <= TRIAL_DIVISION_BUDGET {
        arith::irreducible_by_trial_division(f, p)
    } else {
        arith::irreducible_by_frobenius(f, p)
    }
}

fn smallest_irreducible(p: u64, k: u32) -> Vec<u64> {
    if k == 1 {
        return vec![0, 1];
    }
    let k = k as usize;
    let mut digits = vec![0u64; k];
    loop {
        // a_0 varies fastest; a_{k-1} is the most significant digit
        if digits[0] != 0 {
            let mut f = digits.clone();
            f.push(1);
            if is_irreducible(&f, p) {
                return f;
            }
        }
        let mut i = 0;
        loop {
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
            assert!(i < k, "an irreducible polynomial of every degree exists");
        }
    }
}

impl Fq {
    pub fn new(p: u64, k: u32) -> Result<Fq, FieldError> {
        if !arith::is_prime(p) || p > MAX_PRIME {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 || k > MAX_DEGREE {
            return Err(FieldError::DegreeTooLarge(k));
        }
        if let Some(f) = cache().lock().expect("field cache").get(&(p, k)) {
            return Ok(f.clone());
        }
        let modulus = smallest_irreducible(p, k);
        let q = BigUint::from(p).pow(k);
        let q_small = q.to_u64();
        let ctx = Fq(Arc::new(FqContext {
            p,
            k,
            modulus,
            q,
            q_small,
        }));
        let mut guard = cache().lock().expect("field cache");
        Ok(guard.entry((p, k)).or_insert(ctx).clone())
    }

    /// Context for a prime power `q`.
    pub fn of_order(q: u64) -> Result<Fq, FieldError> {
        match arith::prime_power(q) {
            Some((p, k)) => Fq::new(p, k),
            None => Err(FieldError::NotPrime(q)),
        }
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn k(&self) -> u32 {
        self.0.k
    }

    pub fn q(&self) -> &BigUint {
        &self.0.q
    }

    pub fn q_u64(&self) -> Option<u64> {
        self.0.q_small
    }

    /// Monic modulus, lowest coefficient first (length `k + 1`).
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FqElement {
        FqElement {
            field: self.clone(),
            coeffs: vec![0; self.0.k as usize],
        }
    }

    pub fn one(&self) -> FqElement {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> FqElement {
        let p = self.0.p as i128;
        let r = (v as i128).rem_euclid(p) as u64;
        let mut e = self.zero();
        e.coeffs[0] = r;
        e
    }

    /// Element with the given coefficients in the power basis (reduced mod p
    /// and mod the field modulus).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> FqElement {
        let p = self.0.p;
        let mut v: Vec<u64> = coeffs.iter().map(|c| c % p).collect();
        arith::trim(&mut v);
        let mut r = arith::poly_rem(&v, &self.0.modulus, p);
        r.resize(self.0.k as usize, 0);
        FqElement {
            field: self.clone(),
            coeffs: r,
        }
    }

    /// The class of `X`, a root of the modulus.
    pub fn generator_root(&self) -> FqElement {
        self.from_coeffs(&[0, 1])
    }

    /// Element whose coefficients are the base-`p` digits of `index`.
    pub fn element_from_index(&self, mut index: u64) -> FqElement {
        let p = self.0.p;
        let mut e = self.zero();
        for c in e.coeffs.iter_mut() {
            *c = index % p;
            index /= p;
        }
        e
    }

    /// All elements in index order; `None` when `q` exceeds `limit`.
    pub fn elements(&self, limit: u64) -> Option<Vec<FqElement>> {
        let q = self.0.q_small?;
        if q > limit {
            return None;
        }
        Some((0..q).map(|i| self.element_from_index(i)).collect())
    }

    pub fn has_zeta(&self, n: u64) -> bool {
        has_zeta(self, n)
    }

    /// A generator of the multiplicative group (smallest index), for `q ≤ 2^40`.
    pub fn primitive_element(&self) -> Result<FqElement, FieldError> {
        let q = self.0.q_small.filter(|&q| q <= 1 << 40).ok_or_else(|| {
            FieldError::TooLarge(format!("primitive element of {}", self))
        })?;
        for i in 1..q {
            let x = self.element_from_index(i);
            if x.multiplicative_order()? == q - 1 {
                return Ok(x);
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }

    /// Uniformly random element.
    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> FqElement {
        let p = self.0.p;
        FqElement {
            field: self.clone(),
            coeffs: (0..self.0.k).map(|_| rng.gen_range(0..p)).collect(),
        }
    }
}

/// True iff `F_q` contains a primitive `n`-th root of unity.
pub fn has_zeta(ctx: &Fq, n: u64) -> bool {
    if n == 0 || arith::gcd(n, ctx.p()) != 1 {
        return false;
    }
    let qm1 = ctx.q() - BigUint::one();
    (qm1 % BigUint::from(n)).is_zero()
}

#[derive(Clone)]
pub struct FqElement {
    field: Fq,
    coeffs: Vec<u64>,
}

impl PartialEq for FqElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl Eq for FqElement {}

impl Hash for FqElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for FqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field.0.q, self)
    }
}

impl fmt::Display for FqElement {
    /// Prime-field elements print as residues; otherwise as a polynomial in
    /// the root `w` of the modulus, highest power first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.k() == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let part = match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "w".to_string(),
                (1, c) => format!("{c}*w"),
                (i, 1) => format!("w^{i}"),
                (i, c) => format!("{c}*w^{i}"),
            };
            parts.push(part);
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl FqElement {
    pub fn field(&self) -> &Fq {
        &self.field
    }

    /// Power-basis coefficients, exactly `k` of them.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Base-`p` index, inverse of [`Fq::element_from_index`].
    pub fn index(&self) -> Option<u64> {
        let p = self.field.p();
        let mut acc: u64 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(p)?.checked_add(c)?;
        }
        Some(acc)
    }

    fn same_field(&self, other: &Self) {
        assert!(
            self.field == other.field,
            "mixed field elements: {:?} and {:?}",
            self.field,
            other.field
        );
    }

    fn with_coeffs(&self, mut coeffs: Vec<u64>) -> FqElement {
        coeffs.resize(self.field.k() as usize, 0);
        FqElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn pow_big(&self, exp: &BigUint) -> FqElement {
        let mut acc = self.field.one();
        for i in (0..exp.bits()).rev() {
            acc = acc.times(&acc);
            if exp.bit(i) {
                acc = acc.times(self);
            }
        }
        acc
    }

    /// `x ↦ x^p`.
    pub fn frobenius(&self) -> FqElement {
        self.pow_u64(self.field.p())
    }

    pub fn multiplicative_order(&self) -> Result<u64, FieldError> {
        multiplicative_order(self)
    }
}

/// Smallest `d ≥ 1` with `x^d = 1`.
pub fn multiplicative_order(x: &FqElement) -> Result<u64, FieldError> {
    if Scalar::is_zero(x) {
        return Err(FieldError::ZeroElement);
    }
    let q = x
        .field
        .q_u64()
        .filter(|&q| q <= 1 << 40)
        .ok_or_else(|| FieldError::TooLarge(format!("order in {}", x.field)))?;
    let mut ord = q - 1;
    for p in arith::prime_factors(q - 1) {
        while ord % p == 0 && x.pow_u64(ord / p).is_one() {
            ord /= p;
        }
    }
    Ok(ord)
}

impl Scalar for FqElement {
    type Domain = Fq;

    fn domain(&self) -> Fq {
        self.field.clone()
    }

    fn zero(domain: &Fq) -> Self {
        domain.zero()
    }

    fn one(domain: &Fq) -> Self {
        domain.one()
    }

    fn from_int(domain: &Fq, value: i64) -> Self {
        domain.from_int(value)
    }

    fn characteristic(domain: &Fq) -> u64 {
        domain.p()
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn plus(&self, other: &Self) -> Self {
        self.same_field(other);
        let p = self.field.p();
        let c = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        self.with_coeffs(c)
    }

    fn minus(&self, other: &Self) -> Self {
        self.same_field(other);
        let p = self.field.p();
        let c = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        self.with_coeffs(c)
    }

    fn times(&self, other: &Self) -> Self {
        self.same_field(other);
        let p = self.field.p();
        if self.field.k() == 1 {
            return self.with_coeffs(vec![mul_mod(self.coeffs[0], other.coeffs[0], p)]);
        }
        let prod = arith::poly_mulmod(&self.coeffs, &other.coeffs, self.field.modulus(), p);
        self.with_coeffs(prod)
    }

    fn negated(&self) -> Self {
        let p = self.field.p();
        let c = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        self.with_coeffs(c)
    }

    fn inverse(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            return None;
        }
        let p = self.field.p();
        if self.field.k() == 1 {
            return Some(self.with_coeffs(vec![inv_mod(self.coeffs[0], p)?]));
        }
        let mut a = self.coeffs.clone();
        arith::trim(&mut a);
        let inv = arith::poly_invmod(&a, self.field.modulus(), p)?;
        Some(self.with_coeffs(inv))
    }

    fn is_compound(&self) -> bool {
        self.coeffs.iter().filter(|&&c| c != 0).count() > 1
    }

    fn modular_prime(domain: &Fq) -> Option<u64> {
        (domain.k() == 1).then(|| domain.p())
    }

    fn reduce_mod(&self, p: u64) -> Option<u64> {
        (self.field.k() == 1 && self.field.p() == p).then(|| self.coeffs[0])
    }
}

impl std::ops::Add for FqElement {
    type Output = FqElement;
    fn add(self, rhs: Self) -> FqElement {
        self.plus(&rhs)
    }
}

impl std::ops::Sub for FqElement {
    type Output = FqElement;
    fn sub(self, rhs: Self) -> FqElement {
        self.minus(&rhs)
    }
}

impl std::ops::Mul for FqElement {
    type Output = FqElement;
    fn mul(self, rhs: Self) -> FqElement {
        self.times(&rhs)
    }
}

impl std::ops::Neg for FqElement {
    type Output = FqElement;
    fn neg(self) -> FqElement {
        self.negated()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Independent irreducibility oracle: a polynomial of degree 2 or 3 is
    /// irreducible iff it has no root.
    fn has_root(f: &[u64], p: u64) -> bool {
        (0..p).any(|x| {
            let mut acc = 0u64;
            for &c in f.iter().rev() {
                acc = (acc * x + c) % p;
            }
            acc == 0
        })
    }

    #[test]
    fn context_examples() {
        assert_eq!(Fq::new(2, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(Fq::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(Fq::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert!(matches!(Fq::new(4, 1), Err(FieldError::NotPrime(4))));
        assert!(matches!(Fq::new(2, 13), Err(FieldError::DegreeTooLarge(13))));
    }

    #[test]
    fn modulus_is_first_rootless_for_small_degrees() {
        for p in [2u64, 3, 5, 7] {
            for k in [2u32, 3] {
                let mut first = None;
                for idx in 0..p.pow(k) {
                    let mut f: Vec<u64> = (0..k).map(|i| idx / p.pow(i) % p).collect();
                    f.push(1);
                    if !has_root(&f, p) {
                        first = Some(f);
                        break;
                    }
                }
                assert_eq!(Fq::new(p, k).unwrap().modulus(), first.unwrap().as_slice());
            }
        }
    }

    #[test]
    fn order_examples() {
        let f5 = Fq::new(5, 1).unwrap();
        assert_eq!(f5.from_int(1).multiplicative_order().unwrap(), 1);
        assert_eq!(f5.from_int(2).multiplicative_order().unwrap(), 4);
        let f4 = Fq::new(2, 2).unwrap();
        assert_eq!(f4.generator_root().multiplicative_order().unwrap(), 3);
        assert!(matches!(
            f4.zero().multiplicative_order(),
            Err(FieldError::ZeroElement)
        ));
    }

    #[test]
    fn zeta_examples() {
        assert!(Fq::new(2, 2).unwrap().has_zeta(3));
        assert!(!Fq::new(2, 1).unwrap().has_zeta(2));
        assert!(Fq::new(7, 1).unwrap().has_zeta(3));
    }

    fn small_fields() -> Vec<Fq> {
        [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 1), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2), (7, 1), (7, 2)]
            .into_iter()
            .map(|(p, k)| Fq::new(p, k).unwrap())
            .collect()
    }

    #[test]
    fn fermat_exhaustive() {
        for f in small_fields() {
            let q = f.q_u64().unwrap();
            for x in f.elements(81).unwrap().into_iter().skip(1) {
                assert!(x.pow_u64(q - 1).is_one(), "{x:?}");
            }
        }
    }

    #[test]
    fn has_zeta_matches_brute_force() {
        for f in small_fields() {
            let elems = f.elements(81).unwrap();
            // orders by repeated multiplication, independent of the library routine
            let orders: Vec<u64> = elems[1..]
                .iter()
                .map(|x| {
                    let mut y = x.clone();
                    let mut d = 1;
                    while !y.is_one() {
                        y = y.times(x);
                        d += 1;
                    }
                    d
                })
                .collect();
            for n in 1..=30u64 {
                assert_eq!(f.has_zeta(n), orders.contains(&n), "{f:?} n={n}");
            }
            for (x, &d) in elems[1..].iter().zip(&orders) {
                assert_eq!(x.multiplicative_order().unwrap(), d);
            }
        }
    }

    #[test]
    fn field_axioms_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for f in small_fields() {
            for _ in 0..1000 {
                let a = f.random(&mut rng);
                let b = f.random(&mut rng);
                let c = f.random(&mut rng);
                assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
                assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
                assert_eq!(a.plus(&b).minus(&b), a);
                if let Some(inv) = a.inverse() {
                    assert!(a.times(&inv).is_one());
                }
            }
        }
    }

    #[test]
    fn index_roundtrip_and_display() {
        let f9 = Fq::new(3, 2).unwrap();
        for i in 0..9 {
            assert_eq!(f9.element_from_index(i).index(), Some(i));
        }
        assert_eq!(f9.element_from_index(7).to_string(), "2*w + 1");
        assert!(f9.element_from_index(7).is_compound());
        assert_eq!(Fq::new(5, 1).unwrap().from_int(-1).to_string(), "4");
    }

    #[test]
    fn large_contexts_build() {
        let f = Fq::new(10007, 2).unwrap();
        assert_eq!(f.k(), 2);
        let big = Fq::new(2, 12).unwrap();
        assert_eq!(big.q_u64(), Some(4096));
        let x = big.generator_root();
        assert!(x.pow_u64(4095).is_one());
    }
}
