//! Multivariate gcd by recursive content / primitive-part reduction, with a
//! modular shortcut that certifies coprimality.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::multipoly::MultiPoly;
use crate::exactfield::arith::{mul_mod, poly_gcd, pow_mod, trim};
use crate::exactfield::{Fq, FqElement, UniPoly, MAX_DEGREE};
use crate::scalar::Scalar;

/// Greatest common divisor, normalized to graded-lex leading coefficient 1
/// (zero only when both inputs are zero).
pub fn gcd<C: Scalar>(a: &MultiPoly<C>, b: &MultiPoly<C>) -> MultiPoly<C> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let one = MultiPoly::one(a.domain(), a.vars());
    if a.is_constant() || b.is_constant() {
        return one;
    }
    let va = a.occurring_vars();
    let vb = b.occurring_vars();
    let common: Vec<usize> = va.iter().copied().filter(|v| vb.contains(v)).collect();
    if common.is_empty() {
        // a common factor would be free of every variable
        return one;
    }
    if certify_coprime(a, b, &common) {
        return one;
    }
    let v = common[0];
    let ca = content(a, v);
    let cb = content(b, v);
    let c = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = primitive_prs(pa, pb, v);
    c.mul(&g).monic()
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content<C: Scalar>(p: &MultiPoly<C>, v: usize) -> MultiPoly<C> {
    let mut acc = MultiPoly::zero(p.domain(), p.vars());
    for c in p.coefficients_in(v).into_iter().filter(|c| !c.is_zero()) {
        acc = gcd(&acc, &c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn primitive_part<C: Scalar>(p: &MultiPoly<C>, v: usize) -> MultiPoly<C> {
    if p.is_zero() {
        return p.clone();
    }
    p.div_exact(&content(p, v)).expect("content divides")
}

/// Pseudo-remainder of `a` by `b` with respect to `v`.
fn prem<C: Scalar>(a: &MultiPoly<C>, b: &MultiPoly<C>, v: usize) -> MultiPoly<C> {
    let db = b.degree_in(v);
    let lcb = b.coefficients_in(v).pop().expect("nonzero divisor");
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lcr = r.coefficients_in(v).pop().unwrap();
        let shift = r.var_pow(v, dr - db);
        let one = C::one(r.domain());
        r = r.mul(&lcb).sub(&b.mul(&lcr).mul_term(&shift, &one));
    }
    r
}

fn primitive_prs<C: Scalar>(mut a: MultiPoly<C>, mut b: MultiPoly<C>, v: usize) -> MultiPoly<C> {
    let one = MultiPoly::one(a.domain(), a.vars());
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    if b.degree_in(v) == 0 {
        return one;
    }
    loop {
        let r = prem(&a, &b, v);
        if r.is_zero() {
            return b.monic();
        }
        if r.degree_in(v) == 0 {
            return one;
        }
        a = b;
        b = primitive_part(&r, v);
    }
}

/// Univariate image in `F_p[v]` after specializing the other variables.
fn image<C: Scalar>(p: &MultiPoly<C>, v: usize, point: &[u64], prime: u64) -> Option<Vec<u64>> {
    let mut out = vec![0u64; p.degree_in(v) as usize + 1];
    for (m, c) in p.terms() {
        let mut t = c.reduce_mod(prime)?;
        for (j, &e) in m.0.iter().enumerate() {
            if j != v && e > 0 {
                t = mul_mod(t, pow_mod(point[j], e as u64, prime), prime);
            }
        }
        let slot = &mut out[m.0[v] as usize];
        *slot = (*slot + t) % prime;
    }
    trim(&mut out);
    Some(out)
}

/// Image in `F_{p^k}[v]`, used when `F_p` is too small for random points.
fn image_ext<C: Scalar>(p: &MultiPoly<C>, v: usize, point: &[FqElement], ext: &Fq) -> Option<UniPoly> {
    let mut out = vec![ext.zero(); p.degree_in(v) as usize + 1];
    for (m, c) in p.terms() {
        let mut t = ext.from_int(c.reduce_mod(ext.p())? as i64);
        for (j, &e) in m.0.iter().enumerate() {
            if j != v && e > 0 {
                t = t.times(&point[j].pow_u64(e as u64));
            }
        }
        let slot = &mut out[m.0[v] as usize];
        *slot = slot.plus(&t);
    }
    Some(UniPoly::new(ext, out))
}

/// True only if `a` and `b` are certainly coprime: for each shared variable
/// a specialization preserving both degrees has coprime images.
fn certify_coprime<C: Scalar>(a: &MultiPoly<C>, b: &MultiPoly<C>, common: &[usize]) -> bool {
    let Some(prime) = C::modular_prime(a.domain()) else {
        return false;
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0ff_ee00 ^ prime);
    if prime < SMALL_PRIME {
        let k = (1..=MAX_DEGREE).find(|&k| prime.pow(k) >= SMALL_PRIME).unwrap_or(MAX_DEGREE);
        let Ok(ext) = Fq::new(prime, k) else {
            return false;
        };
        return certify_with(common, a, b, |v| {
            let point: Vec<FqElement> = (0..a.nvars()).map(|_| ext.random(&mut rng)).collect();
            let ia = image_ext(a, v, &point, &ext)?;
            let ib = image_ext(b, v, &point, &ext)?;
            Some((ia.degree(), ib.degree(), ia.gcd(&ib).degree() == Some(0)))
        });
    }
    certify_with(common, a, b, |v| {
        let point: Vec<u64> = (0..a.nvars()).map(|_| rng.gen_range(0..prime)).collect();
        let ia = image(a, v, &point, prime)?;
        let ib = image(b, v, &point, prime)?;
        let coprime = poly_gcd(&ia, &ib, prime).len() == 1;
        Some((ia.len().checked_sub(1), ib.len().checked_sub(1), coprime))
    })
}

/// Below this size the base field is replaced by an extension for sampling.
const SMALL_PRIME: u64 = 1 << 16;

/// `trial(v)` returns the image degrees in `v` and whether the images are
/// coprime; `None` aborts certification.
fn certify_with<C: Scalar>(
    common: &[usize],
    a: &MultiPoly<C>,
    b: &MultiPoly<C>,
    mut trial: impl FnMut(usize) -> Option<(Option<usize>, Option<usize>, bool)>,
) -> bool {
    'vars: for &v in common {
        let (da, db) = (a.degree_in(v) as usize, b.degree_in(v) as usize);
        for _ in 0..3 {
            let Some((ia, ib, coprime)) = trial(v) else {
                return false;
            };
            if ia != Some(da) || ib != Some(db) {
                continue;
            }
            if coprime {
                continue 'vars;
            }
            return false;
        }
        return false;
    }
    true
}
