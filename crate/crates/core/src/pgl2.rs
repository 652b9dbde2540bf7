//! `GL_2` and `PGL_2` over finite fields: canonical class representatives,
//! projective orders, the trace invariant `tr²/det`, exhaustive embedding
//! search for small families, and explicit dihedral and elementary abelian
//! representations.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::exactfield::{roots, FieldEmbedding, FieldError, Fq, FqElement, UniPoly};
use crate::groups::GroupExpr::{self, *};
use crate::scalar::Scalar;

/// Largest `q` accepted by the public enumeration and search entry points.
pub const MAX_Q: u64 = 27;
/// Largest `q` the table-driven routines accept when asked explicitly.
pub const MAX_TABLE_Q: u64 = 81;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Pgl2Error {
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("the characteristic must be odd")]
    EvenChar,
    #[error("zeta_{0} + zeta_{0}^-1 is not in the field")]
    RealZetaAbsent(u64),
    #[error("the alphas are linearly dependent over the prime field")]
    DependentAlphas,
    #[error("singular matrix")]
    Singular,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A 2×2 matrix `[[a, b], [c, d]]` over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: FqElement,
    pub b: FqElement,
    pub c: FqElement,
    pub d: FqElement,
}

impl Mat2 {
    pub fn new(a: FqElement, b: FqElement, c: FqElement, d: FqElement) -> Mat2 {
        Mat2 { a, b, c, d }
    }

    /// Entries given as integers reduced into `field`.
    pub fn from_ints(field: &Fq, e: [i64; 4]) -> Mat2 {
        Mat2::new(field.from_int(e[0]), field.from_int(e[1]), field.from_int(e[2]), field.from_int(e[3]))
    }

    pub fn identity(field: &Fq) -> Mat2 {
        Mat2::from_ints(field, [1, 0, 0, 1])
    }

    pub fn field(&self) -> Fq {
        self.a.domain()
    }

    pub fn det(&self) -> FqElement {
        self.a.times(&self.d).minus(&self.b.times(&self.c))
    }

    pub fn trace(&self) -> FqElement {
        self.a.plus(&self.d)
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: self.a.times(&o.a).plus(&self.b.times(&o.c)),
            b: self.a.times(&o.b).plus(&self.b.times(&o.d)),
            c: self.c.times(&o.a).plus(&self.d.times(&o.c)),
            d: self.c.times(&o.b).plus(&self.d.times(&o.d)),
        }
    }

    pub fn pow(&self, mut e: u64) -> Mat2 {
        let mut base = self.clone();
        let mut acc = Mat2::identity(&self.field());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn inverse(&self) -> Option<Mat2> {
        let di = self.det().inverse()?;
        Some(Mat2 {
            a: self.d.times(&di),
            b: self.b.negated().times(&di),
            c: self.c.negated().times(&di),
            d: self.a.times(&di),
        })
    }

    /// A nonzero scalar multiple of the identity.
    pub fn is_scalar(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d && !self.a.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.is_scalar() && self.a.is_one()
    }

    fn entries(&self) -> [&FqElement; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// Order in `GL_2`, up to `limit`.
    pub fn order(&self, limit: u64) -> Option<u64> {
        let mut m = self.clone();
        for k in 1..=limit {
            if m.is_identity() {
                return Some(k);
            }
            m = m.mul(self);
        }
        None
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl Serialize for Mat2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows = [
            [self.a.to_string(), self.b.to_string()],
            [self.c.to_string(), self.d.to_string()],
        ];
        rows.serialize(s)
    }
}

/// An element of `PGL_2(F_q)`, stored as the representative whose first
/// nonzero entry in reading order is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct PGL2Element {
    rep: Mat2,
}

impl PGL2Element {
    pub fn new(m: &Mat2) -> Result<PGL2Element, Pgl2Error> {
        if m.det().is_zero() {
            return Err(Pgl2Error::Singular);
        }
        let lead = m.entries().into_iter().find(|x| !x.is_zero()).unwrap();
        let s = lead.inverse().unwrap();
        let rep = Mat2::new(m.a.times(&s), m.b.times(&s), m.c.times(&s), m.d.times(&s));
        Ok(PGL2Element { rep })
    }

    pub fn rep(&self) -> &Mat2 {
        &self.rep
    }

    pub fn mul(&self, o: &PGL2Element) -> PGL2Element {
        PGL2Element::new(&self.rep.mul(&o.rep)).expect("product of invertible matrices")
    }

    pub fn is_identity(&self) -> bool {
        self.rep.is_identity()
    }
}

impl fmt::Display for PGL2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rep.fmt(f)
    }
}

/// Order in `PGL_2`: the least `d` with `rep^d` scalar.
pub fn pgl2_order(e: &PGL2Element) -> u64 {
    let mut m = e.rep.clone();
    let mut k = 1;
    while !m.is_scalar() {
        m = m.mul(&e.rep);
        k += 1;
    }
    k
}

/// `tr(rep)² / det(rep)`, independent of the representative.
pub fn trace_invariant(e: &PGL2Element) -> FqElement {
    let t = e.rep.trace();
    t.times(&t).times(&e.rep.det().inverse().unwrap())
}

/// Roots in `F_{q²}` of `X² − (t − 2)X + 1`: for an element of order `n`
/// prime to the characteristic with invariant `t`, these are the primitive
/// `n`-th roots of unity `ζ, ζ⁻¹` (the ratio of the eigenvalues).
pub fn eigenvalue_ratio_roots(t: &FqElement) -> Result<Vec<FqElement>, Pgl2Error> {
    let base = t.domain();
    let ext = Fq::new(base.p(), 2 * base.k())?;
    let emb = FieldEmbedding::new(&base, &ext)?;
    let two = base.from_int(2);
    let mid = emb.map(&t.minus(&two).negated());
    let poly = UniPoly::new(&ext, vec![ext.one(), mid, ext.one()]);
    Ok(roots(&poly))
}

fn check_q(field: &Fq, cap: u64) -> Result<usize, Pgl2Error> {
    match field.q_u64() {
        Some(q) if q <= cap => Ok(q as usize),
        _ => Err(Pgl2Error::TooLarge(format!("q = {} above {cap}", field.q()))),
    }
}

/// Table-driven arithmetic in `PGL_2(F_q)` for small `q`; elements are
/// canonical index quadruples.
pub struct Pgl2Table {
    field: Fq,
    q: usize,
    elems: Vec<FqElement>,
    add: Vec<u16>,
    mul: Vec<u16>,
    inv: Vec<u16>,
    zero: u16,
    one: u16,
}

pub type Key = [u16; 4];

impl Pgl2Table {
    /// Tables for `F_q` with `q ≤ cap` (at most [`MAX_TABLE_Q`]).
    pub fn new(field: &Fq, cap: u64) -> Result<Pgl2Table, Pgl2Error> {
        let q = check_q(field, cap.min(MAX_TABLE_Q))?;
        let elems = field.elements(q as u64).expect("q checked");
        let pos = |x: &FqElement| x.index().expect("small field") as u16;
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for i in 0..q {
            for j in 0..q {
                add[i * q + j] = pos(&elems[i].plus(&elems[j]));
                mul[i * q + j] = pos(&elems[i].times(&elems[j]));
            }
        }
        let inv = elems
            .iter()
            .map(|x| x.inverse().map(|y| pos(&y)).unwrap_or(u16::MAX))
            .collect();
        let zero = pos(&field.zero());
        let one = pos(&field.one());
        Ok(Pgl2Table {
            field: field.clone(),
            q,
            elems,
            add,
            mul,
            inv,
            zero,
            one,
        })
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    fn ad(&self, x: u16, y: u16) -> u16 {
        self.add[x as usize * self.q + y as usize]
    }

    fn mu(&self, x: u16, y: u16) -> u16 {
        self.mul[x as usize * self.q + y as usize]
    }

    fn canonical(&self, m: Key) -> Key {
        let lead = *m.iter().find(|&&x| x != self.zero).expect("nonzero matrix");
        if lead == self.one {
            return m;
        }
        let s = self.inv[lead as usize];
        m.map(|x| self.mu(x, s))
    }

    /// Product in `PGL_2`, canonicalized.
    pub fn mul(&self, x: &Key, y: &Key) -> Key {
        self.canonical(self.mul_raw(x, y))
    }

    fn mul_raw(&self, x: &Key, y: &Key) -> Key {
        [
            self.ad(self.mu(x[0], y[0]), self.mu(x[1], y[2])),
            self.ad(self.mu(x[0], y[1]), self.mu(x[1], y[3])),
            self.ad(self.mu(x[2], y[0]), self.mu(x[3], y[2])),
            self.ad(self.mu(x[2], y[1]), self.mu(x[3], y[3])),
        ]
    }

    fn is_scalar(&self, m: &Key) -> bool {
        m[1] == self.zero && m[2] == self.zero && m[0] == m[3]
    }

    pub fn identity(&self) -> Key {
        [self.one, self.zero, self.zero, self.one]
    }

    pub fn order(&self, x: &Key) -> u64 {
        let mut m = *x;
        let mut k = 1;
        while !self.is_scalar(&m) {
            m = self.mul_raw(&m, x);
            k += 1;
        }
        k
    }

    /// All `q³ − q` canonical elements: `a = 1` first, then `a = 0, b = 1`,
    /// each in increasing index order.
    pub fn elements(&self) -> Vec<Key> {
        let q = self.q as u16;
        let mut out = Vec::with_capacity(self.q * self.q * self.q);
        for b in 0..q {
            for c in 0..q {
                let bc = self.mu(b, c);
                for d in 0..q {
                    if d != bc {
                        out.push([self.one, b, c, d]);
                    }
                }
            }
        }
        for c in 0..q {
            if c == self.zero {
                continue;
            }
            for d in 0..q {
                out.push([self.zero, self.one, c, d]);
            }
        }
        out
    }

    pub fn key_of(&self, e: &PGL2Element) -> Key {
        let pos = |x: &FqElement| x.index().expect("small field") as u16;
        let r = e.rep();
        [pos(&r.a), pos(&r.b), pos(&r.c), pos(&r.d)]
    }

    pub fn element(&self, k: &Key) -> PGL2Element {
        let e = |i: u16| self.elems[i as usize].clone();
        PGL2Element {
            rep: Mat2::new(e(k[0]), e(k[1]), e(k[2]), e(k[3])),
        }
    }

    /// `tr²/det` as a field index.
    pub fn trace_invariant(&self, k: &Key) -> u16 {
        let t = self.ad(k[0], k[3]);
        let det = self.ad(self.mu(k[0], k[3]), self.neg(self.mu(k[1], k[2])));
        self.mu(self.mu(t, t), self.inv[det as usize])
    }

    fn neg(&self, x: u16) -> u16 {
        (0..self.q as u16).find(|&y| self.ad(x, y) == self.zero).unwrap()
    }

    pub fn field_element(&self, i: u16) -> FqElement {
        self.elems[i as usize].clone()
    }

    /// Closure of a set of generators.
    fn generated(&self, gens: &[Key]) -> HashSet<Key> {
        let mut seen: HashSet<Key> = HashSet::from([self.identity()]);
        let mut frontier = vec![self.identity()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.mul(&x, g);
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        seen
    }
}

/// All elements of `PGL_2(F_q)` for `q ≤ 27`, canonical and in a fixed order.
pub fn pgl2_enumerate(field: &Fq) -> Result<Vec<PGL2Element>, Pgl2Error> {
    let t = Pgl2Table::new(field, MAX_Q)?;
    Ok(t.elements().iter().map(|k| t.element(k)).collect())
}

/// Number of elements of each order.
pub fn order_census(field: &Fq) -> Result<BTreeMap<u64, u64>, Pgl2Error> {
    let t = Pgl2Table::new(field, MAX_Q)?;
    let mut census = BTreeMap::new();
    for k in t.elements() {
        *census.entry(t.order(&k)).or_insert(0) += 1;
    }
    Ok(census)
}

/// Outcome of an embedding search; the witness lists images of the
/// standard generators of the group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pgl2Embedding {
    Embeds(Vec<PGL2Element>),
    No,
}

impl Pgl2Embedding {
    pub fn embeds(&self) -> bool {
        matches!(self, Pgl2Embedding::Embeds(_))
    }
}

/// Exhaustive search for `h ↪ PGL_2(F_q)`, `q ≤ 27`, for cyclic, dihedral
/// and elementary abelian `h`.
pub fn pgl2_embeds(h: &GroupExpr, field: &Fq) -> Result<Pgl2Embedding, Pgl2Error> {
    pgl2_embeds_up_to(h, field, MAX_Q)
}

/// [`pgl2_embeds`] with an explicit field-size cap (at most [`MAX_TABLE_Q`]).
pub fn pgl2_embeds_up_to(h: &GroupExpr, field: &Fq, cap: u64) -> Result<Pgl2Embedding, Pgl2Error> {
    let kind = h.canonical();
    let supported = matches!(kind, Cyc(_) | Dih(_) | ElemAb(_, _));
    if !supported || kind.generator_count() != h.generator_count() {
        return Err(Pgl2Error::Unsupported(format!("embedding search for {h}")));
    }
    if kind == Cyc(1) {
        let id = PGL2Element {
            rep: Mat2::identity(field),
        };
        return Ok(Pgl2Embedding::Embeds(vec![id; h.generator_count()]));
    }
    match kind {
        Cyc(n) if n > 60 => return Err(Pgl2Error::TooLarge(format!("C{n} (limit 60)"))),
        Dih(n) if n > 30 => return Err(Pgl2Error::TooLarge(format!("D{n} (limit 30)"))),
        ElemAb(p, r) if (p as u64).pow(r) > 64 => {
            return Err(Pgl2Error::TooLarge(format!("E({p},{r}) (limit order 64)")))
        }
        _ => {}
    }
    let t = Pgl2Table::new(field, cap)?;
    let all = t.elements();
    let of_order = |n: u64| -> Vec<Key> { all.iter().copied().filter(|k| t.order(k) == n).collect() };
    let found: Option<Vec<Key>> = match kind {
        Cyc(n) => of_order(n as u64).first().map(|k| vec![*k]),
        Dih(n) => {
            let rots = of_order(n as u64);
            let refls = of_order(2);
            let mut hit = None;
            'outer: for s in &rots {
                let s_inv = power(&t, s, n as u64 - 1);
                for r in &refls {
                    if t.mul(&t.mul(r, s), r) == s_inv && t.generated(&[*s, *r]).len() == 2 * n as usize {
                        hit = Some(vec![*s, *r]);
                        break 'outer;
                    }
                }
            }
            hit
        }
        ElemAb(p, r) => elementary_search(&t, &of_order(p as u64), p as u64, r as usize),
        _ => unreachable!(),
    };
    Ok(match found {
        None => Pgl2Embedding::No,
        Some(keys) => Pgl2Embedding::Embeds(keys.iter().map(|k| t.element(k)).collect()),
    })
}

fn power(t: &Pgl2Table, x: &Key, e: u64) -> Key {
    let mut acc = t.identity();
    for _ in 0..e {
        acc = t.mul(&acc, x);
    }
    acc
}

/// Backtracking over pairwise commuting order-`p` elements, each outside the
/// subgroup generated so far.
fn elementary_search(t: &Pgl2Table, cands: &[Key], p: u64, r: usize) -> Option<Vec<Key>> {
    fn rec(
        t: &Pgl2Table,
        cands: &[Key],
        p: u64,
        r: usize,
        chosen: &mut Vec<Key>,
        sub: &HashSet<Key>,
        start: usize,
    ) -> bool {
        if chosen.len() == r {
            return true;
        }
        for (i, c) in cands.iter().enumerate().skip(start) {
            if sub.contains(c) || !chosen.iter().all(|g| t.mul(g, c) == t.mul(c, g)) {
                continue;
            }
            chosen.push(*c);
            let next = t.generated(chosen);
            debug_assert_eq!(next.len() as u64, p.pow(chosen.len() as u32));
            if rec(t, cands, p, r, chosen, &next, i + 1) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    let sub = HashSet::from([t.identity()]);
    rec(t, cands, p, r, &mut chosen, &sub, 0).then_some(chosen)
}

/// `σ = [[1,1],[0,1]]`, `τ = [[1,0],[0,−1]]`: a faithful `D_p` in `GL_2`
/// over a field of odd characteristic `p`.
pub fn dp_representation(field: &Fq) -> Result<(Mat2, Mat2), Pgl2Error> {
    if field.p() == 2 {
        return Err(Pgl2Error::EvenChar);
    }
    let s = Mat2::from_ints(field, [1, 1, 0, 1]);
    let t = Mat2::from_ints(field, [1, 0, 0, -1]);
    check_dihedral(&s, &t, field.p())?;
    Ok((s, t))
}

/// Companion matrix of `X² − cX + 1` and the reflection `[[1,c],[0,−1]]`,
/// where `c = ζ_n + ζ_n⁻¹` is the smallest-index element for which the
/// companion matrix has order exactly `n`.
pub fn dn_representation(field: &Fq, n: u64) -> Result<(Mat2, Mat2), Pgl2Error> {
    if n < 3 || n % field.p() == 0 {
        return Err(Pgl2Error::Unsupported(format!("D{n} over {field}")));
    }
    let q = check_q(field, 1 << 16)?;
    for i in 0..q as u64 {
        let c = field.element_from_index(i);
        let s = Mat2::new(field.zero(), field.from_int(-1), field.one(), c.clone());
        if s.order(n) == Some(n) {
            let t = Mat2::new(field.one(), c, field.zero(), field.from_int(-1));
            check_dihedral(&s, &t, n)?;
            return Ok((s, t));
        }
    }
    Err(Pgl2Error::RealZetaAbsent(n))
}

/// Dihedral relations of order `2n`, read projectively, plus faithfulness.
fn check_dihedral(s: &Mat2, t: &Mat2, n: u64) -> Result<(), Pgl2Error> {
    let ps = PGL2Element::new(s)?;
    let pt = PGL2Element::new(t)?;
    let ok = pgl2_order(&ps) == n
        && pgl2_order(&pt) == 2
        && t.mul(s).mul(&t.inverse().unwrap()) == s.inverse().unwrap()
        && (1..n).all(|k| PGL2Element::new(&s.pow(k)).unwrap() != pt);
    if ok {
        Ok(())
    } else {
        Err(Pgl2Error::Unsupported("dihedral relations fail".into()))
    }
}

/// `ρ(σ_i) = [[1, α_i], [0, 1]]` for `F_p`-independent `α_i`.
pub fn elemab_representation(alphas: &[FqElement]) -> Result<Vec<Mat2>, Pgl2Error> {
    let Some(first) = alphas.first() else { return Ok(Vec::new()) };
    let field = first.domain();
    if field.p() == 0 || !independent_over_prime_field(alphas)? {
        return Err(Pgl2Error::DependentAlphas);
    }
    Ok(alphas
        .iter()
        .map(|a| Mat2::new(field.one(), a.clone(), field.zero(), field.one()))
        .collect())
}

/// Exhaustive scan of all nontrivial `F_p`-combinations.
fn independent_over_prime_field(alphas: &[FqElement]) -> Result<bool, Pgl2Error> {
    let field = alphas[0].domain();
    let p = field.p();
    let r = alphas.len() as u32;
    if r > field.k() {
        return Ok(false);
    }
    let total = p.checked_pow(r).filter(|&t| t <= 1 << 20).ok_or_else(|| {
        Pgl2Error::TooLarge(format!("{p}^{r} combinations"))
    })?;
    for code in 1..total {
        let mut acc = field.zero();
        let mut c = code;
        for a in alphas {
            acc = acc.plus(&a.times(&field.from_int((c % p) as i64)));
            c /= p;
        }
        if acc.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> Fq {
        Fq::of_order(q).unwrap()
    }

    #[test]
    fn enumeration_sizes_and_uniqueness() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let elems = pgl2_enumerate(&f(q)).unwrap();
            assert_eq!(elems.len() as u64, q * q * q - q);
            let set: HashSet<_> = elems.iter().collect();
            assert_eq!(set.len(), elems.len());
        }
        assert!(matches!(pgl2_enumerate(&f(29)), Err(Pgl2Error::TooLarge(_))));
    }

    #[test]
    fn scalar_classes_by_brute_force() {
        // dedup all invertible matrices over F_3 by scaling
        let k = f(3);
        let xs = k.elements(3).unwrap();
        let mut classes = HashSet::new();
        for a in &xs {
            for b in &xs {
                for c in &xs {
                    for d in &xs {
                        let m = Mat2::new(a.clone(), b.clone(), c.clone(), d.clone());
                        if !m.det().is_zero() {
                            classes.insert(PGL2Element::new(&m).unwrap());
                        }
                    }
                }
            }
        }
        assert_eq!(classes.len(), 24);
        let listed: HashSet<_> = pgl2_enumerate(&k).unwrap().into_iter().collect();
        assert_eq!(listed, classes);
    }

    #[test]
    fn order_examples() {
        let k = f(3);
        let id = PGL2Element::new(&Mat2::identity(&k)).unwrap();
        assert_eq!(pgl2_order(&id), 1);
        let u = PGL2Element::new(&Mat2::from_ints(&k, [1, 1, 0, 1])).unwrap();
        assert_eq!(pgl2_order(&u), 3);
        let j = PGL2Element::new(&Mat2::from_ints(&k, [0, -1, 1, 0])).unwrap();
        assert_eq!(pgl2_order(&j), 2);
        for p in [5u64, 7, 11] {
            let u = PGL2Element::new(&Mat2::from_ints(&f(p), [1, 1, 0, 1])).unwrap();
            assert_eq!(pgl2_order(&u), p);
        }
        let census = order_census(&f(2)).unwrap();
        assert_eq!(census, BTreeMap::from([(1, 1), (2, 3), (3, 2)]));
    }

    #[test]
    fn table_agrees_with_matrix_arithmetic() {
        for q in [4u64, 9] {
            let t = Pgl2Table::new(&f(q), MAX_Q).unwrap();
            let keys = t.elements();
            for (i, x) in keys.iter().enumerate().step_by(7) {
                let y = &keys[(i * 13 + 5) % keys.len()];
                let direct = t.element(x).mul(&t.element(y));
                assert_eq!(t.element(&t.mul(x, y)), direct);
                assert_eq!(t.order(x), pgl2_order(&t.element(x)));
                assert_eq!(t.field_element(t.trace_invariant(x)), trace_invariant(&t.element(x)));
            }
        }
    }

    #[test]
    fn trace_invariant_examples() {
        let k = f(7);
        let id = PGL2Element::new(&Mat2::identity(&k)).unwrap();
        assert_eq!(trace_invariant(&id), k.from_int(4));
        for e in pgl2_enumerate(&k).unwrap() {
            if pgl2_order(&e) == 3 {
                assert_eq!(trace_invariant(&e), k.one());
            }
        }
        let k = f(5);
        for a in 1..5 {
            let e = PGL2Element::new(&Mat2::from_ints(&k, [a, 1, 0, a])).unwrap();
            assert_eq!(trace_invariant(&e), k.from_int(4));
        }
    }

    #[test]
    fn order_is_char_or_prime_to_char() {
        for q in [4u64, 8, 9, 25] {
            let t = Pgl2Table::new(&f(q), MAX_Q).unwrap();
            let p = f(q).p();
            for k in t.elements() {
                let n = t.order(&k);
                assert!(n == p || n % p != 0, "q={q} order {n}");
            }
        }
    }

    #[test]
    fn ratio_roots_are_primitive() {
        let k = f(11);
        let t = Pgl2Table::new(&k, MAX_Q).unwrap();
        for key in t.elements().iter().step_by(11) {
            let n = t.order(key);
            if n % 11 == 0 {
                continue;
            }
            let inv = t.field_element(t.trace_invariant(key));
            let rs = eigenvalue_ratio_roots(&inv).unwrap();
            assert!(!rs.is_empty());
            for z in rs {
                assert_eq!(z.multiplicative_order().unwrap(), n);
            }
        }
    }

    #[test]
    fn embedding_examples() {
        assert_eq!(pgl2_embeds(&ElemAb(2, 2), &f(2)).unwrap(), Pgl2Embedding::No);
        assert!(pgl2_embeds(&ElemAb(2, 2), &f(4)).unwrap().embeds());
        assert!(pgl2_embeds(&Dih(7), &f(13)).unwrap().embeds());
        assert!(pgl2_embeds(&Dih(3), &f(2)).unwrap().embeds());
        assert_eq!(pgl2_embeds(&Dih(5), &f(7)).unwrap(), Pgl2Embedding::No);
        assert!(pgl2_embeds(&Dih(5), &f(9)).unwrap().embeds());
        assert!(pgl2_embeds(&Cyc(4), &f(3)).unwrap().embeds());
        assert!(pgl2_embeds(&Dih(2), &f(3)).unwrap().embeds());
        assert!(matches!(pgl2_embeds(&Sym(4), &f(3)), Err(Pgl2Error::Unsupported(_))));
        assert!(matches!(pgl2_embeds(&Dih(31), &f(3)), Err(Pgl2Error::TooLarge(_))));
    }

    #[test]
    fn embedding_witnesses_satisfy_relations() {
        let Pgl2Embedding::Embeds(w) = pgl2_embeds(&Dih(7), &f(13)).unwrap() else { panic!() };
        let (s, t) = (&w[0], &w[1]);
        assert_eq!(pgl2_order(s), 7);
        assert_eq!(pgl2_order(t), 2);
        let s6 = (1..6).fold(s.clone(), |acc, _| acc.mul(s));
        assert_eq!(t.mul(s).mul(t), s6);
        let Pgl2Embedding::Embeds(w) = pgl2_embeds(&ElemAb(3, 2), &f(9)).unwrap() else { panic!() };
        assert_eq!(w[0].mul(&w[1]), w[1].mul(&w[0]));
    }

    #[test]
    fn elementary_predicate_matches_search() {
        for (p, kmax) in [(2u64, 4u32), (3, 4)] {
            for k in 1..=kmax {
                let field = Fq::new(p, k).unwrap();
                for r in 1..=3u32 {
                    let found = pgl2_embeds_up_to(&ElemAb(p as u32, r), &field, MAX_TABLE_Q).unwrap();
                    assert_eq!(found.embeds(), k >= r, "p={p} k={k} r={r}");
                }
            }
        }
    }

    #[test]
    fn dp_representation_orders() {
        for (q, order) in [(3u64, 6usize), (5, 10)] {
            let (s, t) = dp_representation(&f(q)).unwrap();
            assert!(t.mul(&t).is_identity());
            // closure in GL_2
            let mut seen: HashSet<Mat2> = HashSet::from([Mat2::identity(&f(q))]);
            let mut frontier: Vec<Mat2> = seen.iter().cloned().collect();
            while let Some(x) = frontier.pop() {
                for g in [&s, &t] {
                    let y = x.mul(g);
                    if seen.insert(y.clone()) {
                        frontier.push(y);
                    }
                }
            }
            assert_eq!(seen.len(), order);
        }
        assert_eq!(dp_representation(&f(4)), Err(Pgl2Error::EvenChar));
    }

    #[test]
    fn dn_representation_examples() {
        let k = f(13);
        let (s, t) = dn_representation(&k, 7).unwrap();
        // roots of X³ + X² − 2X − 1 mod 13 are 7, 8, 10; 3, 5, 6 are their
        // negatives, whose companion matrices have order 14 in GL_2
        assert_eq!(s.d, k.from_int(7));
        assert_eq!(s.order(20), Some(7));
        assert!(t.mul(&t).is_identity());
        let k4 = f(4);
        let (s, _) = dn_representation(&k4, 3).unwrap();
        assert_eq!(s, Mat2::from_ints(&k4, [0, 1, 1, 1]));
        assert_eq!(pgl2_order(&PGL2Element::new(&s).unwrap()), 3);
        assert_eq!(dn_representation(&f(11), 7), Err(Pgl2Error::RealZetaAbsent(7)));
    }

    #[test]
    fn elemab_representation_examples() {
        let k4 = f(4);
        let ms = elemab_representation(&[k4.one(), k4.generator_root()]).unwrap();
        assert_eq!(ms.len(), 2);
        assert_eq!(ms[0].mul(&ms[1]), ms[1].mul(&ms[0]));
        let k2 = f(2);
        assert_eq!(elemab_representation(&[k2.one()]).unwrap().len(), 1);
        let k8 = f(8);
        let x = k8.generator_root();
        let ms = elemab_representation(&[k8.one(), x.clone(), x.times(&x)]).unwrap();
        let keys: Vec<PGL2Element> = ms.iter().map(|m| PGL2Element::new(m).unwrap()).collect();
        let t = Pgl2Table::new(&k8, MAX_Q).unwrap();
        let gens: Vec<Key> = keys.iter().map(|e| t.key_of(e)).collect();
        assert_eq!(t.generated(&gens).len(), 8);
        assert_eq!(
            elemab_representation(&[k4.one(), k4.one()]),
            Err(Pgl2Error::DependentAlphas)
        );
    }
}
