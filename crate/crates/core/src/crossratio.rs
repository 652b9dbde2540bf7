//! Cross-ratios `[i,j;k,l]` in `K(x_1..x_n)`, their rewriting in the
//! generators `t_m = [1,2;3,m]` (`4 ≤ m ≤ n`), and the induced `S_n`-action.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::groups::{GroupExpr, Perm};
use crate::ratfunc::{var_names, RatFn, RatFnError, Vars};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CrossRatioError {
    #[error("invalid cross-ratio symbol: {0}")]
    InvalidSymbol(String),
    #[error("rewriting needs at least 5 points, got {0}")]
    AmbientTooSmall(usize),
    #[error("faithfulness check supports 5 <= n <= 7, got {0}")]
    AmbientOutOfRange(usize),
    #[error(transparent)]
    RatFn(#[from] RatFnError),
}

/// `[i,j;k,l]` on `n` points, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CRSymbol {
    pub n: usize,
    pub idx: [usize; 4],
}

impl CRSymbol {
    pub fn new(n: usize, idx: [usize; 4]) -> Result<CRSymbol, CrossRatioError> {
        let distinct = (0..4).all(|a| (a + 1..4).all(|b| idx[a] != idx[b]));
        if n < 4 || !distinct || idx.iter().any(|&i| i == 0 || i > n) {
            return Err(CrossRatioError::InvalidSymbol(format!("{idx:?} on {n} points")));
        }
        Ok(CRSymbol { n, idx })
    }

    /// Every valid symbol on `n` points, in lexicographic order.
    pub fn all(n: usize) -> Vec<CRSymbol> {
        let mut out = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    for l in 1..=n {
                        if let Ok(s) = CRSymbol::new(n, [i, j, k, l]) {
                            out.push(s);
                        }
                    }
                }
            }
        }
        out
    }

    fn swapped(&self, pos: usize) -> CRSymbol {
        let mut idx = self.idx;
        idx.swap(pos, pos + 1);
        CRSymbol { n: self.n, idx }
    }

    fn overlap(&self) -> usize {
        self.idx.iter().filter(|&&i| i <= 3).count()
    }
}

impl fmt::Display for CRSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [i, j, k, l] = self.idx;
        write!(f, "[{i},{j};{k},{l}]")
    }
}

impl std::str::FromStr for CRSymbol {
    type Err = CrossRatioError;

    /// `"i,j,k,l"` or `"[i,j;k,l]"`; the ambient size is filled in later with
    /// [`CRSymbol::new`], so this parses with `n` = the largest index.
    fn from_str(s: &str) -> Result<CRSymbol, CrossRatioError> {
        let cleaned: String = s.chars().filter(|c| !matches!(c, '[' | ']' | ' ')).collect();
        let parts: Vec<usize> = cleaned
            .split([',', ';'])
            .map(|p| p.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| CrossRatioError::InvalidSymbol(s.to_string()))?;
        let idx: [usize; 4] = parts
            .try_into()
            .map_err(|_| CrossRatioError::InvalidSymbol(s.to_string()))?;
        let n = *idx.iter().max().unwrap();
        CRSymbol::new(n.max(4), idx)
    }
}

pub fn x_vars(n: usize) -> Vars {
    var_names("x", 1, n)
}

/// Generator names `t4..tn`.
pub fn t_vars(n: usize) -> Vars {
    var_names("t", 4, n)
}

/// `(x_i − x_k)(x_j − x_l) / ((x_i − x_l)(x_j − x_k))`.
pub fn cr_define<C: Scalar>(sym: &CRSymbol, domain: &C::Domain) -> RatFn<C> {
    let vars = x_vars(sym.n);
    let x = |i: usize| RatFn::<C>::var(domain, &vars, i - 1);
    let [i, j, k, l] = sym.idx;
    let num = x(i).sub(&x(k)).mul(&x(j).sub(&x(l)));
    let den = x(i).sub(&x(l)).mul(&x(j).sub(&x(k)));
    num.div(&den).expect("distinct indices give a nonzero denominator")
}

/// The Möbius map induced by swapping positions `pos, pos+1`:
/// `1/t` for the outer pairs, `1 − t` for the middle pair.
fn mobius<C: Scalar>(pos: usize, v: &RatFn<C>) -> RatFn<C> {
    if pos == 1 {
        RatFn::one(v.domain(), v.vars()).sub(v)
    } else {
        v.inv().expect("cross-ratios are nonzero")
    }
}

/// The six images of `t` under the Möbius maps generated by the swaps.
pub fn mobius_orbit<C: Scalar>(t: &RatFn<C>) -> Vec<RatFn<C>> {
    let mut orbit = vec![t.clone()];
    let mut i = 0;
    while i < orbit.len() {
        for pos in 0..3 {
            let img = mobius(pos, &orbit[i]);
            if !orbit.contains(&img) {
                orbit.push(img);
            }
        }
        i += 1;
    }
    orbit
}

/// Rewriter with memoized intermediate symbols.
pub struct Rewriter<C: Scalar> {
    n: usize,
    domain: C::Domain,
    vars: Vars,
    memo: HashMap<[usize; 4], RatFn<C>>,
}

impl<C: Scalar> Rewriter<C> {
    pub fn new(n: usize, domain: &C::Domain) -> Result<Rewriter<C>, CrossRatioError> {
        if n < 5 {
            return Err(CrossRatioError::AmbientTooSmall(n));
        }
        Ok(Rewriter {
            n,
            domain: domain.clone(),
            vars: t_vars(n),
            memo: HashMap::new(),
        })
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    /// Generator `t_m`.
    pub fn generator(&self, m: usize) -> RatFn<C> {
        RatFn::var(&self.domain, &self.vars, m - 4)
    }

    /// Expresses `[i,j;k,l]` in the generators.
    pub fn rewrite(&mut self, sym: &CRSymbol) -> Result<RatFn<C>, CrossRatioError> {
        if sym.n != self.n {
            return Err(CrossRatioError::InvalidSymbol(format!("{sym} on {} points", sym.n)));
        }
        if let Some(v) = self.memo.get(&sym.idx) {
            return Ok(v.clone());
        }
        let v = self.rewrite_uncached(sym)?;
        self.memo.insert(sym.idx, v.clone());
        Ok(v)
    }

    fn rewrite_uncached(&mut self, sym: &CRSymbol) -> Result<RatFn<C>, CrossRatioError> {
        let idx = sym.idx;
        let (low, high): (Vec<usize>, Vec<usize>) = idx.iter().partition(|&&i| i <= 3);
        match sym.overlap() {
            3 => {
                // reorder to [1,2;3,m]
                let mut target = low.clone();
                target.sort_unstable();
                target.push(high[0]);
                self.via_reordering(sym, &target, |me, s| Ok(me.generator(s.idx[3])))
            }
            2 => {
                // [a,b;u,v] = [a,b;e,v] · [a,b;e,u]^-1 with {a,b,e} = {1,2,3}
                let mut target = low.clone();
                target.sort_unstable();
                target.extend(&high);
                self.via_reordering(sym, &target, |me, s| {
                    let [a, b, u, v] = s.idx;
                    let e = (1..=3).find(|x| *x != a && *x != b).unwrap();
                    me.split(a, b, e, u, v)
                })
            }
            1 => {
                // [a,u;v,w] = [a,u;e,w] · [a,u;e,v]^-1, e the least of {1,2,3} \ {a}
                let mut target = low.clone();
                target.extend(&high);
                self.via_reordering(sym, &target, |me, s| {
                    let [a, u, v, w] = s.idx;
                    let e = (1..=3).find(|x| *x != a).unwrap();
                    me.split(a, u, e, v, w)
                })
            }
            _ => {
                let [i, j, k, l] = idx;
                self.split(i, j, 1, k, l)
            }
        }
    }

    /// `[a,b;c,d] = [a,b;e,d] · [a,b;e,c]^-1`.
    fn split(&mut self, a: usize, b: usize, e: usize, c: usize, d: usize) -> Result<RatFn<C>, CrossRatioError> {
        let n = self.n;
        let p = self.rewrite(&CRSymbol::new(n, [a, b, e, d])?)?;
        let q = self.rewrite(&CRSymbol::new(n, [a, b, e, c])?)?;
        Ok(p.div(&q)?)
    }

    /// Bubble-sorts the symbol into the order `target`, evaluates the sorted
    /// symbol with `base`, then undoes the swaps through their Möbius maps.
    fn via_reordering(
        &mut self,
        sym: &CRSymbol,
        target: &[usize],
        base: impl FnOnce(&mut Self, &CRSymbol) -> Result<RatFn<C>, CrossRatioError>,
    ) -> Result<RatFn<C>, CrossRatioError> {
        let rank = |x: usize| target.iter().position(|&y| y == x).unwrap();
        let mut cur = *sym;
        let mut swaps = Vec::new();
        loop {
            let pos = (0..3).find(|&p| rank(cur.idx[p]) > rank(cur.idx[p + 1]));
            match pos {
                Some(p) => {
                    cur = cur.swapped(p);
                    swaps.push(p);
                }
                None => break,
            }
        }
        let mut v = base(self, &cur)?;
        for &p in swaps.iter().rev() {
            v = mobius(p, &v);
        }
        Ok(v)
    }
}

/// One-shot rewrite of a symbol.
pub fn cr_rewrite<C: Scalar>(sym: &CRSymbol, domain: &C::Domain) -> Result<RatFn<C>, CrossRatioError> {
    Rewriter::new(sym.n, domain)?.rewrite(sym)
}

/// `cr_define([1,2;3,m])` for each generator, the substitution that
/// recovers an `x`-expression from a `t`-expression.
pub fn generator_definitions<C: Scalar>(n: usize, domain: &C::Domain) -> Vec<RatFn<C>> {
    (4..=n)
        .map(|m| cr_define(&CRSymbol { n, idx: [1, 2, 3, m] }, domain))
        .collect()
}

/// Images of the generators under a permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMap<C: Scalar> {
    pub n: usize,
    /// `images[m - 4]` is the image of `t_m`.
    pub images: Vec<RatFn<C>>,
}

impl<C: Scalar> GeneratorMap<C> {
    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, img)| {
            let t = RatFn::var(img.domain(), img.vars(), i);
            *img == t
        })
    }

    /// `self ∘ inner`: apply `inner` first, then substitute `self` into it.
    pub fn after(&self, inner: &GeneratorMap<C>) -> Result<GeneratorMap<C>, CrossRatioError> {
        let images = inner
            .images
            .iter()
            .map(|f| f.compose(&self.images))
            .collect::<Result<_, _>>()?;
        Ok(GeneratorMap { n: self.n, images })
    }
}

/// `t_m ↦ [σ(1),σ(2);σ(3),σ(m)]`, rewritten in the generators.
pub fn sn_action<C: Scalar>(
    rw: &mut Rewriter<C>,
    sigma: &Perm,
) -> Result<GeneratorMap<C>, CrossRatioError> {
    let n = rw.n;
    if sigma.degree() != n {
        return Err(CrossRatioError::InvalidSymbol(format!("{sigma} is not on {n} points")));
    }
    let s = |i: usize| sigma.apply(i - 1) + 1;
    let images = (4..=n)
        .map(|m| rw.rewrite(&CRSymbol::new(n, [s(1), s(2), s(3), s(m)])?))
        .collect::<Result<_, _>>()?;
    Ok(GeneratorMap { n, images })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaithfulnessReport {
    pub n: usize,
    pub checked: usize,
    pub passed: bool,
    /// `(permutation, first generator it moves)` per checked element;
    /// failures list the permutation with `None`.
    pub witnesses: Vec<(String, Option<String>)>,
}

/// Checks that `S_n` acts faithfully on the generators. For `n ≤ 6` every
/// non-identity permutation is checked; for `n = 7` a transposition and a
/// 3-cycle suffice, since the only normal subgroups are `1`, `A_n`, `S_n`.
pub fn verify_faithful<C: Scalar>(n: usize, domain: &C::Domain) -> Result<FaithfulnessReport, CrossRatioError> {
    if !(5..=7).contains(&n) {
        return Err(CrossRatioError::AmbientOutOfRange(n));
    }
    let perms: Vec<Perm> = if n <= 6 {
        let g = GroupExpr::Sym(n as u32).realize().expect("small symmetric group");
        let mut all = g.elements(1000).expect("at most 720 elements");
        all.retain(|p| !p.is_identity());
        all.sort();
        all
    } else {
        vec![
            Perm::from_cycles(n, &[vec![1, 2]]),
            Perm::from_cycles(n, &[vec![1, 2, 3]]),
        ]
    };
    let mut rw = Rewriter::<C>::new(n, domain)?;
    let mut witnesses = Vec::with_capacity(perms.len());
    let mut passed = true;
    for p in &perms {
        let map = sn_action(&mut rw, p)?;
        let moved = map
            .images
            .iter()
            .enumerate()
            .find(|(i, img)| **img != rw.generator(i + 4))
            .map(|(i, _)| format!("t{}", i + 4));
        passed &= moved.is_some();
        witnesses.push((p.to_string(), moved));
    }
    Ok(FaithfulnessReport {
        n,
        checked: perms.len(),
        passed,
        witnesses,
    })
}

/// Outcome of [`verify_symbols`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymbolReport {
    pub n: usize,
    pub symbols: usize,
    /// Symbols whose rewrite, substituted back, equals the definition.
    pub exact_identities: usize,
    pub samples_per_symbol: usize,
    pub sample_prime: u64,
    pub seed: u64,
    /// Symbols whose rewrite matched the definition at every sample.
    pub sampled_agreements: usize,
    /// First failing symbol, if any.
    pub first_failure: Option<String>,
}

impl SymbolReport {
    pub fn passed(&self) -> bool {
        self.exact_identities == self.symbols && self.sampled_agreements == self.symbols
    }
}

/// Prime field used by [`verify_symbols`] for numeric samples.
pub const SAMPLE_PRIME: u64 = 101;

/// Checks every symbol on `n` points over `Q`: the rewrite composed with the
/// generator definitions must equal `cr_define` exactly, and evaluating the
/// rewrite at the generators' values must match the definition at
/// `samples` random points of `F_101^n` with distinct coordinates.
pub fn verify_symbols(n: usize, samples: usize, seed: u64) -> Result<SymbolReport, CrossRatioError> {
    use crate::exactfield::{Fq, FqElement};
    use crate::Rational;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    let field = Fq::new(SAMPLE_PRIME, 1).expect("101 is prime");
    let to_fq = |c: &Rational| field.from_int(c.reduce_mod(SAMPLE_PRIME).expect("no 101 in denominators") as i64);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut rw = Rewriter::<Rational>::new(n, &())?;
    let defs = generator_definitions::<Rational>(n, &());
    let symbols = CRSymbol::all(n);
    let mut report = SymbolReport {
        n,
        symbols: symbols.len(),
        exact_identities: 0,
        samples_per_symbol: samples,
        sample_prime: SAMPLE_PRIME,
        seed,
        sampled_agreements: 0,
        first_failure: None,
    };
    let all_points: Vec<u64> = (0..SAMPLE_PRIME).collect();
    for sym in symbols {
        let expr = rw.rewrite(&sym)?;
        let def = cr_define::<Rational>(&sym, &());
        let exact = expr.compose(&defs)? == def;
        let mut agree = true;
        let mut done = 0;
        while done < samples {
            let x: Vec<FqElement> = all_points
                .choose_multiple(&mut rng, n)
                .map(|&v| field.from_int(v as i64))
                .collect();
            let t: Vec<FqElement> = defs
                .iter()
                .map(|d| d.evaluate_mapped(&x, to_fq))
                .collect::<Result<_, _>>()?;
            let lhs = match expr.evaluate_mapped(&t, to_fq) {
                Ok(v) => v,
                Err(RatFnError::PoleAtPoint) => continue,
                Err(e) => return Err(e.into()),
            };
            agree &= lhs == def.evaluate_mapped(&x, to_fq)?;
            done += 1;
        }
        report.exact_identities += exact as usize;
        report.sampled_agreements += agree as usize;
        if !(exact && agree) && report.first_failure.is_none() {
            report.first_failure = Some(sym.to_string());
        }
    }
    Ok(report)
}
