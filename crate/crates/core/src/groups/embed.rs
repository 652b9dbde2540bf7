//! Built-in embedding certificates `H ↪ G` between family expressions.
//!
//! A certificate lists images in the standard realization of `G` for the
//! standard generators of `H`. Verification needs no presentation of `H`:
//! the map extends to an injective homomorphism iff the diagonal subgroup
//! generated by the pairs `(s, φ(s))` has the order of `H` and of `⟨φ(s)⟩`.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use super::expr::GroupExpr::{self, *};
use super::perm::Perm;
use super::permgroup::PermGroup;
use super::GroupError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub source: GroupExpr,
    pub target: GroupExpr,
    /// Images of `source.standard_generators()`, on `target.degree()` points.
    pub images: Vec<Perm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmbeddingResult {
    Certified(Embedding),
    NotFound,
}

/// Cap on factor assignments tried for products.
const ASSIGNMENT_CAP: usize = 256;

/// Renames isomorphic small atoms without changing their standard generators.
fn atom_kind(a: &GroupExpr) -> GroupExpr {
    match a {
        Sym(2) | Dih(1) => Cyc(2),
        Alt(3) => Cyc(3),
        ElemAb(p, 1) => Cyc(*p),
        Dih(2) => ElemAb(2, 2),
        a => a.clone(),
    }
}

/// Standard generators of `h` and the number of points they use.
fn placement(h: &GroupExpr) -> Result<(Vec<Perm>, usize), GroupError> {
    let gens = h.standard_generators()?;
    Ok((gens, h.degree() as usize))
}

/// Even realization of `E(2,r)` on `2r` points via Klein four-groups; the last
/// generator is a transposition when `r` is odd.
fn elem2_even_blocks(r: usize) -> Vec<Perm> {
    let d = 2 * r;
    let mut out = Vec::new();
    let mut k = 0;
    while k + 1 < r {
        let b = 2 * k;
        out.push(Perm::from_cycles(d, &[vec![b + 1, b + 2], vec![b + 3, b + 4]]));
        out.push(Perm::from_cycles(d, &[vec![b + 1, b + 3], vec![b + 2, b + 4]]));
        k += 2;
    }
    if r % 2 == 1 {
        out.push(Perm::from_cycles(d, &[vec![d - 1, d]]));
    }
    out
}

fn into_symmetric(h: &GroupExpr, n: usize) -> Result<Option<Vec<Perm>>, GroupError> {
    let (gens, d) = placement(h)?;
    Ok((d <= n).then(|| gens.iter().map(|g| g.extend(n)).collect()))
}

fn into_alternating(h: &GroupExpr, n: usize) -> Result<Option<Vec<Perm>>, GroupError> {
    // per factor: generators on its own points, preferring even ones
    let mut blocks: Vec<(Vec<Perm>, usize)> = Vec::new();
    for f in h.factors() {
        let blk = match atom_kind(&f) {
            ElemAb(2, r) if r >= 2 => (elem2_even_blocks(r as usize), 2 * r as usize),
            _ => placement(&f)?,
        };
        blocks.push(blk);
    }
    let width: usize = blocks.iter().map(|b| b.1).sum();
    let needs_sign = blocks.iter().any(|b| b.0.iter().any(|g| !g.is_even()));
    let total = width + if needs_sign { 2 } else { 0 };
    if total > n {
        return Ok(None);
    }
    let sign = if needs_sign {
        Perm::from_cycles(n, &[vec![width + 1, width + 2]])
    } else {
        Perm::identity(n)
    };
    let mut out = Vec::new();
    let mut offset = 0;
    for (gens, w) in blocks {
        for g in gens {
            let img = g.shifted(offset, n);
            out.push(if g.is_even() { img } else { img.then(&sign) });
        }
        offset += w;
    }
    Ok(Some(out))
}

fn into_cyclic(h: &GroupExpr, n: u32) -> Option<Vec<Perm>> {
    let rot = Perm::from_cycles(n as usize, &[(1..=n as usize).collect()]);
    match atom_kind(h) {
        Cyc(d) if n % d == 0 => Some(vec![rot.pow((n / d) as u64)]),
        _ => None,
    }
}

fn into_dihedral(h: &GroupExpr, n: u32) -> Option<Vec<Perm>> {
    let g = Dih(n).standard_generators().ok()?;
    let (rot, refl) = (&g[0], &g[1]);
    match atom_kind(h) {
        Cyc(2) => Some(vec![refl.clone()]),
        Cyc(d) if n % d == 0 => Some(vec![rot.pow((n / d) as u64)]),
        Dih(d) if n % d == 0 => Some(vec![rot.pow((n / d) as u64), refl.clone()]),
        ElemAb(2, 2) if n % 2 == 0 => Some(vec![rot.pow((n / 2) as u64), refl.clone()]),
        _ => None,
    }
}

fn into_elementary(h: &GroupExpr, p: u32, r: u32) -> Option<Vec<Perm>> {
    let g = ElemAb(p, r).standard_generators().ok()?;
    match atom_kind(h) {
        Cyc(d) if d == p => Some(vec![g[0].clone()]),
        ElemAb(q, s) if q == p && s <= r => Some(g[..s as usize].to_vec()),
        _ => None,
    }
}

fn into_atom(h: &GroupExpr, g: &GroupExpr) -> Result<Option<Vec<Perm>>, GroupError> {
    if h.is_trivial() {
        return Ok(Some(vec![Perm::identity(g.degree() as usize); h.generator_count()]));
    }
    Ok(match atom_kind(g) {
        Sym(n) => into_symmetric(h, n as usize)?,
        Alt(n) => into_alternating(h, n as usize)?,
        Cyc(n) => into_cyclic(h, n),
        Dih(n) => into_dihedral(h, n),
        ElemAb(p, r) => into_elementary(h, p, r),
        Product(_) => unreachable!("atom expected"),
    })
}

/// Distributes the factors of `h` over the factors of `g`.
fn into_product(h: &GroupExpr, gs: &[GroupExpr]) -> Result<Option<Vec<Perm>>, GroupError> {
    let hs = h.factors();
    let total = gs.iter().map(|f| f.degree() as usize).sum::<usize>();
    let mut offsets = Vec::with_capacity(gs.len());
    let mut acc = 0usize;
    for f in gs {
        offsets.push(acc);
        acc += f.degree() as usize;
    }
    let mut assign = vec![0usize; hs.len()];
    let mut tried = 0usize;
    loop {
        tried += 1;
        if tried > ASSIGNMENT_CAP {
            return Ok(None);
        }
        if let Some(images) = try_assignment(&hs, gs, &assign, &offsets, total)? {
            return Ok(Some(images));
        }
        let mut i = 0;
        loop {
            if i == assign.len() {
                return Ok(None);
            }
            assign[i] += 1;
            if assign[i] < gs.len() {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
    }
}

fn try_assignment(
    hs: &[GroupExpr],
    gs: &[GroupExpr],
    assign: &[usize],
    offsets: &[usize],
    total: usize,
) -> Result<Option<Vec<Perm>>, GroupError> {
    let mut per_target: Vec<Vec<Perm>> = vec![Vec::new(); gs.len()];
    for (j, g) in gs.iter().enumerate() {
        let sub: Vec<GroupExpr> = hs
            .iter()
            .zip(assign)
            .filter(|(_, &a)| a == j)
            .map(|(f, _)| f.clone())
            .collect();
        if sub.is_empty() {
            continue;
        }
        let sub_h = if sub.len() == 1 { sub[0].clone() } else { Product(sub) };
        if !(g.order() % sub_h.order()).is_zero() {
            return Ok(None);
        }
        match into_atom(&sub_h, g)? {
            Some(imgs) => per_target[j] = imgs,
            None => return Ok(None),
        }
    }
    // reassemble in the order of h's generators
    let mut cursor = vec![0usize; gs.len()];
    let mut out = Vec::new();
    for (f, &j) in hs.iter().zip(assign) {
        for _ in 0..f.generator_count() {
            out.push(per_target[j][cursor[j]].shifted(offsets[j], total));
            cursor[j] += 1;
        }
    }
    Ok(Some(out))
}

/// A built-in certificate that `h` is isomorphic to a subgroup of `g`.
/// `NotFound` is not a proof of non-embeddability.
pub fn embedding_certificate(h: &GroupExpr, g: &GroupExpr) -> Result<EmbeddingResult, GroupError> {
    h.validate()?;
    g.validate()?;
    if !(g.order() % h.order()).is_zero() {
        return Ok(EmbeddingResult::NotFound);
    }
    let gs = g.factors();
    let images = if gs.len() == 1 {
        into_atom(h, &gs[0])?
    } else {
        into_product(h, &gs)?
    };
    let Some(images) = images else {
        return Ok(EmbeddingResult::NotFound);
    };
    let emb = Embedding {
        source: h.clone(),
        target: g.clone(),
        images,
    };
    if !verify_embedding(&emb)? {
        return Ok(EmbeddingResult::NotFound);
    }
    Ok(EmbeddingResult::Certified(emb))
}

/// Checks that the images lie in the target, and that they define an
/// injective homomorphism from the source.
pub fn verify_embedding(e: &Embedding) -> Result<bool, GroupError> {
    let h_gens = e.source.standard_generators()?;
    if h_gens.len() != e.images.len() {
        return Ok(false);
    }
    let g = e.target.realize()?;
    let dg = g.degree();
    if e.images.iter().any(|x| x.degree() != dg || !g.contains(x)) {
        return Ok(false);
    }
    let dh = e.source.degree() as usize;
    let diagonal: Vec<Perm> = h_gens
        .iter()
        .zip(&e.images)
        .map(|(a, b)| {
            let mut v = a.0.clone();
            v.extend(b.0.iter().map(|&x| x + dh as u16));
            Perm(v)
        })
        .collect();
    let order_h: BigUint = e.source.order();
    let order_d = PermGroup::new(dh + dg, diagonal).order();
    let order_img = PermGroup::new(dg, e.images.clone()).order();
    Ok(order_d == order_h && order_img == order_h)
}
