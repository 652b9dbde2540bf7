//! Structural queries: element orders, centers and largest normal
//! `l`-subgroups, by enumeration and by closed forms per family.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;
use num_traits::One;

use super::expr::GroupExpr::{self, *};
use super::perm::Perm;
use super::permgroup::{PermGroup, ENUMERATION_CAP};
use super::GroupError;
use crate::exactfield::arith::{divisors, is_prime, lcm};

/// Cap for Sylow and core computations.
pub const CORE_CAP: u64 = 100_000;
/// Largest `n` for which symmetric and alternating element orders come from
/// partitions.
pub const PARTITION_LIMIT: u32 = 40;

/// Orders of elements, by enumeration.
pub fn element_orders(g: &PermGroup) -> Result<BTreeSet<u64>, GroupError> {
    Ok(g.elements(ENUMERATION_CAP)?.iter().map(Perm::order).collect())
}

fn partition_orders(n: u32, even_only: bool) -> BTreeSet<u64> {
    // enumerate partitions with parts ≤ max, tracking lcm and parity
    fn rec(rest: u32, max: u32, l: u64, transpositions: u32, even_only: bool, out: &mut BTreeSet<u64>) {
        if rest == 0 {
            if !even_only || transpositions % 2 == 0 {
                out.insert(l);
            }
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            rec(rest - part, part, lcm(l, part as u64), transpositions + part - 1, even_only, out);
        }
    }
    let mut out = BTreeSet::new();
    rec(n, n, 1, 0, even_only, &mut out);
    out
}

/// Orders of elements from the family structure, without enumeration.
pub fn element_orders_symbolic(g: &GroupExpr) -> Result<BTreeSet<u64>, GroupError> {
    Ok(match g {
        Sym(n) | Alt(n) if *n > PARTITION_LIMIT => {
            return Err(GroupError::TooLarge(format!(
                "element orders of {g} (partition limit {PARTITION_LIMIT})"
            )))
        }
        Sym(n) => partition_orders(*n, false),
        Alt(n) => partition_orders(*n, true),
        Cyc(n) => divisors(*n as u64).into_iter().collect(),
        Dih(n) => {
            let mut s: BTreeSet<u64> = divisors(*n as u64).into_iter().collect();
            s.insert(2);
            s
        }
        ElemAb(p, _) => [1, *p as u64].into_iter().collect(),
        Product(fs) => {
            let mut acc: BTreeSet<u64> = [1].into_iter().collect();
            for f in fs {
                let fo = element_orders_symbolic(f)?;
                acc = acc
                    .iter()
                    .flat_map(|&a| fo.iter().map(move |&b| lcm(a, b)))
                    .collect();
            }
            acc
        }
    })
}

/// Exponent (lcm of element orders).
pub fn exponent_symbolic(g: &GroupExpr) -> Result<u64, GroupError> {
    Ok(element_orders_symbolic(g)?.into_iter().fold(1, lcm))
}

/// The center, by enumeration.
pub fn center(g: &PermGroup) -> Result<PermGroup, GroupError> {
    let elems = g.elements(ENUMERATION_CAP)?;
    let central: Vec<Perm> = elems
        .into_iter()
        .filter(|x| g.generators().iter().all(|s| x.then(s) == s.then(x)))
        .collect();
    Ok(g.subgroup(minimal_generators(g.degree(), central)))
}

/// Greedy generating subset of a subgroup given by its elements.
fn minimal_generators(degree: usize, elems: Vec<Perm>) -> Vec<Perm> {
    let mut gens: Vec<Perm> = Vec::new();
    let mut sub = PermGroup::new(degree, Vec::new());
    for e in elems {
        if !e.is_identity() && !sub.contains(&e) {
            gens.push(e);
            sub = PermGroup::new(degree, gens.clone());
        }
    }
    gens
}

/// Order of the center from the family structure.
pub fn center_order_symbolic(g: &GroupExpr) -> BigUint {
    match g {
        Sym(n) => BigUint::from(if *n == 2 { 2u32 } else { 1 }),
        Alt(n) => BigUint::from(if *n == 3 { 3u32 } else { 1 }),
        Dih(1) => BigUint::from(2u32),
        Dih(2) => BigUint::from(4u32),
        Dih(n) => BigUint::from(if n % 2 == 0 { 2u32 } else { 1 }),
        Cyc(_) | ElemAb(_, _) => g.order(),
        Product(fs) => fs.iter().fold(BigUint::one(), |a, f| a * center_order_symbolic(f)),
    }
}

fn is_l_power(mut n: u64, l: u64) -> bool {
    while n % l == 0 {
        n /= l;
    }
    n == 1
}

fn l_part(mut n: u64, l: u64) -> u64 {
    let mut out = 1;
    while n % l == 0 {
        n /= l;
        out *= l;
    }
    out
}

/// A Sylow `l`-subgroup, built by repeatedly adjoining an `l`-element of
/// the normalizer.
pub fn sylow_subgroup(g: &PermGroup, l: u64) -> Result<PermGroup, GroupError> {
    if !is_prime(l) {
        return Err(GroupError::Invalid(format!("{l} is not prime")));
    }
    let elems = g.elements(CORE_CAP)?;
    let target = l_part(elems.len() as u64, l);
    let mut gens: Vec<Perm> = Vec::new();
    let mut p = g.subgroup(Vec::new());
    while p.order_u64().unwrap() < target {
        let found = elems.iter().find(|x| {
            !p.contains(x)
                && is_l_power(x.order(), l)
                && gens.iter().all(|s| p.contains(&s.conjugate_by(x)))
        });
        let x = found.expect("Sylow theory guarantees an l-element in the normalizer").clone();
        gens.push(x);
        p = g.subgroup(gens.clone());
    }
    Ok(p)
}

/// The largest normal `l`-subgroup `O_l(G)`: the intersection of the
/// conjugates of a Sylow `l`-subgroup.
pub fn l_core(g: &PermGroup, l: u64) -> Result<PermGroup, GroupError> {
    let sylow = sylow_subgroup(g, l)?;
    let mut core: HashSet<Perm> = sylow.element_set(CORE_CAP)?;
    loop {
        let before = core.len();
        for s in g.generators() {
            let conj: HashSet<Perm> = core.iter().map(|x| x.conjugate_by(s)).collect();
            core.retain(|x| conj.contains(x));
        }
        if core.len() == before {
            break;
        }
    }
    let mut elems: Vec<Perm> = core.into_iter().collect();
    elems.sort();
    Ok(g.subgroup(minimal_generators(g.degree(), elems)))
}

/// Order of `O_l(G)` from the family structure.
pub fn l_core_order_symbolic(g: &GroupExpr, l: u64) -> BigUint {
    let one = BigUint::one();
    match g {
        Sym(n) | Alt(n) if *n >= 5 => one,
        Sym(4) | Alt(4) => BigUint::from(if l == 2 { 4u32 } else { 1 }),
        Sym(3) | Alt(3) => BigUint::from(if l == 3 { 3u32 } else { 1 }),
        Sym(2) => BigUint::from(if l == 2 { 2u32 } else { 1 }),
        Sym(_) | Alt(_) => one,
        Dih(1) => BigUint::from(if l == 2 { 2u32 } else { 1 }),
        Dih(n) => {
            let n = *n as u64;
            if l != 2 {
                BigUint::from(l_part(n, l))
            } else if is_l_power(n, 2) {
                BigUint::from(2 * n)
            } else {
                BigUint::from(l_part(n, 2))
            }
        }
        Cyc(n) => BigUint::from(l_part(*n as u64, l)),
        ElemAb(p, _) => {
            if *p as u64 == l {
                g.order()
            } else {
                one
            }
        }
        Product(fs) => fs.iter().fold(one, |a, f| a * l_core_order_symbolic(f, l)),
    }
}
