//! Existence of linear characters `χ: G → K^×` with `χ(σ) ≠ 1`.
//!
//! A character takes values in the roots of unity of `K` whose order divides
//! `exp(G)`; these form a cyclic group of order `m`. Characters into `Z/m`
//! separate the points of `G / [G,G]G^m`, so one with `χ(σ) ≠ 0` exists iff
//! `σ ∉ [G,G]G^m`.

use std::collections::HashMap;

use super::perm::Perm;
use super::permgroup::PermGroup;
use super::structure::CORE_CAP;
use super::GroupError;
use crate::exactfield::arith::{divisors, is_prime, lcm};
use crate::fielddesc::{FieldDescriptor, TriBool};

/// A homomorphism `G → Z/target_order`, given by its values on the
/// generators of the permutation realization.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CharacterWitness {
    pub target_order: u64,
    pub values: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharacterAnswer {
    Yes(CharacterWitness),
    No,
    Unknown,
}

/// `[G,G]` together with all `m`-th powers.
fn verbal_subgroup(g: &PermGroup, elems: &[Perm], m: u64) -> PermGroup {
    let derived = g.derived_subgroup();
    let mut gens: Vec<Perm> = derived.generators().to_vec();
    let mut sub = g.subgroup(gens.clone());
    for x in elems {
        let y = x.pow(m);
        if !sub.contains(&y) {
            gens.push(y);
            sub = g.subgroup(gens.clone());
        }
    }
    sub
}

struct CosetGraph {
    /// `edges[c][i]`: coset reached from coset `c` by generator `i`.
    edges: Vec<Vec<usize>>,
    index: HashMap<Perm, usize>,
}

fn coset_graph(g: &PermGroup, elems: &[Perm], n: &PermGroup) -> Result<CosetGraph, GroupError> {
    let n_elems = n.elements(CORE_CAP)?;
    let mut index: HashMap<Perm, usize> = HashMap::with_capacity(elems.len());
    let mut reps: Vec<Perm> = Vec::new();
    let id = g.identity();
    for x in std::iter::once(&id).chain(elems) {
        if index.contains_key(x) {
            continue;
        }
        let c = reps.len();
        reps.push(x.clone());
        for y in &n_elems {
            index.insert(y.then(x), c);
        }
    }
    let edges = reps
        .iter()
        .map(|r| g.generators().iter().map(|s| index[&r.then(s)]).collect())
        .collect();
    Ok(CosetGraph { edges, index })
}

/// Labels cosets by a candidate assignment; `None` when inconsistent.
fn label_cosets(graph: &CosetGraph, values: &[u64], m: u64) -> Option<Vec<u64>> {
    let mut label = vec![u64::MAX; graph.edges.len()];
    label[0] = 0;
    let mut stack = vec![0usize];
    while let Some(c) = stack.pop() {
        for (i, &d) in graph.edges[c].iter().enumerate() {
            let want = (label[c] + values[i]) % m;
            if label[d] == u64::MAX {
                label[d] = want;
                stack.push(d);
            } else if label[d] != want {
                return None;
            }
        }
    }
    Some(label)
}

fn find_witness(
    g: &PermGroup,
    elems: &[Perm],
    n: &PermGroup,
    sigma: &Perm,
    m: u64,
) -> Result<Option<CharacterWitness>, GroupError> {
    let graph = coset_graph(g, elems, n)?;
    // order of each generator in the quotient bounds its value
    let choices: Vec<Vec<u64>> = g
        .generators()
        .iter()
        .map(|s| {
            let mut k = 1u64;
            let mut y = s.clone();
            while !n.contains(&y) {
                y = y.then(s);
                k += 1;
            }
            (0..k).map(|j| j * (m / k)).collect()
        })
        .collect();
    let sigma_coset = graph.index[sigma];
    let mut pick = vec![0usize; choices.len()];
    loop {
        let values: Vec<u64> = pick.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
        if let Some(label) = label_cosets(&graph, &values, m) {
            if label[sigma_coset] != 0 {
                return Ok(Some(CharacterWitness {
                    target_order: m,
                    values,
                }));
            }
        }
        let mut i = 0;
        loop {
            if i == pick.len() {
                return Ok(None);
            }
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

/// Decides whether some linear character `χ: G → K^×` has `χ(σ) ≠ 1`,
/// for `σ` of prime order.
pub fn character_exists(
    g: &PermGroup,
    sigma: &Perm,
    fd: &FieldDescriptor,
) -> Result<CharacterAnswer, GroupError> {
    let p = sigma.order();
    if !is_prime(p) {
        return Err(GroupError::NotPrimeOrder(p));
    }
    if !g.contains(sigma) {
        return Err(GroupError::Invalid(format!("{sigma} is not in the group")));
    }
    let elems = g.elements(CORE_CAP)?;
    let exp = elems.iter().fold(1u64, |a, x| lcm(a, x.order()));
    let mut m_yes = 1u64;
    let mut m_maybe = 1u64;
    for d in divisors(exp) {
        match fd.contains_zeta(d) {
            TriBool::Yes => {
                m_yes = lcm(m_yes, d);
                m_maybe = lcm(m_maybe, d);
            }
            TriBool::Unknown => m_maybe = lcm(m_maybe, d),
            TriBool::No => {}
        }
    }
    if m_yes % p == 0 {
        let n = verbal_subgroup(g, &elems, m_yes);
        if !n.contains(sigma) {
            if let Some(w) = find_witness(g, &elems, &n, sigma, m_yes)? {
                return Ok(CharacterAnswer::Yes(w));
            }
            unreachable!("characters separate points of the abelian quotient");
        }
    }
    if m_maybe % p != 0 || verbal_subgroup(g, &elems, m_maybe).contains(sigma) {
        return Ok(CharacterAnswer::No);
    }
    Ok(CharacterAnswer::Unknown)
}

/// `χ(x)` as a residue modulo the witness order; `None` if the values do not
/// define a homomorphism or `x` is outside the group.
pub fn character_value(g: &PermGroup, w: &CharacterWitness, x: &Perm) -> Option<u64> {
    let tree = g.cayley_bfs(CORE_CAP).ok()?;
    let m = w.target_order;
    let mut label = vec![0u64; tree.elements.len()];
    for (i, par) in tree.parent.iter().enumerate() {
        if let Some((j, s)) = par {
            label[i] = (label[*j] + w.values[*s]) % m;
        }
    }
    // consistency on every edge
    for (i, e) in tree.elements.iter().enumerate() {
        for (s_idx, s) in g.generators().iter().enumerate() {
            let j = tree.index[&e.then(s)];
            if label[j] != (label[i] + w.values[s_idx]) % m {
                return None;
            }
        }
    }
    tree.index.get(x).map(|&i| label[i])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupExpr::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fd(s: &str) -> FieldDescriptor {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        let v4 = ElemAb(2, 2).realize().unwrap();
        let s = v4.generators()[0].clone();
        let ans = character_exists(&v4, &s, &fd("Q")).unwrap();
        let CharacterAnswer::Yes(w) = ans else { panic!("expected a character") };
        assert_eq!(character_value(&v4, &w, &s), Some(1));

        let a5 = Alt(5).realize().unwrap();
        let five = Perm::from_cycles(5, &[vec![1, 2, 3, 4, 5]]);
        assert_eq!(character_exists(&a5, &five, &fd("Qzeta(5)")).unwrap(), CharacterAnswer::No);

        let c3 = Cyc(3).realize().unwrap();
        let g = c3.generators()[0].clone();
        assert!(matches!(character_exists(&c3, &g, &fd("F(4)")).unwrap(), CharacterAnswer::Yes(_)));
        assert_eq!(character_exists(&c3, &g, &fd("Q")).unwrap(), CharacterAnswer::No);
        assert_eq!(
            character_exists(&c3, &g, &fd("custom{char=0}")).unwrap(),
            CharacterAnswer::Unknown
        );
    }

    #[test]
    fn square_of_order_four_generator_needs_i() {
        let c4 = Cyc(4).realize().unwrap();
        let sigma = c4.generators()[0].pow(2);
        assert_eq!(character_exists(&c4, &sigma, &fd("Q")).unwrap(), CharacterAnswer::No);
        assert!(matches!(
            character_exists(&c4, &sigma, &fd("Qzeta(4)")).unwrap(),
            CharacterAnswer::Yes(_)
        ));
        assert!(matches!(
            character_exists(&c4, &sigma, &fd("F(2)")),
            Ok(CharacterAnswer::No)
        ));
        assert_eq!(
            character_exists(&c4, &c4.generators()[0], &fd("Q")),
            Err(GroupError::NotPrimeOrder(4))
        );
    }

    #[test]
    fn witnesses_are_homomorphisms() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let cases = [
            (Product(vec![Sym(3), Cyc(2)]), "Q"),
            (Product(vec![Cyc(6), Cyc(4)]), "Qzeta(12)"),
            (Dih(6), "Q"),
            (Product(vec![Alt(4), Cyc(3)]), "F(4)"),
        ];
        for (expr, field) in cases {
            let g = expr.realize().unwrap();
            let elems = g.elements(10_000).unwrap();
            for sigma in elems.iter().filter(|x| is_prime(x.order())) {
                if let CharacterAnswer::Yes(w) = character_exists(&g, sigma, &fd(field)).unwrap() {
                    let m = w.target_order;
                    assert_ne!(character_value(&g, &w, sigma), Some(0));
                    for _ in 0..200 {
                        let a = &elems[rng.gen_range(0..elems.len())];
                        let b = &elems[rng.gen_range(0..elems.len())];
                        let ab = character_value(&g, &w, &a.then(b)).unwrap();
                        let sum = (character_value(&g, &w, a).unwrap() + character_value(&g, &w, b).unwrap()) % m;
                        assert_eq!(ab, sum);
                    }
                }
            }
        }
    }
}
