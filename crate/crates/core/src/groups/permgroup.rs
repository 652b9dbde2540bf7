//! Permutation groups with a deterministic stabilizer chain.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::perm::Perm;
use super::GroupError;

/// Enumeration cap shared by every element-listing operation.
pub const ENUMERATION_CAP: u64 = 1_000_000;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    /// Transversal: `transversal[x] = Some(u)` with `u(base) = x`.
    transversal: Vec<Option<Perm>>,
    orbit: Vec<usize>,
    gens: Vec<Perm>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Level {
        let mut transversal = vec![None; degree];
        transversal[base] = Some(Perm::identity(degree));
        Level {
            base,
            transversal,
            orbit: vec![base],
            gens: Vec::new(),
        }
    }

    fn rebuild_orbit(&mut self) {
        let degree = self.transversal.len();
        self.transversal = vec![None; degree];
        self.transversal[self.base] = Some(Perm::identity(degree));
        self.orbit = vec![self.base];
        let mut i = 0;
        while i < self.orbit.len() {
            let y = self.orbit[i];
            let uy = self.transversal[y].clone().unwrap();
            for s in &self.gens {
                let z = s.apply(y);
                if self.transversal[z].is_none() {
                    self.transversal[z] = Some(uy.then(s));
                    self.orbit.push(z);
                }
            }
            i += 1;
        }
    }
}

/// Base and strong generating set built by Schreier–Sims with base points
/// chosen as the smallest moved point at each level.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, gens: &[Perm]) -> StabChain {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for g in gens {
            if let Some((j, h)) = chain.sift_from(0, g) {
                chain.add_generator(0, j, h);
            }
        }
        chain
    }

    /// Sifts `g` through levels `from..`; returns the level and residue where
    /// it falls out, or `None` when it is a member.
    fn sift_from(&self, from: usize, g: &Perm) -> Option<(usize, Perm)> {
        let mut h = g.clone();
        for (j, level) in self.levels.iter().enumerate().skip(from) {
            let x = h.apply(level.base);
            match &level.transversal[x] {
                None => return Some((j, h)),
                Some(u) => h = h.then(&u.inverse()),
            }
        }
        if h.is_identity() {
            None
        } else {
            Some((self.levels.len(), h))
        }
    }

    /// Adds `g`, which fixes the bases of levels `..j`, as a strong generator
    /// of levels `from..=j`.
    fn add_generator(&mut self, from: usize, j: usize, g: Perm) {
        if j == self.levels.len() {
            let base = (0..self.degree)
                .find(|&x| g.apply(x) != x)
                .expect("nontrivial residue");
            self.levels.push(Level::new(base, self.degree));
        }
        for l in from..=j {
            self.levels[l].gens.push(g.clone());
            self.levels[l].rebuild_orbit();
        }
        for l in (from..=j).rev() {
            self.close_level(l);
        }
    }

    /// Ensures every Schreier generator of level `i` sifts through the
    /// deeper levels.
    fn close_level(&mut self, i: usize) {
        let mut k = 0;
        while k < self.levels[i].orbit.len() {
            let y = self.levels[i].orbit[k];
            let mut s_idx = 0;
            while s_idx < self.levels[i].gens.len() {
                let level = &self.levels[i];
                let s = &level.gens[s_idx];
                let z = s.apply(y);
                let uy = level.transversal[y].as_ref().unwrap();
                let uz = level.transversal[z].as_ref().unwrap();
                let sg = uy.then(s).then(&uz.inverse());
                if let Some((j, h)) = self.sift_from(i + 1, &sg) {
                    self.add_generator(i + 1, j, h);
                }
                s_idx += 1;
            }
            k += 1;
        }
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.sift_from(0, g).is_none()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// All elements, as products of transversal elements.
    pub fn elements(&self) -> Vec<Perm> {
        let mut out = vec![Perm::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for &x in &level.orbit {
                let u = level.transversal[x].as_ref().unwrap();
                for e in &out {
                    next.push(e.then(u));
                }
            }
            out = next;
        }
        out
    }
}

#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    chain: OnceLock<StabChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            chain,
        }
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> PermGroup {
        assert!(
            generators.iter().all(|g| g.degree() == degree),
            "generator degree mismatch"
        );
        PermGroup {
            degree,
            generators,
            chain: OnceLock::new(),
        }
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::new(degree, Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    pub fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::new(self.degree, &self.generators))
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    /// Order when it fits in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.chain().contains(g)
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(Perm::is_identity)
    }

    fn enumeration_size(&self, cap: u64) -> Result<u64, GroupError> {
        match self.order_u64() {
            Some(n) if n <= cap => Ok(n),
            _ => Err(GroupError::TooLarge(format!(
                "group of order {} exceeds the enumeration cap {}",
                self.order(),
                cap
            ))),
        }
    }

    /// Every element; `TooLarge` above `cap`.
    pub fn elements(&self, cap: u64) -> Result<Vec<Perm>, GroupError> {
        self.enumeration_size(cap)?;
        Ok(self.chain().elements())
    }

    /// Elements in breadth-first order over the Cayley graph, with the
    /// index of the parent and the generator used to reach each one.
    pub fn cayley_bfs(&self, cap: u64) -> Result<CayleyTree, GroupError> {
        let n = self.enumeration_size(cap)? as usize;
        let mut elements = Vec::with_capacity(n);
        let mut parent = Vec::with_capacity(n);
        let mut index = HashMap::with_capacity(n);
        let id = self.identity();
        index.insert(id.clone(), 0usize);
        elements.push(id);
        parent.push(None);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (s_idx, s) in self.generators.iter().enumerate() {
                let next = elements[i].then(s);
                if !index.contains_key(&next) {
                    let j = elements.len();
                    index.insert(next.clone(), j);
                    elements.push(next);
                    parent.push(Some((i, s_idx)));
                    queue.push_back(j);
                }
            }
        }
        Ok(CayleyTree {
            elements,
            parent,
            index,
        })
    }

    /// Subgroup generated by the given elements (same degree).
    pub fn subgroup(&self, gens: Vec<Perm>) -> PermGroup {
        PermGroup::new(self.degree, gens)
    }

    /// Normal closure of `gens` under conjugation by this group's generators.
    pub fn normal_closure(&self, gens: Vec<Perm>) -> PermGroup {
        let mut current: Vec<Perm> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        let mut sub = PermGroup::new(self.degree, current.clone());
        let mut queue: VecDeque<Perm> = current.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            for s in &self.generators {
                let c = x.conjugate_by(s);
                if !sub.contains(&c) {
                    current.push(c.clone());
                    sub = PermGroup::new(self.degree, current.clone());
                    queue.push_back(c);
                }
            }
        }
        sub
    }

    /// The commutator subgroup `[G, G]`.
    pub fn derived_subgroup(&self) -> PermGroup {
        let mut comms = Vec::new();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                comms.push(a.commutator(b));
            }
        }
        self.normal_closure(comms)
    }

    /// Whether the group is abelian (generators commute pairwise).
    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[i + 1..]
                .iter()
                .all(|b| a.then(b) == b.then(a))
        })
    }

    /// Elements of `sub` as a set, for intersection tests.
    pub fn element_set(&self, cap: u64) -> Result<HashSet<Perm>, GroupError> {
        Ok(self.elements(cap)?.into_iter().collect())
    }
}

/// Breadth-first spanning tree of a Cayley graph.
pub struct CayleyTree {
    pub elements: Vec<Perm>,
    /// `(parent index, generator index)`; `None` for the identity.
    pub parent: Vec<Option<(usize, usize)>>,
    pub index: HashMap<Perm, usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> PermGroup {
        let t = Perm::from_cycles(n, &[vec![1, 2]]);
        let c = Perm::from_cycles(n, &[(1..=n).collect()]);
        PermGroup::new(n, vec![t, c])
    }

    fn factorial(n: u32) -> BigUint {
        (1..=n).fold(BigUint::one(), |a, k| a * BigUint::from(k))
    }

    #[test]
    fn symmetric_orders() {
        for n in 2..=10 {
            assert_eq!(sym(n).order(), factorial(n as u32), "S_{n}");
        }
    }

    #[test]
    fn large_symmetric_group_order() {
        assert_eq!(sym(40).order(), factorial(40));
    }

    #[test]
    fn enumeration_matches_bfs() {
        let g = sym(5);
        let elems = g.element_set(200).unwrap();
        let tree = g.cayley_bfs(200).unwrap();
        assert_eq!(elems.len(), 120);
        assert_eq!(tree.elements.len(), 120);
        assert!(tree.elements.iter().all(|e| elems.contains(e)));
        assert!(g.elements(100).is_err());
    }

    #[test]
    fn membership_and_derived_subgroup() {
        let g = sym(5);
        let even = Perm::from_cycles(5, &[vec![1, 2, 3]]);
        assert!(g.contains(&even));
        let d = g.derived_subgroup();
        assert_eq!(d.order_u64(), Some(60));
        assert!(d.contains(&even));
        assert!(!d.contains(&Perm::from_cycles(5, &[vec![1, 2]])));
    }
}
