//! Group family expressions, their canonical form, text syntax and standard
//! permutation realizations.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::perm::Perm;
use super::permgroup::PermGroup;
use super::GroupError;
use crate::exactfield::arith::is_prime;

/// Largest realization degree accepted; permutations store points as `u16`.
pub const MAX_DEGREE: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupExpr {
    Sym(u32),
    Alt(u32),
    /// Dihedral group of order `2n`.
    Dih(u32),
    Cyc(u32),
    /// `(Z/pZ)^r`.
    ElemAb(u32, u32),
    /// Direct product; nested products are flattened by [`GroupExpr::canonical`].
    Product(Vec<GroupExpr>),
}

use GroupExpr::*;

fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |a, k| a * BigUint::from(k))
}

impl GroupExpr {
    pub fn trivial() -> GroupExpr {
        Cyc(1)
    }

    pub fn product(factors: Vec<GroupExpr>) -> GroupExpr {
        Product(factors).canonical()
    }

    pub fn validate(&self) -> Result<(), GroupError> {
        match self {
            Sym(n) | Alt(n) | Dih(n) | Cyc(n) if *n == 0 => {
                Err(GroupError::Invalid(format!("{self:?}: n must be positive")))
            }
            ElemAb(p, r) => {
                if !is_prime(*p as u64) {
                    Err(GroupError::Invalid(format!("E({p},{r}): {p} is not prime")))
                } else if *r == 0 {
                    Err(GroupError::Invalid(format!("E({p},{r}): r must be positive")))
                } else {
                    Ok(())
                }
            }
            Product(fs) => fs.iter().try_for_each(GroupExpr::validate),
            _ => Ok(()),
        }
    }

    /// Atoms of a flattened product (a single atom yields itself).
    pub fn factors(&self) -> Vec<GroupExpr> {
        match self {
            Product(fs) => fs.iter().flat_map(GroupExpr::factors).collect(),
            a => vec![a.clone()],
        }
    }

    pub fn is_atom(&self) -> bool {
        !matches!(self, Product(_))
    }

    pub fn is_trivial(&self) -> bool {
        self.order().is_one()
    }

    /// Canonical form: isomorphic small atoms renamed (`S2`, `D1`, `E(p,1)`
    /// to cyclic; `A3` to `C3`; `D2` to `E(2,2)`), trivial factors dropped,
    /// products flattened and sorted. The trivial group is `C1`.
    pub fn canonical(&self) -> GroupExpr {
        let mut atoms: Vec<GroupExpr> = self
            .factors()
            .into_iter()
            .map(|a| match a {
                Sym(2) | Dih(1) => Cyc(2),
                Alt(3) => Cyc(3),
                ElemAb(p, 1) => Cyc(p),
                Dih(2) => ElemAb(2, 2),
                a => a,
            })
            .filter(|a| !a.is_trivial())
            .collect();
        atoms.sort();
        match atoms.len() {
            0 => Cyc(1),
            1 => atoms.pop().unwrap(),
            _ => Product(atoms),
        }
    }

    pub fn order(&self) -> BigUint {
        match self {
            Sym(n) => factorial(*n),
            Alt(n) if *n <= 2 => BigUint::one(),
            Alt(n) => factorial(*n) / 2u32,
            Dih(n) => BigUint::from(2 * *n as u64),
            Cyc(n) => BigUint::from(*n),
            ElemAb(p, r) => BigUint::from(*p).pow(*r),
            Product(fs) => fs.iter().fold(BigUint::one(), |a, f| a * f.order()),
        }
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    /// Degree of the standard realization.
    pub fn degree(&self) -> u64 {
        match self {
            Sym(n) | Alt(n) | Cyc(n) => *n as u64,
            Dih(1) => 2,
            Dih(2) => 4,
            Dih(n) => *n as u64,
            ElemAb(p, r) => *p as u64 * *r as u64,
            Product(fs) => fs.iter().map(GroupExpr::degree).sum(),
        }
    }

    /// Standard generators on `degree()` points.
    pub fn standard_generators(&self) -> Result<Vec<Perm>, GroupError> {
        let deg = self.degree();
        if deg > MAX_DEGREE {
            return Err(GroupError::TooLarge(format!(
                "{self} needs {deg} points (limit {MAX_DEGREE})"
            )));
        }
        let d = deg as usize;
        let gens = match self {
            Sym(1) | Alt(1) | Alt(2) | Cyc(1) => Vec::new(),
            Sym(2) => vec![Perm::from_cycles(2, &[vec![1, 2]])],
            Sym(n) => vec![
                Perm::from_cycles(d, &[vec![1, 2]]),
                Perm::from_cycles(d, &[(1..=*n as usize).collect()]),
            ],
            Alt(n) => (3..=*n as usize)
                .map(|i| Perm::from_cycles(d, &[vec![1, 2, i]]))
                .collect(),
            Dih(1) => vec![Perm::from_cycles(2, &[vec![1, 2]])],
            Dih(2) => vec![
                Perm::from_cycles(4, &[vec![1, 2]]),
                Perm::from_cycles(4, &[vec![3, 4]]),
            ],
            Dih(n) => {
                let n = *n as usize;
                // rotation i ↦ i+1 and reflection i ↦ n+2-i (1-based)
                let refl: Vec<u16> = (0..n).map(|i| ((n - i) % n) as u16).collect();
                vec![
                    Perm::from_cycles(n, &[(1..=n).collect()]),
                    Perm(refl),
                ]
            }
            Cyc(n) => vec![Perm::from_cycles(d, &[(1..=*n as usize).collect()])],
            ElemAb(p, r) => {
                let p = *p as usize;
                (0..*r as usize)
                    .map(|k| Perm::from_cycles(d, &[(k * p + 1..=k * p + p).collect()]))
                    .collect()
            }
            Product(fs) => {
                let mut out = Vec::new();
                let mut offset = 0usize;
                for f in fs {
                    for g in f.standard_generators()? {
                        out.push(g.shifted(offset, d));
                    }
                    offset += f.degree() as usize;
                }
                out
            }
        };
        Ok(gens)
    }

    /// Number of standard generators.
    pub fn generator_count(&self) -> usize {
        match self {
            Sym(1) | Alt(1) | Alt(2) | Cyc(1) => 0,
            Sym(2) | Dih(1) | Cyc(_) => 1,
            Sym(_) | Dih(_) => 2,
            Alt(n) => *n as usize - 2,
            ElemAb(_, r) => *r as usize,
            Product(fs) => fs.iter().map(GroupExpr::generator_count).sum(),
        }
    }

    /// Faithful permutation realization with the standard generators.
    pub fn realize(&self) -> Result<PermGroup, GroupError> {
        self.validate()?;
        let gens = self.standard_generators()?;
        Ok(PermGroup::new(self.degree() as usize, gens))
    }

    /// Realization restricted to groups small enough to enumerate.
    pub fn realize_enumerable(&self, cap: u64) -> Result<PermGroup, GroupError> {
        match self.order_u64() {
            Some(n) if n <= cap => self.realize(),
            _ => Err(GroupError::TooLarge(format!(
                "{self} has order {} above {cap}",
                self.order()
            ))),
        }
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            Sym(n) => *n <= 2,
            Alt(n) => *n <= 3,
            Dih(n) => *n <= 2,
            Cyc(_) | ElemAb(_, _) => true,
            Product(fs) => fs.iter().all(GroupExpr::is_abelian),
        }
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sym(n) => write!(f, "S{n}"),
            Alt(n) => write!(f, "A{n}"),
            Dih(n) => write!(f, "D{n}"),
            Cyc(n) => write!(f, "C{n}"),
            ElemAb(p, r) => write!(f, "E({p},{r})"),
            Product(fs) => {
                let parts: Vec<String> = fs
                    .iter()
                    .map(|g| {
                        if g.is_atom() {
                            g.to_string()
                        } else {
                            format!("({g})")
                        }
                    })
                    .collect();
                write!(f, "{}", parts.join(" x "))
            }
        }
    }
}

fn parse_uint(s: &str, whole: &str) -> Result<u32, GroupError> {
    s.parse::<u32>()
        .map_err(|_| GroupError::Parse(format!("bad number {s:?} in {whole:?}")))
}

fn parse_atom(tok: &str, whole: &str) -> Result<GroupExpr, GroupError> {
    let mut chars = tok.chars();
    let head = chars.next().ok_or_else(|| GroupError::Parse(format!("empty factor in {whole:?}")))?;
    let rest = chars.as_str();
    let atom = match head.to_ascii_uppercase() {
        'S' => Sym(parse_uint(rest, whole)?),
        'A' => Alt(parse_uint(rest, whole)?),
        'D' => Dih(parse_uint(rest, whole)?),
        'C' => Cyc(parse_uint(rest, whole)?),
        'E' => {
            let inner = rest
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| GroupError::Parse(format!("expected E(p,r) in {whole:?}")))?;
            let (p, r) = inner
                .split_once(',')
                .ok_or_else(|| GroupError::Parse(format!("expected E(p,r) in {whole:?}")))?;
            ElemAb(parse_uint(p, whole)?, parse_uint(r, whole)?)
        }
        _ => return Err(GroupError::Parse(format!("unknown group family {tok:?} in {whole:?}"))),
    };
    atom.validate()?;
    Ok(atom)
}

impl FromStr for GroupExpr {
    type Err = GroupError;

    /// Grammar: `atom ("x" atom)*` with atoms `S<n>`, `A<n>`, `D<n>`,
    /// `C<n>`, `E(<p>,<r>)`; whitespace is ignored and `×` or `*` may
    /// replace `x`.
    fn from_str(s: &str) -> Result<GroupExpr, GroupError> {
        let compact: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '×' || c == '*' { 'x' } else { c })
            .collect();
        if compact.is_empty() {
            return Err(GroupError::Parse("empty group expression".into()));
        }
        let factors = compact
            .split(['x', 'X'])
            .map(|tok| parse_atom(tok, s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(if factors.len() == 1 {
            factors.into_iter().next().unwrap()
        } else {
            Product(factors)
        })
    }
}
