//! Machine-checkable hypotheses of the central-extension rules and the
//! dihedral criterion.

use std::collections::BTreeSet;

use num_traits::One;

use super::EngineError;
use crate::exactfield::arith::{is_prime, prime_factors};
use crate::fielddesc::{FieldDescriptor, FpDim, TriBool};
use crate::groups::GroupExpr::{self, *};
use crate::groups::{
    center, character_exists, l_core, l_core_order_symbolic, CharacterAnswer, CharacterWitness, Perm,
    PermGroup, CORE_CAP,
};

/// Outcome of the split central-extension hypothesis check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitCheck {
    Applicable,
    Blocked(String),
}

/// Outcome of the non-split central-extension hypothesis check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CentralCheck {
    Applicable(CharacterWitness),
    Blocked(String),
}

/// Primes dividing `|Z(G)|`, from the family structure.
pub fn center_primes(g: &GroupExpr) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for atom in g.canonical().factors() {
        match atom {
            ElemAb(p, _) => {
                out.insert(p as u64);
            }
            Cyc(n) => out.extend(prime_factors(n as u64)),
            Dih(n) if n % 2 == 0 => {
                out.insert(2);
            }
            Sym(_) | Alt(_) | Dih(_) | Product(_) => {}
        }
    }
    out
}

/// Hypotheses for `ed(G′ × C_p) = ed(G′) + 1`: the characteristic `l` is 0
/// or `G′ × C_p` has no nontrivial normal `l`-subgroup; `ζ_p ∈ K`; and
/// `ζ_{p′} ∉ K` for every prime `p′ ≠ p` dividing `|Z(G′)|`. Any Unknown
/// blocks.
pub fn check_split_central(gprime: &GroupExpr, p: u64, fd: &FieldDescriptor) -> Result<SplitCheck, EngineError> {
    gprime.validate()?;
    if !is_prime(p) {
        return Err(EngineError::NotPrimeOrder(p));
    }
    let l = fd.characteristic();
    if l != 0 {
        let g = GroupExpr::Product(vec![gprime.clone(), Cyc(p as u32)]);
        if !l_core_order_symbolic(&g, l).is_one() {
            return Ok(SplitCheck::Blocked(format!("{g} has a nontrivial normal {l}-subgroup")));
        }
    }
    match fd.contains_zeta(p) {
        TriBool::Yes => {}
        TriBool::No => return Ok(SplitCheck::Blocked(format!("zeta_{p} is not in {fd}"))),
        TriBool::Unknown => return Ok(SplitCheck::Blocked(format!("zeta_{p} in {fd} is unknown"))),
    }
    for q in center_primes(gprime) {
        if q == p {
            continue;
        }
        match fd.contains_zeta(q) {
            TriBool::No => {}
            TriBool::Yes => {
                return Ok(SplitCheck::Blocked(format!(
                    "{q} divides |Z({gprime})| and zeta_{q} is in {fd}"
                )))
            }
            TriBool::Unknown => {
                return Ok(SplitCheck::Blocked(format!(
                    "{q} divides |Z({gprime})| and zeta_{q} in {fd} is unknown"
                )))
            }
        }
    }
    Ok(SplitCheck::Applicable)
}

/// Hypotheses for `ed(G) = ed(G/⟨σ⟩) + 1` with `σ` central of prime order:
/// a character with `χ(σ) ≠ 1`, no `ζ_m ∈ K` for central `τ` of order `m`
/// whose cyclic group properly contains `⟨σ⟩`, and the normal-subgroup
/// condition on the characteristic.
pub fn check_central_quotient(g: &PermGroup, sigma: &Perm, fd: &FieldDescriptor) -> Result<CentralCheck, EngineError> {
    let elems = g.elements(CORE_CAP)?;
    let p = sigma.order();
    if !is_prime(p) {
        return Err(EngineError::NotPrimeOrder(p));
    }
    if !g.contains(sigma) || g.generators().iter().any(|s| s.then(sigma) != sigma.then(s)) {
        return Err(EngineError::NotCentral(sigma.to_string()));
    }
    let l = fd.characteristic();
    if l != 0 && !l_core(g, l)?.is_trivial() {
        return Ok(CentralCheck::Blocked(format!("nontrivial normal {l}-subgroup")));
    }
    let witness = match character_exists(g, sigma, fd)? {
        CharacterAnswer::Yes(w) => w,
        CharacterAnswer::No => return Ok(CentralCheck::Blocked(format!("no character with chi({sigma}) != 1"))),
        CharacterAnswer::Unknown => {
            return Ok(CentralCheck::Blocked(format!("existence of a character separating {sigma} is unknown")))
        }
    };
    let z = center(g)?;
    let mut orders = BTreeSet::new();
    for tau in elems.iter().filter(|t| z.contains(t)) {
        let m = tau.order();
        if m > p && generates(tau, sigma) {
            orders.insert(m);
        }
    }
    for m in orders {
        match fd.contains_zeta(m) {
            TriBool::No => {}
            answer => {
                return Ok(CentralCheck::Blocked(format!(
                    "a central element of order {m} contains {sigma} and zeta_{m} in {fd} is {answer}"
                )))
            }
        }
    }
    Ok(CentralCheck::Applicable(witness))
}

/// Whether `σ ∈ ⟨τ⟩`.
fn generates(tau: &Perm, sigma: &Perm) -> bool {
    let mut x = tau.clone();
    for _ in 0..tau.order() {
        if &x == sigma {
            return true;
        }
        x = x.then(tau);
    }
    false
}

/// The dihedral criterion for `ed_K(D_n) = 1` (`D_n` of order `2n`).
///
/// Odd characteristic or 0: `n` odd, and `ζ_n + ζ_n⁻¹ ∈ K` when
/// `char ∤ n`, or `n = char` otherwise. Characteristic 2: `ζ_n + ζ_n⁻¹ ∈ K`
/// for odd `n`; `n = 2` with `|K| ≥ 4` for even `n`.
pub fn dihedral_criterion(n: u64, fd: &FieldDescriptor) -> TriBool {
    let c = fd.characteristic();
    if c == 2 {
        if n % 2 == 1 {
            return fd.contains_real_zeta(n);
        }
        if n != 2 {
            return TriBool::No;
        }
        return match fd.fp_dimension() {
            Ok(FpDim::Finite(k)) => TriBool::from_bool(k >= 2),
            Ok(FpDim::Infinite) => TriBool::Yes,
            Err(_) => TriBool::Unknown,
        };
    }
    if n % 2 == 0 {
        return TriBool::No;
    }
    if c != 0 && n % c == 0 {
        return TriBool::from_bool(n == c);
    }
    fd.contains_real_zeta(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd(s: &str) -> FieldDescriptor {
        s.parse().unwrap()
    }

    #[test]
    fn split_examples() {
        assert_eq!(check_split_central(&Sym(5), 2, &fd("Q")).unwrap(), SplitCheck::Applicable);
        assert_eq!(check_split_central(&Cyc(3), 3, &fd("F(4)")).unwrap(), SplitCheck::Applicable);
        assert_eq!(check_split_central(&Cyc(2), 2, &fd("Qzeta(8)")).unwrap(), SplitCheck::Applicable);
        assert!(matches!(check_split_central(&Cyc(3), 3, &fd("Q")).unwrap(), SplitCheck::Blocked(_)));
        // zeta_3 in Q(zeta_3) and 3 divides |Z(C_3)|
        assert!(matches!(check_split_central(&Cyc(3), 2, &fd("Qzeta(3)")).unwrap(), SplitCheck::Blocked(_)));
        // S_4 x C_2 has a normal 2-subgroup
        assert!(matches!(check_split_central(&Sym(4), 3, &fd("F(4)")).unwrap(), SplitCheck::Blocked(_)));
    }

    #[test]
    fn central_examples() {
        let g = GroupExpr::Product(vec![Alt(5), Cyc(2), Cyc(2)]).realize().unwrap();
        let sigma = g.generators().last().unwrap().clone();
        assert!(matches!(check_central_quotient(&g, &sigma, &fd("Q")).unwrap(), CentralCheck::Applicable(_)));

        let c4 = Cyc(4).realize().unwrap();
        let s = c4.generators()[0].pow(2);
        let CentralCheck::Blocked(reason) = check_central_quotient(&c4, &s, &fd("Q")).unwrap() else {
            panic!("C4 over Q must be blocked")
        };
        assert!(reason.contains("no character"), "{reason}");
        // with i in K the character exists but the order-4 element blocks
        assert!(matches!(check_central_quotient(&c4, &s, &fd("Qzeta(4)")).unwrap(), CentralCheck::Blocked(_)));

        let c2 = Cyc(2).realize().unwrap();
        let gen = c2.generators()[0].clone();
        assert!(matches!(check_central_quotient(&c2, &gen, &fd("F(3)")).unwrap(), CentralCheck::Applicable(_)));

        let s3 = Sym(3).realize().unwrap();
        let t = s3.generators()[0].clone();
        assert!(matches!(check_central_quotient(&s3, &t, &fd("Q")), Err(EngineError::NotCentral(_))));
        assert!(matches!(check_central_quotient(&c4, &c4.generators()[0], &fd("Q")), Err(EngineError::NotPrimeOrder(4))));
    }

    #[test]
    fn dihedral_criterion_examples() {
        assert_eq!(dihedral_criterion(3, &fd("Q")), TriBool::Yes);
        assert_eq!(dihedral_criterion(7, &fd("Q")), TriBool::No);
        assert_eq!(dihedral_criterion(4, &fd("Q")), TriBool::No);
        assert_eq!(dihedral_criterion(5, &fd("Qzeta(5)")), TriBool::Yes);
        assert_eq!(dihedral_criterion(3, &fd("F(3)")), TriBool::Yes);
        assert_eq!(dihedral_criterion(9, &fd("F(3)")), TriBool::No);
        assert_eq!(dihedral_criterion(2, &fd("F(2)")), TriBool::No);
        assert_eq!(dihedral_criterion(2, &fd("F(4)")), TriBool::Yes);
        assert_eq!(dihedral_criterion(4, &fd("F(4)")), TriBool::No);
    }
}
