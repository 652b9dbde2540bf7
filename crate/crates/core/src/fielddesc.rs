//! Decidable descriptions of a ground field `K`: characteristic, roots of
//! unity, real parts `ζ_n + ζ_n⁻¹`, and dimension over the prime field.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::exactfield::arith::{gcd, is_prime, lcm, order_mod, pow_mod, prime_power};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TriBool {
    Yes,
    No,
    Unknown,
}

impl TriBool {
    pub fn from_bool(b: bool) -> TriBool {
        if b {
            TriBool::Yes
        } else {
            TriBool::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == TriBool::Yes
    }

    pub fn is_no(self) -> bool {
        self == TriBool::No
    }
}

impl fmt::Display for TriBool {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TriBool::Yes => "yes",
            TriBool::No => "no",
            TriBool::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FpDim {
    Finite(u32),
    Infinite,
}

impl fmt::Display for FpDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FpDim::Finite(k) => write!(f, "{k}"),
            FpDim::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CustomField {
    pub characteristic: u64,
    pub zeta_yes: BTreeSet<u64>,
    pub zeta_no: BTreeSet<u64>,
    pub real_zeta_yes: BTreeSet<u64>,
    pub real_zeta_no: BTreeSet<u64>,
    pub fp_dim: FpDim,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldDescriptor {
    RationalField,
    /// `Q(ζ_m)`.
    Cyclotomic(u64),
    /// `F_{p^k}`.
    FiniteField(u64, u32),
    Custom(CustomField),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldDescError {
    #[error("characteristic zero field has no F_p-dimension")]
    CharZero,
    #[error("characteristic {0} divides {1}")]
    CharDividesM(u64, u64),
    #[error("inconsistent custom field: {0}")]
    Inconsistent(String),
    #[error("cannot parse field descriptor: {0}")]
    Parse(String),
}

/// Real parts `ζ_n + ζ_n⁻¹` that are rational in every characteristic.
const ALWAYS_REAL: [u64; 5] = [1, 2, 3, 4, 6];

fn finite_zeta(p: u64, k: u32, n: u64) -> bool {
    if n == 0 || gcd(n, p) != 1 {
        return false;
    }
    // n | p^k - 1  ⟺  p^k ≡ 1 (mod n)
    pow_mod(p, k as u64, n) == 1 % n
}

fn finite_real_zeta(p: u64, k: u32, n: u64) -> bool {
    if n == 0 || gcd(n, p) != 1 {
        return false;
    }
    let r = pow_mod(p, k as u64, n);
    r == 1 % n || r == (n - 1) % n
}

fn cyclotomic_real_zeta(m: u64, n: u64) -> bool {
    let m2 = lcm(2, m);
    let big = lcm(n, 2 * m);
    (1..=big)
        .filter(|&a| gcd(a, big) == 1 && a % m2 == 1 % m2)
        .all(|a| a % n == 1 % n || a % n == (n - 1) % n)
}

impl CustomField {
    fn finite(&self) -> Option<(u64, u32)> {
        match (self.characteristic, self.fp_dim) {
            (p, FpDim::Finite(k)) if p > 0 => Some((p, k)),
            _ => None,
        }
    }

    /// `lcm` of the orders of roots of unity known to lie in `K`.
    fn zeta_lcm(&self) -> u64 {
        let base = if self.characteristic == 2 { 1 } else { 2 };
        self.zeta_yes.iter().fold(base, |a, &d| lcm(a, d))
    }

    fn zeta_from_sets(&self, n: u64) -> TriBool {
        let p = self.characteristic;
        if n == 0 || (p > 0 && n % p == 0) {
            return TriBool::No;
        }
        if self.zeta_lcm() % n == 0 {
            return TriBool::Yes;
        }
        if self.zeta_no.iter().any(|&d| n % d == 0)
            || self.real_zeta_no.iter().any(|&d| n % d == 0)
        {
            return TriBool::No;
        }
        TriBool::Unknown
    }

    fn real_from_sets(&self, n: u64) -> TriBool {
        let p = self.characteristic;
        if n == 0 || (p > 0 && n % p == 0) {
            return TriBool::No;
        }
        if ALWAYS_REAL.contains(&n)
            || self.zeta_lcm() % n == 0
            || self.real_zeta_yes.iter().any(|&d| d % n == 0)
        {
            return TriBool::Yes;
        }
        if self.real_zeta_no.iter().any(|&d| n % d == 0) {
            return TriBool::No;
        }
        TriBool::Unknown
    }

    fn check(&self) -> Result<(), FieldDescError> {
        let bad = |m: String| Err(FieldDescError::Inconsistent(m));
        let p = self.characteristic;
        if p != 0 && !is_prime(p) {
            return bad(format!("characteristic {p} is neither 0 nor prime"));
        }
        if p == 0 && self.fp_dim != FpDim::Infinite {
            return bad("fp_dim is only meaningful in positive characteristic".into());
        }
        if let FpDim::Finite(0) = self.fp_dim {
            return bad("fp_dim must be positive".into());
        }
        let all = self
            .zeta_yes
            .iter()
            .chain(&self.zeta_no)
            .chain(&self.real_zeta_yes)
            .chain(&self.real_zeta_no);
        for &n in all {
            if n == 0 || (p > 0 && n % p == 0) {
                return bad(format!("{n} is zero or divisible by the characteristic"));
            }
        }
        for &d in &self.zeta_no {
            if self.zeta_lcm() % d == 0 {
                return bad(format!("zeta_{d} is forced into K by zeta_yes"));
            }
        }
        for &d in &self.real_zeta_no {
            if ALWAYS_REAL.contains(&d)
                || self.zeta_lcm() % d == 0
                || self.real_zeta_yes.iter().any(|&y| y % d == 0)
            {
                return bad(format!("zeta_{d} + zeta_{d}^-1 is forced into K"));
            }
        }
        if let Some((p, k)) = self.finite() {
            for n in 1..=200u64 {
                let exact = TriBool::from_bool(finite_zeta(p, k, n));
                let claimed = self.zeta_from_sets(n);
                let real_exact = TriBool::from_bool(finite_real_zeta(p, k, n));
                let real_claimed = self.real_from_sets(n);
                if (claimed != TriBool::Unknown && claimed != exact)
                    || (real_claimed != TriBool::Unknown && real_claimed != real_exact)
                {
                    return bad(format!("sets contradict the finite field F_{p}^{k} at n = {n}"));
                }
            }
            for &n in self.zeta_yes.iter().chain(&self.zeta_no) {
                if self.zeta_from_sets(n) != TriBool::from_bool(finite_zeta(p, k, n)) {
                    return bad(format!("sets contradict F_{p}^{k} at n = {n}"));
                }
            }
        }
        Ok(())
    }
}

impl FieldDescriptor {
    pub fn rationals() -> FieldDescriptor {
        FieldDescriptor::RationalField
    }

    pub fn cyclotomic(m: u64) -> FieldDescriptor {
        if m <= 2 {
            FieldDescriptor::RationalField
        } else if m % 4 == 2 {
            // Q(ζ_m) = Q(ζ_{m/2}) for m ≡ 2 mod 4
            FieldDescriptor::cyclotomic(m / 2)
        } else {
            FieldDescriptor::Cyclotomic(m)
        }
    }

    /// `F_q` for a prime power `q`.
    pub fn finite(q: u64) -> Result<FieldDescriptor, FieldDescError> {
        let (p, k) = prime_power(q)
            .ok_or_else(|| FieldDescError::Parse(format!("{q} is not a prime power")))?;
        Ok(FieldDescriptor::FiniteField(p, k))
    }

    pub fn custom(c: CustomField) -> Result<FieldDescriptor, FieldDescError> {
        c.check()?;
        Ok(FieldDescriptor::Custom(c))
    }

    pub fn characteristic(&self) -> u64 {
        char_of(self)
    }

    pub fn contains_zeta(&self, n: u64) -> TriBool {
        contains_zeta(self, n)
    }

    pub fn contains_real_zeta(&self, n: u64) -> TriBool {
        contains_real_zeta(self, n)
    }

    pub fn fp_dimension(&self) -> Result<FpDim, FieldDescError> {
        fp_dimension(self)
    }

    pub fn extend_with_zeta(&self, m: u64) -> Result<FieldDescriptor, FieldDescError> {
        extend_with_zeta(self, m)
    }

    /// Field size when `K` is known to be finite.
    pub fn finite_order(&self) -> Option<u64> {
        let (p, k) = match self {
            FieldDescriptor::FiniteField(p, k) => (*p, *k),
            FieldDescriptor::Custom(c) => c.finite()?,
            _ => return None,
        };
        p.checked_pow(k)
    }

    /// `F_p ⊂ K` with `p = 2` and `[K:F_2]` finite: `K` is then a finite
    /// field of that degree.
    pub fn finite_field_params(&self) -> Option<(u64, u32)> {
        match self {
            FieldDescriptor::FiniteField(p, k) => Some((*p, *k)),
            FieldDescriptor::Custom(c) => c.finite(),
            _ => None,
        }
    }
}

pub fn char_of(fd: &FieldDescriptor) -> u64 {
    match fd {
        FieldDescriptor::RationalField | FieldDescriptor::Cyclotomic(_) => 0,
        FieldDescriptor::FiniteField(p, _) => *p,
        FieldDescriptor::Custom(c) => c.characteristic,
    }
}

pub fn contains_zeta(fd: &FieldDescriptor, n: u64) -> TriBool {
    match fd {
        FieldDescriptor::RationalField => TriBool::from_bool(n == 1 || n == 2),
        FieldDescriptor::Cyclotomic(m) => TriBool::from_bool(n >= 1 && lcm(2, *m) % n == 0),
        FieldDescriptor::FiniteField(p, k) => TriBool::from_bool(finite_zeta(*p, *k, n)),
        FieldDescriptor::Custom(c) => match c.finite() {
            Some((p, k)) => TriBool::from_bool(finite_zeta(p, k, n)),
            None => c.zeta_from_sets(n),
        },
    }
}

pub fn contains_real_zeta(fd: &FieldDescriptor, n: u64) -> TriBool {
    match fd {
        FieldDescriptor::RationalField => TriBool::from_bool(ALWAYS_REAL.contains(&n)),
        FieldDescriptor::Cyclotomic(m) => TriBool::from_bool(n >= 1 && cyclotomic_real_zeta(*m, n)),
        FieldDescriptor::FiniteField(p, k) => TriBool::from_bool(finite_real_zeta(*p, *k, n)),
        FieldDescriptor::Custom(c) => match c.finite() {
            Some((p, k)) => TriBool::from_bool(finite_real_zeta(p, k, n)),
            None => c.real_from_sets(n),
        },
    }
}

pub fn fp_dimension(fd: &FieldDescriptor) -> Result<FpDim, FieldDescError> {
    match fd {
        FieldDescriptor::FiniteField(_, k) => Ok(FpDim::Finite(*k)),
        FieldDescriptor::Custom(c) if c.characteristic > 0 => Ok(c.fp_dim),
        _ => Err(FieldDescError::CharZero),
    }
}

pub fn extend_with_zeta(fd: &FieldDescriptor, m: u64) -> Result<FieldDescriptor, FieldDescError> {
    let p = char_of(fd);
    if m == 0 || (p > 0 && m % p == 0) {
        return Err(FieldDescError::CharDividesM(p, m));
    }
    Ok(match fd {
        FieldDescriptor::RationalField => FieldDescriptor::cyclotomic(m),
        FieldDescriptor::Cyclotomic(a) => FieldDescriptor::cyclotomic(lcm(*a, m)),
        FieldDescriptor::FiniteField(p, k) => {
            let q_mod = pow_mod(*p, *k as u64, m);
            let d = order_mod(q_mod, m) as u32;
            FieldDescriptor::FiniteField(*p, k * d)
        }
        FieldDescriptor::Custom(c) => {
            let mut c = c.clone();
            if contains_zeta(fd, m).is_yes() {
                return Ok(fd.clone());
            }
            if let FpDim::Finite(k) = c.fp_dim {
                let d = order_mod(pow_mod(p, k as u64, m), m) as u32;
                c.fp_dim = FpDim::Finite(k * d);
            }
            // negative facts about K say nothing about K(ζ_m)
            c.zeta_no.clear();
            c.real_zeta_no.clear();
            c.zeta_yes.insert(m);
            FieldDescriptor::custom(c)?
        }
    })
}

fn fmt_set(s: &BTreeSet<u64>) -> String {
    let v: Vec<String> = s.iter().map(u64::to_string).collect();
    format!("[{}]", v.join(","))
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::RationalField => f.write_str("Q"),
            FieldDescriptor::Cyclotomic(m) => write!(f, "Qzeta({m})"),
            FieldDescriptor::FiniteField(p, k) => write!(f, "F({})", (*p as u128).pow(*k)),
            FieldDescriptor::Custom(c) => write!(
                f,
                "custom{{char={},zeta_yes={},zeta_no={},real_zeta_yes={},real_zeta_no={},fp_dim={}}}",
                c.characteristic,
                fmt_set(&c.zeta_yes),
                fmt_set(&c.zeta_no),
                fmt_set(&c.real_zeta_yes),
                fmt_set(&c.real_zeta_no),
                c.fp_dim
            ),
        }
    }
}

fn parse_u64(s: &str) -> Result<u64, FieldDescError> {
    s.trim()
        .parse::<u64>()
        .map_err(|_| FieldDescError::Parse(format!("bad integer {s:?}")))
}

fn parse_set(s: &str) -> Result<BTreeSet<u64>, FieldDescError> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| FieldDescError::Parse(format!("expected [..], got {s:?}")))?;
    if inner.trim().is_empty() {
        return Ok(BTreeSet::new());
    }
    inner.split(',').map(parse_u64).collect()
}

/// Splits on commas that are not inside brackets.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

impl FromStr for FieldDescriptor {
    type Err = FieldDescError;

    /// Grammar: `Q`, `Qzeta(m)`, `F(q)`, or
    /// `custom{char=c,zeta_yes=[..],zeta_no=[..],real_zeta_yes=[..],real_zeta_no=[..],fp_dim=k|inf}`
    /// with every custom key optional.
    fn from_str(s: &str) -> Result<FieldDescriptor, FieldDescError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let paren = |prefix: &str| -> Option<&str> {
            t.strip_prefix(prefix)
                .and_then(|r| r.strip_prefix('('))
                .and_then(|r| r.strip_suffix(')'))
        };
        if t == "Q" {
            return Ok(FieldDescriptor::RationalField);
        }
        if let Some(m) = paren("Qzeta") {
            let m = parse_u64(m)?;
            if m == 0 {
                return Err(FieldDescError::Parse("Qzeta(0)".into()));
            }
            return Ok(FieldDescriptor::cyclotomic(m));
        }
        if let Some(q) = paren("F") {
            return FieldDescriptor::finite(parse_u64(q)?);
        }
        if let Some(body) = t.strip_prefix("custom{").and_then(|r| r.strip_suffix('}')) {
            let mut c = CustomField {
                characteristic: 0,
                zeta_yes: BTreeSet::new(),
                zeta_no: BTreeSet::new(),
                real_zeta_yes: BTreeSet::new(),
                real_zeta_no: BTreeSet::new(),
                fp_dim: FpDim::Infinite,
            };
            for item in split_top_level(body).into_iter().filter(|i| !i.is_empty()) {
                let (k, v) = item
                    .split_once('=')
                    .ok_or_else(|| FieldDescError::Parse(format!("expected key=value, got {item:?}")))?;
                match k {
                    "char" => c.characteristic = parse_u64(v)?,
                    "zeta_yes" => c.zeta_yes = parse_set(v)?,
                    "zeta_no" => c.zeta_no = parse_set(v)?,
                    "real_zeta_yes" => c.real_zeta_yes = parse_set(v)?,
                    "real_zeta_no" => c.real_zeta_no = parse_set(v)?,
                    "fp_dim" => {
                        c.fp_dim = if v == "inf" || v == "∞" {
                            FpDim::Infinite
                        } else {
                            FpDim::Finite(parse_u64(v)? as u32)
                        }
                    }
                    other => return Err(FieldDescError::Parse(format!("unknown key {other:?}"))),
                }
            }
            return FieldDescriptor::custom(c);
        }
        Err(FieldDescError::Parse(format!("unrecognized field {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{Fq, FqElement};
    use crate::scalar::Scalar;

    fn f(s: &str) -> FieldDescriptor {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        use TriBool::*;
        assert_eq!(char_of(&f("Q")), 0);
        assert_eq!(char_of(&f("F(4)")), 2);
        assert_eq!(char_of(&f("Qzeta(12)")), 0);
        assert_eq!(contains_zeta(&f("F(4)"), 3), Yes);
        assert_eq!(contains_zeta(&f("Q"), 2), Yes);
        assert_eq!(contains_zeta(&f("Qzeta(5)"), 7), No);
        assert_eq!(contains_real_zeta(&f("Q"), 5), No);
        assert_eq!(contains_real_zeta(&f("F(9)"), 5), Yes);
        assert_eq!(contains_real_zeta(&f("F(2)"), 3), Yes);
        assert_eq!(fp_dimension(&f("F(2)")), Ok(FpDim::Finite(1)));
        assert_eq!(fp_dimension(&f("F(8)")), Ok(FpDim::Finite(3)));
        assert_eq!(fp_dimension(&f("custom{char=2,fp_dim=inf}")), Ok(FpDim::Infinite));
        assert_eq!(fp_dimension(&f("Q")), Err(FieldDescError::CharZero));
        assert_eq!(extend_with_zeta(&f("Q"), 3), Ok(FieldDescriptor::Cyclotomic(3)));
        assert_eq!(extend_with_zeta(&f("F(2)"), 3), Ok(f("F(4)")));
        assert_eq!(extend_with_zeta(&f("F(4)"), 3), Ok(f("F(4)")));
        assert!(extend_with_zeta(&f("F(4)"), 6).is_err());
    }

    #[test]
    fn grammar_roundtrip() {
        for s in [
            "Q",
            "Qzeta(5)",
            "F(81)",
            "custom{char=0,zeta_yes=[3],zeta_no=[5],real_zeta_yes=[],real_zeta_no=[7],fp_dim=inf}",
            "custom{char=3,zeta_yes=[],zeta_no=[],real_zeta_yes=[],real_zeta_no=[],fp_dim=inf}",
        ] {
            assert_eq!(f(s).to_string(), s);
        }
        assert!("F(6)".parse::<FieldDescriptor>().is_err());
        assert!("R".parse::<FieldDescriptor>().is_err());
        assert!("custom{char=0,zeta_yes=[6],zeta_no=[3]}".parse::<FieldDescriptor>().is_err());
        assert!("custom{char=2,zeta_yes=[4]}".parse::<FieldDescriptor>().is_err());
        assert!("custom{char=0,real_zeta_no=[4]}".parse::<FieldDescriptor>().is_err());
    }

    #[test]
    fn custom_closure() {
        use TriBool::*;
        let c = f("custom{char=0,zeta_yes=[12],zeta_no=[5],real_zeta_no=[7]}");
        assert_eq!(c.contains_zeta(4), Yes);
        assert_eq!(c.contains_zeta(24), Unknown);
        assert_eq!(c.contains_zeta(10), No);
        assert_eq!(c.contains_zeta(14), No);
        assert_eq!(c.contains_real_zeta(12), Yes);
        assert_eq!(c.contains_real_zeta(21), No);
        assert_eq!(c.contains_real_zeta(5), Unknown);
        let e = c.extend_with_zeta(5).unwrap();
        assert_eq!(e.contains_zeta(60), Yes);
    }

    /// Brute force in `F_{q^2}`: an order-`n` element exists in `F_q`, and
    /// some order-`n` element `z` has `z + 1/z` fixed by `x ↦ x^q`.
    fn brute(q: u64, n: u64) -> (bool, bool) {
        let (p, k) = prime_power(q).unwrap();
        let big = Fq::new(p, 2 * k).unwrap();
        let elems = big.elements(81 * 81).unwrap();
        let order = |x: &FqElement| x.multiplicative_order().unwrap();
        let small = Fq::new(p, k).unwrap();
        let has = small.elements(81).unwrap().iter().skip(1).any(|x| {
            let mut y = x.clone();
            let mut d = 1;
            while !y.is_one() {
                y = y.times(x);
                d += 1;
            }
            d == n
        });
        let real = elems.iter().skip(1).filter(|z| order(z) == n).any(|z| {
            let s = z.plus(&z.inverse().unwrap());
            s.pow_u64(q) == s
        });
        (has, real)
    }

    #[test]
    fn finite_answers_match_brute_force() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49, 81] {
            let fd = FieldDescriptor::finite(q).unwrap();
            for n in 1..=30u64 {
                let (has, real) = brute(q, n);
                assert_eq!(fd.contains_zeta(n), TriBool::from_bool(has), "q={q} n={n}");
                // order-n elements of F_{q^2} exist only when n | q^2-1
                if (q * q - 1) % n == 0 {
                    assert_eq!(fd.contains_real_zeta(n), TriBool::from_bool(real), "q={q} n={n}");
                }
            }
        }
    }

    #[test]
    fn zeta_implies_real_zeta() {
        let fields = [
            f("Q"),
            f("Qzeta(3)"),
            f("Qzeta(5)"),
            f("Qzeta(8)"),
            f("Qzeta(15)"),
            f("F(2)"),
            f("F(9)"),
            f("F(64)"),
            f("custom{char=0,zeta_yes=[7]}"),
            f("custom{char=5,zeta_yes=[3],fp_dim=inf}"),
        ];
        for fd in &fields {
            for n in 1..=100 {
                if fd.contains_zeta(n).is_yes() {
                    assert!(fd.contains_real_zeta(n).is_yes(), "{fd} n={n}");
                }
            }
            for m in [3u64, 4, 7] {
                if let Ok(e) = fd.extend_with_zeta(m) {
                    assert!(e.contains_zeta(m).is_yes(), "{fd} m={m}");
                }
            }
        }
    }

    #[test]
    fn cyclotomic_real_subfields() {
        // ζ_n + ζ_n⁻¹ generates Q(√5), Q(√2), Q(√3) for n = 10, 8, 12
        assert!(f("Qzeta(5)").contains_real_zeta(10).is_yes());
        assert!(f("Qzeta(8)").contains_real_zeta(8).is_yes());
        assert!(f("Qzeta(12)").contains_real_zeta(12).is_yes());
        assert!(f("Qzeta(3)").contains_real_zeta(12).is_no());
        assert!(f("Qzeta(4)").contains_real_zeta(12).is_no());
        assert!(f("Qzeta(3)").contains_real_zeta(8).is_no());
    }
}
