//! The rule catalog. Each rule inspects a query and yields applications:
//! a list of premise queries plus the arithmetic that turns their current
//! intervals into a bound for the query. Hypotheses depend only on the
//! query, so they are checked once, when the query enters the closure,
//! and again on replay.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Mutex, OnceLock};

use serde::{Serialize, Serializer};

use super::hypotheses::{check_central_quotient, check_split_central, dihedral_criterion, CentralCheck, SplitCheck};
use super::{BoundInterval, EngineError, Query};
use crate::exactfield::arith::{is_prime, prime_factors};
use crate::exactfield::Fq;
use crate::fielddesc::{FieldDescriptor, FpDim, TriBool};
use crate::groups::GroupExpr::{self, *};
use crate::groups::{embedding_certificate, element_orders_symbolic, EmbeddingResult, CORE_CAP, PARTITION_LIMIT};
use crate::pgl2::{pgl2_embeds, Pgl2Embedding, MAX_Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    Triv,
    Prod,
    Sub,
    Ext,
    Rep,
    SymUpper,
    SymSmall,
    CentralSplit,
    Central,
    ElemAb,
    SymLower,
    Alt,
    AltUpper,
    PglObstruction,
    Dihedral,
    KleinFour,
    ElemAbCharP,
    Cyclic,
}

/// Catalog order; the solver applies rules in this order.
pub const CATALOG: [RuleId; 18] = [
    RuleId::Triv,
    RuleId::Prod,
    RuleId::Sub,
    RuleId::Ext,
    RuleId::Rep,
    RuleId::SymUpper,
    RuleId::SymSmall,
    RuleId::CentralSplit,
    RuleId::Central,
    RuleId::ElemAb,
    RuleId::SymLower,
    RuleId::Alt,
    RuleId::AltUpper,
    RuleId::PglObstruction,
    RuleId::Dihedral,
    RuleId::KleinFour,
    RuleId::ElemAbCharP,
    RuleId::Cyclic,
];

impl RuleId {
    pub fn id(self) -> &'static str {
        match self {
            RuleId::Triv => "R-TRIV",
            RuleId::Prod => "R-PROD",
            RuleId::Sub => "R-SUB",
            RuleId::Ext => "R-EXT",
            RuleId::Rep => "R-REP",
            RuleId::SymUpper => "R-S-UB",
            RuleId::SymSmall => "R-S-SMALL",
            RuleId::CentralSplit => "R-CE-SPLIT",
            RuleId::Central => "R-CE",
            RuleId::ElemAb => "R-ELEMAB",
            RuleId::SymLower => "R-S-LB",
            RuleId::Alt => "R-A",
            RuleId::AltUpper => "R-A-UB",
            RuleId::PglObstruction => "R-PGL-OBS",
            RuleId::Dihedral => "R-DN",
            RuleId::KleinFour => "R-E22",
            RuleId::ElemAbCharP => "R-EPR-CHARP",
            RuleId::Cyclic => "R-CYC",
        }
    }

    pub fn from_id(s: &str) -> Option<RuleId> {
        CATALOG.into_iter().find(|r| r.id() == s)
    }

    /// The statement the rule relies on.
    pub fn citation(self) -> &'static str {
        match self {
            RuleId::Triv => "ed_K(G) = 0 if and only if G is trivial",
            RuleId::Prod => "ed_K(G1 x G2) <= ed_K(G1) + ed_K(G2)",
            RuleId::Sub => "ed_K(H) <= ed_K(G) for a subgroup H of G",
            RuleId::Ext => "ed_K'(G) <= ed_K(G) for a field extension K'/K",
            RuleId::Rep => "ed_K(G) <= dim V for a faithful representation V of G over K",
            RuleId::SymUpper => "ed_K(S_n) <= n - 3 for n >= 5, via the field of cross-ratios",
            RuleId::SymSmall => {
                "ed_K(S_2) = ed_K(S_3) = 1 and ed_K(S_4) = ed_K(S_5) = 2 over any K; ed_K(S_6) = 3 if char K != 2"
            }
            RuleId::CentralSplit => {
                "ed_K(G' x C_p) = ed_K(G') + 1 if zeta_p is in K, zeta_p' is not in K for primes p' != p \
                 dividing |Z(G')|, and G' x C_p has no nontrivial normal (char K)-subgroup"
            }
            RuleId::Central => {
                "ed_K(G) = ed_K(G/<s>) + 1 for central s of prime order with a character chi(s) != 1, \
                 zeta_m not in K for central t of order m with <s> < <t>, and no nontrivial normal \
                 (char K)-subgroup"
            }
            RuleId::ElemAb => "ed_K((Z/p)^r) = r if zeta_p is in K",
            RuleId::SymLower => {
                "ed_K(S_n) >= floor(n/2) and ed_K(S_{n+2}) >= ed_K(S_n) + 1 if char K != 2; \
                 ed_K(S_n) >= floor((n+1)/3) if char K = 2; ed_K(S_{n+3}) >= ed_K(S_n) + 1 if K contains F_4, n != 4"
            }
            RuleId::Alt => {
                "if char K != 2: ed_K(A_3) = 1, ed_K(A_4) = ed_K(A_5) = 2, ed_K(A_{n+4}) >= ed_K(A_n) + 2 \
                 for n >= 4, ed_K(A_n) >= 2 floor(n/4); if K contains F_4: ed_K(A_{n+3}) >= ed_K(A_n) + 1 \
                 for n != 4; if char K = 2: ed_K(A_n) >= floor(n/3)"
            }
            RuleId::AltUpper => {
                "ed_K(A_8) <= 3 if char K = 2 (A_8 = GL_4(F_2)); ed_K(A_5) = 1 if K contains F_4 (A_5 = SL_2(F_4))"
            }
            RuleId::PglObstruction => {
                "ed_K(G) = 1 forces G into PGL_2(K), whose elements have order char K or prime to it, \
                 and order n prime to char K only if zeta_n + zeta_n^-1 is in K"
            }
            RuleId::Dihedral => {
                "ed_K(D_n) = 1 iff n is odd with zeta_n + zeta_n^-1 in K (or n = char K), or char K = 2, \
                 n = 2 and |K| >= 4"
            }
            RuleId::KleinFour => "ed_F2((Z/2)^2) = 2; ed_K((Z/2)^2) = 1 if char K = 2 and |K| >= 4",
            RuleId::ElemAbCharP => "in characteristic p, ed_K((Z/p)^r) = 1 iff [K:F_p] >= r",
            RuleId::Cyclic => "ed_K(C_n) <= 1 if zeta_n is in K",
        }
    }
}

impl Serialize for RuleId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.id())
    }
}

/// How premise intervals turn into a bound for the conclusion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Derive {
    /// No premises.
    Fixed(BoundInterval),
    /// `lo ≥ lo(premise) + k`.
    LoPlus(u64),
    /// `hi ≤ hi(premise)`.
    HiOf,
    /// `[lo + 1, hi + 1]` of the premise.
    Shift1,
    /// `hi ≤ Σ hi(premises)`.
    HiSum,
}

impl Derive {
    pub fn apply(&self, premises: &[BoundInterval]) -> BoundInterval {
        match self {
            Derive::Fixed(b) => *b,
            Derive::LoPlus(k) => BoundInterval::at_least(premises[0].lo + k),
            Derive::HiOf => BoundInterval::new(0, premises[0].hi),
            Derive::Shift1 => BoundInterval::new(premises[0].lo + 1, premises[0].hi.map(|h| h + 1)),
            Derive::HiSum => BoundInterval::new(
                0,
                premises.iter().try_fold(0u64, |acc, p| p.hi.map(|h| acc + h)),
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Application {
    pub rule: RuleId,
    pub note: String,
    pub premises: Vec<Query>,
    pub derive: Derive,
}

impl Application {
    fn fixed(rule: RuleId, note: impl Into<String>, b: BoundInterval) -> Application {
        Application {
            rule,
            note: note.into(),
            premises: Vec::new(),
            derive: Derive::Fixed(b),
        }
    }

    fn from(rule: RuleId, note: impl Into<String>, premise: Query, derive: Derive) -> Application {
        Application {
            rule,
            note: note.into(),
            premises: vec![premise],
            derive,
        }
    }
}

/// `S_n` under its canonical name (`S_2` is `C_2`).
fn as_sym(g: &GroupExpr) -> Option<u32> {
    match g {
        Sym(n) => Some(*n),
        Cyc(2) => Some(2),
        _ => None,
    }
}

/// `A_n` under its canonical name (`A_3` is `C_3`).
fn as_alt(g: &GroupExpr) -> Option<u32> {
    match g {
        Alt(n) => Some(*n),
        Cyc(3) => Some(3),
        _ => None,
    }
}

/// `(Z/p)^r`, including `C_p`.
fn as_elemab(g: &GroupExpr) -> Option<(u64, u32)> {
    match g {
        ElemAb(p, r) => Some((*p as u64, *r)),
        Cyc(p) if is_prime(*p as u64) => Some((*p as u64, 1)),
        _ => None,
    }
}

fn contains_f4(fd: &FieldDescriptor) -> bool {
    fd.characteristic() == 2 && fd.contains_zeta(3).is_yes()
}

/// Named subgroups used for lower bounds.
fn sub_candidates(g: &GroupExpr) -> Vec<GroupExpr> {
    let mut out = Vec::new();
    match g {
        Sym(n) => {
            if *n >= 3 {
                out.push(Sym(n - 1));
            }
            if *n >= 4 {
                out.push(ElemAb(2, n / 2));
            }
        }
        Alt(n) => {
            if *n >= 4 {
                out.push(Alt(n - 1));
                out.push(ElemAb(2, 2 * (n / 4)));
            }
            if *n >= 6 {
                out.push(ElemAb(3, n / 3));
            }
        }
        Dih(n) if *n >= 3 => {
            out.push(Cyc(*n));
            if n % 2 == 0 {
                out.push(ElemAb(2, 2));
            }
        }
        Product(fs) => out.extend(fs.iter().cloned()),
        _ => {}
    }
    out
}

/// Named overgroups used for upper bounds.
fn super_candidates(g: &GroupExpr) -> Vec<GroupExpr> {
    match g {
        Alt(4) => vec![Alt(5), Sym(4)],
        Alt(n) => vec![Sym(*n)],
        Cyc(3) => vec![Sym(3)],
        Dih(n) if *n >= 3 => vec![Sym(*n)],
        _ => Vec::new(),
    }
}

fn cert_cache() -> &'static Mutex<HashMap<(GroupExpr, GroupExpr), bool>> {
    static CACHE: OnceLock<Mutex<HashMap<(GroupExpr, GroupExpr), bool>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Whether `h ↪ g` has a verified certificate.
fn certified(h: &GroupExpr, g: &GroupExpr) -> Result<bool, EngineError> {
    let key = (h.clone(), g.clone());
    if let Some(&b) = cert_cache().lock().expect("certificate cache").get(&key) {
        return Ok(b);
    }
    let b = matches!(embedding_certificate(h, g)?, EmbeddingResult::Certified(_));
    cert_cache().lock().expect("certificate cache").insert(key, b);
    Ok(b)
}

/// Primes dividing `|G|`.
fn order_primes(g: &GroupExpr) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for atom in g.factors() {
        match atom {
            Sym(n) | Alt(n) => out.extend((2..=n as u64).filter(|&p| is_prime(p))),
            Dih(n) => {
                out.insert(2);
                out.extend(prime_factors(n as u64));
            }
            Cyc(n) => out.extend(prime_factors(n as u64)),
            ElemAb(p, _) => {
                out.insert(p as u64);
            }
            Product(_) => unreachable!("factors are atoms"),
        }
    }
    if matches!(g, Alt(2)) {
        out.clear();
    }
    out
}

/// Element orders of `G`, or of a large subgroup when the family is too
/// big to list (`S_n ⊃ S_40`).
fn known_orders(g: &GroupExpr) -> Result<BTreeSet<u64>, EngineError> {
    let clip = |a: GroupExpr| match a {
        Sym(n) if n > PARTITION_LIMIT => Sym(PARTITION_LIMIT),
        Alt(n) if n > PARTITION_LIMIT => Alt(PARTITION_LIMIT),
        a => a,
    };
    let clipped = GroupExpr::Product(g.factors().into_iter().map(clip).collect());
    Ok(element_orders_symbolic(&clipped)?)
}

/// Every application available for `q`. Extensions of the field are named
/// only for queries over `root_field`, which keeps the closure finite.
pub fn applications(q: &Query, root_field: &FieldDescriptor) -> Result<Vec<Application>, EngineError> {
    let g = &q.group;
    let k = &q.field;
    let c = k.characteristic();
    let mut out: Vec<Application> = Vec::new();

    // R-TRIV
    if g.is_trivial() {
        out.push(Application::fixed(RuleId::Triv, "trivial group", BoundInterval::exact(0)));
        return Ok(out);
    }
    out.push(Application::fixed(RuleId::Triv, "nontrivial group", BoundInterval::at_least(1)));

    // R-PROD
    match g {
        Product(fs) => out.push(Application {
            rule: RuleId::Prod,
            note: "direct factors".into(),
            premises: fs.iter().map(|f| q.with_group(f.clone())).collect(),
            derive: Derive::HiSum,
        }),
        ElemAb(p, r) if *r >= 2 => out.push(Application {
            rule: RuleId::Prod,
            note: format!("E({p},{r}) = C{p} x E({p},{})", r - 1),
            premises: vec![q.with_group(Cyc(*p)), q.with_group(ElemAb(*p, r - 1))],
            derive: Derive::HiSum,
        }),
        _ => {}
    }

    // R-SUB
    let subs: BTreeSet<GroupExpr> = sub_candidates(g).into_iter().map(|h| h.canonical()).collect();
    for h in subs {
        if h.is_trivial() || &h == g || !certified(&h, g)? {
            continue;
        }
        out.push(Application::from(
            RuleId::Sub,
            format!("{h} < {g}"),
            q.with_group(h),
            Derive::LoPlus(0),
        ));
    }
    let sups: BTreeSet<GroupExpr> = super_candidates(g).into_iter().map(|s| s.canonical()).collect();
    for s in sups {
        if &s == g || !certified(g, &s)? {
            continue;
        }
        out.push(Application::from(RuleId::Sub, format!("{g} < {s}"), q.with_group(s), Derive::HiOf));
    }

    // R-EXT
    if k == root_field {
        for p in order_primes(g) {
            if p == c || k.contains_zeta(p).is_yes() {
                continue;
            }
            if let Ok(ext) = k.extend_with_zeta(p) {
                out.push(Application::from(
                    RuleId::Ext,
                    format!("adjoin zeta_{p}"),
                    Query::new(g, &ext),
                    Derive::LoPlus(0),
                ));
            }
        }
    }

    // R-REP
    out.push(Application::fixed(
        RuleId::Rep,
        format!("permutation representation of degree {}", g.degree()),
        BoundInterval::at_most(g.degree()),
    ));
    if let Dih(n) = g {
        let n = *n as u64;
        let applies = (c == 0 || n % c != 0) && k.contains_real_zeta(n).is_yes() || (c != 2 && n == c);
        if n >= 3 && applies {
            out.push(Application::fixed(
                RuleId::Rep,
                "2-dimensional dihedral representation",
                BoundInterval::at_most(2),
            ));
        }
    }
    if let Some((p, r)) = as_elemab(g) {
        if p == c && fp_at_least(k, r) == TriBool::Yes {
            out.push(Application::fixed(
                RuleId::Rep,
                "2-dimensional unipotent representation",
                BoundInterval::at_most(2),
            ));
        }
    }

    // R-S-UB
    if let Some(n) = as_sym(g).filter(|&n| n >= 5) {
        out.push(Application::fixed(
            RuleId::SymUpper,
            format!("n = {n}"),
            BoundInterval::at_most(n as u64 - 3),
        ));
    }

    // R-S-SMALL
    if let Some(n) = as_sym(g) {
        let v = match n {
            2 | 3 => Some(1),
            4 | 5 => Some(2),
            6 if c != 2 => Some(3),
            _ => None,
        };
        if let Some(v) = v {
            out.push(Application::fixed(RuleId::SymSmall, format!("n = {n}"), BoundInterval::exact(v)));
        }
    }

    // R-CE-SPLIT
    if let Product(fs) = g {
        let mut seen = BTreeSet::new();
        for (i, f) in fs.iter().enumerate() {
            let Some((p, r)) = as_elemab(f) else { continue };
            let mut rest: Vec<GroupExpr> = fs.clone();
            rest[i] = if r >= 2 { ElemAb(p as u32, r - 1) } else { Cyc(1) };
            let gprime = GroupExpr::Product(rest).canonical();
            if !seen.insert((gprime.clone(), p)) {
                continue;
            }
            if check_split_central(&gprime, p, k)? == SplitCheck::Applicable {
                out.push(Application::from(
                    RuleId::CentralSplit,
                    format!("{g} = {gprime} x C{p}"),
                    q.with_group(gprime),
                    Derive::Shift1,
                ));
            }
        }
    }

    // R-CE
    out.extend(central_applications(q)?);

    // R-ELEMAB
    if let Some((p, r)) = as_elemab(g) {
        if p != c && k.contains_zeta(p).is_yes() {
            out.push(Application::fixed(
                RuleId::ElemAb,
                format!("zeta_{p} in {k}"),
                BoundInterval::exact(r as u64),
            ));
        }
    }

    // R-S-LB
    if let Some(n) = as_sym(g) {
        if c != 2 {
            out.push(Application::fixed(
                RuleId::SymLower,
                "floor(n/2)",
                BoundInterval::at_least(n as u64 / 2),
            ));
            if n >= 3 {
                out.push(Application::from(
                    RuleId::SymLower,
                    format!("S_{} -> S_{n}", n - 2),
                    q.with_group(Sym(n - 2)),
                    Derive::LoPlus(1),
                ));
            }
        } else {
            out.push(Application::fixed(
                RuleId::SymLower,
                "floor((n+1)/3)",
                BoundInterval::at_least((n as u64 + 1) / 3),
            ));
            if contains_f4(k) && n >= 4 && n != 7 {
                out.push(Application::from(
                    RuleId::SymLower,
                    format!("S_{} -> S_{n}", n - 3),
                    q.with_group(Sym(n - 3)),
                    Derive::LoPlus(1),
                ));
            }
        }
    }

    // R-A
    if let Some(n) = as_alt(g) {
        if c != 2 {
            match n {
                3 => out.push(Application::fixed(RuleId::Alt, "n = 3", BoundInterval::exact(1))),
                4 | 5 => out.push(Application::fixed(RuleId::Alt, format!("n = {n}"), BoundInterval::exact(2))),
                _ => {}
            }
            out.push(Application::fixed(
                RuleId::Alt,
                "2 floor(n/4)",
                BoundInterval::at_least(2 * (n as u64 / 4)),
            ));
            if n >= 8 {
                out.push(Application::from(
                    RuleId::Alt,
                    format!("A_{} -> A_{n}", n - 4),
                    q.with_group(Alt(n - 4)),
                    Derive::LoPlus(2),
                ));
            }
        } else {
            out.push(Application::fixed(
                RuleId::Alt,
                "floor(n/3)",
                BoundInterval::at_least(n as u64 / 3),
            ));
            if contains_f4(k) && n >= 4 && n != 7 {
                out.push(Application::from(
                    RuleId::Alt,
                    format!("A_{} -> A_{n}", n - 3),
                    q.with_group(Alt(n - 3)),
                    Derive::LoPlus(1),
                ));
            }
        }
    }

    // R-A-UB
    if c == 2 && g == &Alt(8) {
        out.push(Application::fixed(RuleId::AltUpper, "A_8 in characteristic 2", BoundInterval::at_most(3)));
    }
    if contains_f4(k) && g == &Alt(5) {
        out.push(Application::fixed(RuleId::AltUpper, "A_5 over a field containing F_4", BoundInterval::exact(1)));
    }

    // R-PGL-OBS
    if let Some(note) = pgl_obstruction(g, k)? {
        out.push(Application::fixed(RuleId::PglObstruction, note, BoundInterval::at_least(2)));
    }

    // R-DN
    if let Dih(n) = g {
        if *n >= 3 {
            match dihedral_criterion(*n as u64, k) {
                TriBool::Yes => out.push(Application::fixed(RuleId::Dihedral, "criterion holds", BoundInterval::exact(1))),
                TriBool::No => out.push(Application::fixed(RuleId::Dihedral, "criterion fails", BoundInterval::at_least(2))),
                TriBool::Unknown => {}
            }
        }
    }

    // R-E22
    if c == 2 && g == &ElemAb(2, 2) {
        match k.fp_dimension() {
            Ok(FpDim::Finite(1)) => out.push(Application::fixed(RuleId::KleinFour, "K = F_2", BoundInterval::exact(2))),
            Ok(_) => out.push(Application::fixed(RuleId::KleinFour, "|K| >= 4", BoundInterval::exact(1))),
            Err(_) => {}
        }
    }

    // R-EPR-CHARP
    if let Some((p, r)) = as_elemab(g) {
        if p == c {
            match fp_at_least(k, r) {
                TriBool::Yes => out.push(Application::fixed(
                    RuleId::ElemAbCharP,
                    format!("[K:F_{p}] >= {r}"),
                    BoundInterval::exact(1),
                )),
                TriBool::No => out.push(Application::fixed(
                    RuleId::ElemAbCharP,
                    format!("[K:F_{p}] < {r}"),
                    BoundInterval::at_least(2),
                )),
                TriBool::Unknown => {}
            }
        }
    }

    // R-CYC
    if let Cyc(n) = g {
        if k.contains_zeta(*n as u64).is_yes() {
            out.push(Application::fixed(RuleId::Cyclic, format!("zeta_{n} in {k}"), BoundInterval::at_most(1)));
        }
    }

    out.sort_by(|a, b| {
        let ra = CATALOG.iter().position(|&r| r == a.rule);
        let rb = CATALOG.iter().position(|&r| r == b.rule);
        (ra, &a.premises, &a.note).cmp(&(rb, &b.premises, &b.note))
    });
    Ok(out)
}

fn fp_at_least(k: &FieldDescriptor, r: u32) -> TriBool {
    match k.fp_dimension() {
        Ok(FpDim::Finite(d)) => TriBool::from_bool(d >= r),
        Ok(FpDim::Infinite) => TriBool::Yes,
        Err(_) => TriBool::Unknown,
    }
}

/// A reason `G` cannot embed in `PGL_2(K)`, if one is certain.
fn pgl_obstruction(g: &GroupExpr, k: &FieldDescriptor) -> Result<Option<String>, EngineError> {
    let c = k.characteristic();
    let orders = known_orders(g)?;
    if c != 0 {
        if let Some(o) = orders.iter().find(|&&o| o % c == 0 && o != c) {
            return Ok(Some(format!("element of order {o} in characteristic {c}")));
        }
    }
    for &o in &orders {
        if (c == 0 || o % c != 0) && k.contains_real_zeta(o) == TriBool::No {
            return Ok(Some(format!("element of order {o} with zeta_{o} + zeta_{o}^-1 not in {k}")));
        }
    }
    if let FieldDescriptor::FiniteField(p, e) = k {
        let small = p.checked_pow(*e).is_some_and(|q| q <= MAX_Q);
        if small && matches!(g, Cyc(_) | Dih(_) | ElemAb(_, _)) {
            let field = Fq::new(*p, *e).map_err(|err| EngineError::Invalid(err.to_string()))?;
            if let Ok(Pgl2Embedding::No) = pgl2_embeds(g, &field) {
                return Ok(Some(format!("exhaustive search: no copy in PGL_2({k})")));
            }
        }
    }
    Ok(None)
}

/// Central-extension applications for atoms with a nameable quotient:
/// `C_n ⊃ C_p` with quotient `C_{n/p}` (`n` composite) and the center of
/// `D_n`, `n ≥ 4` even, with quotient `D_{n/2}`.
fn central_applications(q: &Query) -> Result<Vec<Application>, EngineError> {
    let g = &q.group;
    if g.order_u64().is_none_or(|o| o > CORE_CAP) {
        return Ok(Vec::new());
    }
    let atoms = g.factors();
    let mut candidates = Vec::new();
    let mut offset = 0usize;
    for (i, a) in atoms.iter().enumerate() {
        match a {
            Cyc(n) if *n > 1 && !is_prime(*n as u64) => {
                for p in prime_factors(*n as u64) {
                    candidates.push((i, offset, (*n as u64) / p, Cyc(n / p as u32)));
                }
            }
            Dih(n) if *n >= 4 && n % 2 == 0 => candidates.push((i, offset, (*n / 2) as u64, Dih(n / 2))),
            _ => {}
        }
        offset += a.generator_count();
    }
    if candidates.is_empty() {
        return Ok(Vec::new());
    }
    let realized = g.realize()?;
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, gen, power, quotient_atom) in candidates {
        let sigma = realized.generators()[gen].pow(power);
        let mut rest = atoms.clone();
        rest[i] = quotient_atom;
        let quotient = GroupExpr::Product(rest).canonical();
        if !seen.insert(quotient.clone()) {
            continue;
        }
        if let CentralCheck::Applicable(_) = check_central_quotient(&realized, &sigma, &q.field)? {
            out.push(Application::from(
                RuleId::Central,
                format!("{g} / <{sigma}> = {quotient}"),
                q.with_group(quotient),
                Derive::Shift1,
            ));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for r in CATALOG {
            assert_eq!(RuleId::from_id(r.id()), Some(r));
            assert!(!r.citation().is_empty());
        }
        assert_eq!(RuleId::from_id("R-NOPE"), None);
    }

    #[test]
    fn derive_arithmetic() {
        let a = BoundInterval::new(2, Some(3));
        let b = BoundInterval::new(1, None);
        assert_eq!(Derive::HiSum.apply(&[a, a]), BoundInterval::new(0, Some(6)));
        assert_eq!(Derive::HiSum.apply(&[a, b]), BoundInterval::UNBOUNDED);
        assert_eq!(Derive::Shift1.apply(&[a]), BoundInterval::new(3, Some(4)));
        assert_eq!(Derive::LoPlus(2).apply(&[a]), BoundInterval::at_least(4));
        assert_eq!(Derive::HiOf.apply(&[b]), BoundInterval::UNBOUNDED);
    }

    #[test]
    fn symmetric_applications() {
        let q = Query::new(&Sym(7), &FieldDescriptor::RationalField);
        let apps = applications(&q, &FieldDescriptor::RationalField).unwrap();
        let rules: BTreeSet<RuleId> = apps.iter().map(|a| a.rule).collect();
        for r in [RuleId::Triv, RuleId::Sub, RuleId::Ext, RuleId::Rep, RuleId::SymUpper, RuleId::SymLower] {
            assert!(rules.contains(&r), "{r:?}");
        }
        assert!(!rules.contains(&RuleId::SymSmall));
    }
}
