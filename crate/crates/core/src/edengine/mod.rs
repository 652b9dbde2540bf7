//! Fixpoint inference of essential-dimension intervals.
//!
//! A query `(G, K)` starts at `[0, ∞]`. Rules from a fixed catalog narrow
//! the intervals of the query and of the related queries they name
//! (subgroups, quotients, factors, cyclotomic extensions of `K`) until
//! nothing changes. Every narrowing is recorded as a [`TraceNode`] that
//! [`replay`] can re-check independently.

mod hypotheses;
mod rules;
mod solver;

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub use hypotheses::{center_primes, check_central_quotient, check_split_central, dihedral_criterion, CentralCheck, SplitCheck};
pub use rules::{Application, Derive, RuleId, CATALOG};
pub use solver::{bound, replay, BoundResult, ReplayError};

use crate::fielddesc::FieldDescriptor;
use crate::groups::{GroupError, GroupExpr};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("inconsistent interval [{lo}, {hi}] for {query}")]
    Inconsistent { query: String, lo: u64, hi: String },
    #[error("{0} is not central")]
    NotCentral(String),
    #[error("element of order {0} is not of prime order")]
    NotPrimeOrder(u64),
    #[error("invalid query: {0}")]
    Invalid(String),
}

impl From<GroupError> for EngineError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::TooLarge(s) => EngineError::TooLarge(s),
            GroupError::NotPrimeOrder(p) => EngineError::NotPrimeOrder(p),
            other => EngineError::Invalid(other.to_string()),
        }
    }
}

/// A certified enclosure `lo ≤ ed_K(G) ≤ hi`; `hi = None` is `∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoundInterval {
    pub lo: u64,
    pub hi: Option<u64>,
}

impl BoundInterval {
    pub const UNBOUNDED: BoundInterval = BoundInterval { lo: 0, hi: None };

    pub fn new(lo: u64, hi: Option<u64>) -> BoundInterval {
        BoundInterval { lo, hi }
    }

    pub fn exact(v: u64) -> BoundInterval {
        BoundInterval { lo: v, hi: Some(v) }
    }

    pub fn at_least(lo: u64) -> BoundInterval {
        BoundInterval { lo, hi: None }
    }

    pub fn at_most(hi: u64) -> BoundInterval {
        BoundInterval { lo: 0, hi: Some(hi) }
    }

    /// Intersection; may be empty (`lo > hi`).
    pub fn meet(&self, other: &BoundInterval) -> BoundInterval {
        let hi = match (self.hi, other.hi) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        BoundInterval {
            lo: self.lo.max(other.lo),
            hi,
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.hi.is_none_or(|h| self.lo <= h)
    }

    pub fn contains(&self, v: u64) -> bool {
        self.lo <= v && self.hi.is_none_or(|h| v <= h)
    }

    /// Whether `self` is at least as tight as `other`.
    pub fn within(&self, other: &BoundInterval) -> bool {
        self.meet(other) == *self
    }

    pub fn hi_string(&self) -> String {
        self.hi.map_or_else(|| "inf".to_string(), |h| h.to_string())
    }
}

impl fmt::Display for BoundInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi_string())
    }
}

impl Serialize for BoundInterval {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BoundInterval", 2)?;
        st.serialize_field("lo", &self.lo)?;
        match self.hi {
            Some(h) => st.serialize_field("hi", &h)?,
            None => st.serialize_field("hi", "inf")?,
        }
        st.end()
    }
}

/// `(G, K)` with `G` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Query {
    pub group: GroupExpr,
    pub field: FieldDescriptor,
}

impl Query {
    pub fn new(group: &GroupExpr, field: &FieldDescriptor) -> Query {
        Query {
            group: group.canonical(),
            field: field.clone(),
        }
    }

    /// Same field, another group.
    pub fn with_group(&self, group: GroupExpr) -> Query {
        Query::new(&group, &self.field)
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.group, self.field)
    }
}

impl Serialize for Query {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Query", 2)?;
        st.serialize_field("group", &self.group.to_string())?;
        st.serialize_field("field", &self.field.to_string())?;
        st.end()
    }
}

/// A query together with its interval at the time of use.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub query: Query,
    pub interval: BoundInterval,
}

/// One narrowing step: `rule` applied to `premises` yields the interval in
/// `conclusion`, which was then intersected into the conclusion's state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceNode {
    pub rule: RuleId,
    pub citation: &'static str,
    /// Which instance of the rule fired (e.g. which representation).
    pub note: String,
    pub premises: Vec<Fact>,
    pub conclusion: Fact,
}
