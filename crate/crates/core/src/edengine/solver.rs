//! Least-fixpoint interval narrowing and trace replay.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::rules::{applications, Application, RuleId};
use super::{BoundInterval, EngineError, Fact, Query, TraceNode};
use crate::fielddesc::FieldDescriptor;
use crate::groups::GroupExpr;

/// Closure size above which a query is rejected.
const MAX_QUERIES: usize = 20_000;
/// Sweeps over the closure before giving up on a fixpoint.
const MAX_ROUNDS: usize = 10_000;

/// Interval for the query and the full derivation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundResult {
    pub query: Query,
    pub interval: BoundInterval,
    pub nodes: Vec<TraceNode>,
}

impl BoundResult {
    /// Nodes whose conclusion is the root query.
    pub fn root_nodes(&self) -> impl Iterator<Item = &TraceNode> {
        self.nodes.iter().filter(|n| n.conclusion.query == self.query)
    }
}

fn closure(root: &Query) -> Result<BTreeMap<Query, Vec<Application>>, EngineError> {
    let mut apps: BTreeMap<Query, Vec<Application>> = BTreeMap::new();
    let mut pending = vec![root.clone()];
    while let Some(q) = pending.pop() {
        if apps.contains_key(&q) {
            continue;
        }
        if apps.len() >= MAX_QUERIES {
            return Err(EngineError::TooLarge(format!("closure of {root} exceeds {MAX_QUERIES} queries")));
        }
        let list = applications(&q, &root.field)?;
        for a in &list {
            pending.extend(a.premises.iter().filter(|p| !apps.contains_key(*p)).cloned());
        }
        apps.insert(q, list);
    }
    Ok(apps)
}

/// Certified interval for `ed_K(G)` with its derivation trace.
///
/// Sweeps the closure in query order, applying each query's rules in
/// catalog order, until a sweep changes nothing. Intervals only shrink, so
/// the result is the least fixpoint and depends only on `(g, fd)`.
pub fn bound(g: &GroupExpr, fd: &FieldDescriptor) -> Result<BoundResult, EngineError> {
    g.validate()?;
    let root = Query::new(g, fd);
    let apps = closure(&root)?;
    let mut state: BTreeMap<&Query, BoundInterval> = apps.keys().map(|q| (q, BoundInterval::UNBOUNDED)).collect();
    let mut nodes = Vec::new();
    for _ in 0..MAX_ROUNDS {
        let mut changed = false;
        for (q, list) in &apps {
            for app in list {
                let premises: Vec<BoundInterval> = app.premises.iter().map(|p| state[p]).collect();
                let derived = app.derive.apply(&premises);
                let current = state[q];
                let next = current.meet(&derived);
                if next == current {
                    continue;
                }
                if !next.is_consistent() {
                    return Err(EngineError::Inconsistent {
                        query: q.to_string(),
                        lo: next.lo,
                        hi: next.hi_string(),
                    });
                }
                nodes.push(TraceNode {
                    rule: app.rule,
                    citation: app.rule.citation(),
                    note: app.note.clone(),
                    premises: app
                        .premises
                        .iter()
                        .zip(premises)
                        .map(|(p, interval)| Fact {
                            query: p.clone(),
                            interval,
                        })
                        .collect(),
                    conclusion: Fact {
                        query: q.clone(),
                        interval: derived,
                    },
                });
                state.insert(q, next);
                changed = true;
            }
        }
        if !changed {
            let interval = state[&root];
            return Ok(BoundResult {
                query: root,
                interval,
                nodes,
            });
        }
    }
    Err(EngineError::Inconsistent {
        query: root.to_string(),
        lo: state[&root].lo,
        hi: "no fixpoint".into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReplayError {
    #[error("node {0}: citation does not match the catalog entry")]
    Citation(usize),
    #[error("node {0}: no such rule instance for the conclusion")]
    NoSuchApplication(usize),
    #[error("node {0}: premise interval differs from the replayed state")]
    Premise(usize),
    #[error("node {0}: conclusion does not follow from the premises")]
    Conclusion(usize),
    #[error("replayed interval {0} differs from the reported one")]
    Final(BoundInterval),
    #[error("node {0}: {1}")]
    Engine(usize, EngineError),
}

/// Re-derives every node from its premises and the rule definitions and
/// returns the replayed interval of the root query.
pub fn replay(result: &BoundResult) -> Result<BoundInterval, ReplayError> {
    let root_field = &result.query.field;
    let mut state: HashMap<&Query, BoundInterval> = HashMap::new();
    let mut cache: HashMap<&Query, Vec<Application>> = HashMap::new();
    for (i, node) in result.nodes.iter().enumerate() {
        if RuleId::from_id(node.rule.id()) != Some(node.rule) || node.citation != node.rule.citation() {
            return Err(ReplayError::Citation(i));
        }
        let q = &node.conclusion.query;
        if !cache.contains_key(q) {
            let apps = applications(q, root_field).map_err(|e| ReplayError::Engine(i, e))?;
            cache.insert(q, apps);
        }
        let app = cache[q]
            .iter()
            .find(|a| {
                a.rule == node.rule
                    && a.note == node.note
                    && a.premises.len() == node.premises.len()
                    && a.premises.iter().zip(&node.premises).all(|(p, f)| p == &f.query)
            })
            .ok_or(ReplayError::NoSuchApplication(i))?;
        let mut premises = Vec::with_capacity(node.premises.len());
        for f in &node.premises {
            let current = state.get(&f.query).copied().unwrap_or(BoundInterval::UNBOUNDED);
            if current != f.interval {
                return Err(ReplayError::Premise(i));
            }
            premises.push(current);
        }
        if app.derive.apply(&premises) != node.conclusion.interval {
            return Err(ReplayError::Conclusion(i));
        }
        let current = state.get(q).copied().unwrap_or(BoundInterval::UNBOUNDED);
        state.insert(q, current.meet(&node.conclusion.interval));
    }
    let replayed = state.get(&result.query).copied().unwrap_or(BoundInterval::UNBOUNDED);
    if replayed != result.interval {
        return Err(ReplayError::Final(replayed));
    }
    Ok(replayed)
}
