//! `edim`: essential-dimension bounds and the symbolic checks behind them.
//!
//! Every command prints one JSON document tagged `"schema": "edim/1"`, or a
//! plain-text rendering with `--plain`. Exit codes: 0 success, 2 malformed
//! or invalid input, 3 too large or unsupported, 4 internal inconsistency.

mod error;
mod plain;

use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use edim::crossratio::{self, CRSymbol, Rewriter};
use edim::edengine::{bound, replay};
use edim::exactfield::{Fq, FqElement};
use edim::fielddesc::{FieldDescriptor, FpDim};
use edim::groups::{GroupExpr, Perm};
use edim::pgl2;
use edim::tschirnhaus::{self, GeneralPoly, TransformRecord};
use edim::{Rational, Scalar};

use error::{CliError, ErrorKind};

const SCHEMA: &str = "edim/1";

#[derive(Parser, Debug)]
#[command(name = "edim", version, about = "Certified essential-dimension bounds and their symbolic checks")]
struct Cli {
    /// Render human-readable text instead of JSON.
    #[arg(long, global = true)]
    plain: bool,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certified interval for ed_K(G) with its derivation trace.
    Bound {
        #[arg(long)]
        group: String,
        #[arg(long)]
        field: String,
    },
    /// Intervals for every (group, field) pair, row-major by group.
    Table {
        #[arg(long = "group", required = true)]
        groups: Vec<String>,
        #[arg(long = "field", required = true)]
        fields: Vec<String>,
    },
    /// Cross-ratio rewriting and the induced S_n-action.
    #[command(subcommand)]
    Crossratio(CrossRatioCmd),
    /// Tschirnhaus reduction of the general polynomial.
    #[command(subcommand)]
    Tschirnhaus(TschirnhausCmd),
    /// Computations in PGL_2(F_q).
    #[command(subcommand)]
    Pgl2(Pgl2Cmd),
    /// Queries against a field descriptor.
    Field {
        query: FieldQuery,
        #[arg(long)]
        field: String,
        /// Root-of-unity order for the zeta queries and `extend`.
        #[arg(long)]
        n: Option<u64>,
    },
}

#[derive(Subcommand, Debug)]
enum CrossRatioCmd {
    /// Express [i,j;k,l] in the generators t_m = [1,2;3,m].
    Rewrite {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        symbol: Vec<usize>,
        /// Coefficient characteristic (0 for Q).
        #[arg(long, default_value_t = 0)]
        char: u64,
    },
    /// Images of the generators under a permutation in cycle notation.
    Action {
        #[arg(long)]
        n: usize,
        /// e.g. "(1 2)(3 4 5)"
        #[arg(long)]
        perm: String,
    },
    /// Check every symbol's rewrite and the faithfulness of the action.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum TschirnhausCmd {
    /// Reduce the general monic polynomial of degree n.
    Reduce {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        char: u64,
    },
    /// Check the reduction at random admissible specializations.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        char: u64,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum Pgl2Cmd {
    /// Census of element orders.
    Orders {
        #[arg(long)]
        q: u64,
    },
    /// Whether a cyclic, dihedral or elementary abelian group embeds.
    Embed {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        group: String,
    },
    /// Explicit 2x2 matrices for a dihedral or elementary abelian group.
    Reps {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        group: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FieldQuery {
    Characteristic,
    Zeta,
    RealZeta,
    FpDim,
    Extend,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli.cmd);
    match result {
        Ok(mut v) => {
            let code = v
                .as_object_mut()
                .and_then(|m| m.remove("__exit"))
                .and_then(|c| c.as_u64())
                .unwrap_or(0);
            let v = tag(v);
            let text = if cli.plain {
                plain::render(&v)
            } else {
                serde_json::to_string(&v).expect("JSON values serialize") + "\n"
            };
            emit(&text);
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            if !cli.plain {
                emit(&(serde_json::to_string(&tag(json!({ "error": e.to_json() }))).expect("serializes") + "\n"));
            }
            ExitCode::from(e.exit_code())
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn tag(v: Value) -> Value {
    let mut m = match v {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("result".into(), other);
            m
        }
    };
    m.insert("schema".into(), Value::String(SCHEMA.into()));
    Value::Object(m)
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize")
}

fn run(cmd: &Command) -> Result<Value, CliError> {
    match cmd {
        Command::Bound { group, field } => run_bound(group, field),
        Command::Table { groups, fields } => run_table(groups, fields),
        Command::Crossratio(c) => run_crossratio(c),
        Command::Tschirnhaus(c) => run_tschirnhaus(c),
        Command::Pgl2(c) => run_pgl2(c),
        Command::Field { query, field, n } => run_field(*query, field, *n),
    }
}

fn parse_group(text: &str) -> Result<GroupExpr, CliError> {
    Ok(text.parse::<GroupExpr>()?)
}

fn parse_field(text: &str) -> Result<FieldDescriptor, CliError> {
    Ok(text.parse::<FieldDescriptor>()?)
}

fn bound_value(group: &str, field: &str) -> Result<Value, CliError> {
    let g = parse_group(group)?;
    let k = parse_field(field)?;
    let result = bound(&g, &k)?;
    let replayed = replay(&result).map_err(|e| CliError::new(ErrorKind::Inconsistent, format!("replay failed: {e}")))?;
    let mut v = to_value(&result);
    v["replayed"] = to_value(&replayed);
    Ok(v)
}

fn run_bound(group: &str, field: &str) -> Result<Value, CliError> {
    bound_value(group, field)
}

fn run_table(groups: &[String], fields: &[String]) -> Result<Value, CliError> {
    let cells: Vec<(&String, &String)> = groups.iter().flat_map(|g| fields.iter().map(move |f| (g, f))).collect();
    let out: Mutex<Vec<Option<Result<Value, CliError>>>> = Mutex::new(vec![None; cells.len()]);
    let next = AtomicUsize::new(0);
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(cells.len().max(1));
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some((g, f)) = cells.get(i) else { break };
                let r = bound_value(g, f);
                out.lock().expect("no poisoned workers")[i] = Some(r);
            });
        }
    });
    let mut first_code = 0u8;
    let rows: Vec<Value> = cells
        .iter()
        .zip(out.into_inner().expect("workers joined"))
        .map(|((g, f), r)| match r.expect("every cell evaluated") {
            Ok(v) => json!({ "group": g, "field": f, "query": v["query"], "interval": v["interval"] }),
            Err(e) => {
                if first_code == 0 {
                    first_code = e.exit_code();
                }
                json!({ "group": g, "field": f, "error": e.to_json() })
            }
        })
        .collect();
    Ok(json!({ "groups": groups, "fields": fields, "cells": rows, "__exit": first_code }))
}

/// Cycle notation such as `(1 2)(3 4 5)`; points are 1-based, separated by
/// spaces or commas; `()` is the identity.
fn parse_perm(n: usize, text: &str) -> Result<Perm, CliError> {
    let bad = |msg: String| CliError::new(ErrorKind::Parse, format!("permutation {text:?}: {msg}"));
    let mut cycles = Vec::new();
    let mut seen = vec![false; n + 1];
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err(bad("empty".into()));
    }
    while !rest.is_empty() {
        let inner = rest.strip_prefix('(').ok_or_else(|| bad("expected '('".into()))?;
        let close = inner.find(')').ok_or_else(|| bad("missing ')'".into()))?;
        let mut cycle = Vec::new();
        for tok in inner[..close].split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let i: usize = tok.parse().map_err(|_| bad(format!("{tok:?} is not a point")))?;
            if i == 0 || i > n {
                return Err(CliError::new(ErrorKind::Value, format!("point {i} is outside 1..={n}")));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(CliError::new(ErrorKind::Value, format!("point {i} appears twice")));
            }
            cycle.push(i);
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = inner[close + 1..].trim_start();
    }
    Ok(Perm::from_cycles(n, &cycles))
}

fn symbol(n: usize, idx: &[usize]) -> Result<CRSymbol, CliError> {
    let idx: [usize; 4] = idx
        .try_into()
        .map_err(|_| CliError::new(ErrorKind::Parse, "a symbol has exactly four indices".into()))?;
    Ok(CRSymbol::new(n, idx)?)
}

fn rewrite_in<C: Scalar>(sym: &CRSymbol, domain: &C::Domain) -> Result<String, CliError> {
    Ok(crossratio::cr_rewrite::<C>(sym, domain)?.to_string())
}

fn run_crossratio(cmd: &CrossRatioCmd) -> Result<Value, CliError> {
    match cmd {
        CrossRatioCmd::Rewrite { n, symbol: idx, char } => {
            let sym = symbol(*n, idx)?;
            let expr = if *char == 0 {
                rewrite_in::<Rational>(&sym, &())?
            } else {
                rewrite_in::<FqElement>(&sym, &Fq::new(*char, 1)?)?
            };
            Ok(json!({ "n": n, "char": char, "symbol": sym.to_string(), "expr": expr }))
        }
        CrossRatioCmd::Action { n, perm } => {
            let sigma = parse_perm(*n, perm)?;
            let mut rw = Rewriter::<Rational>::new(*n, &())?;
            let map = crossratio::sn_action(&mut rw, &sigma)?;
            let images: BTreeMap<String, String> = map
                .images
                .iter()
                .enumerate()
                .map(|(i, img)| (format!("t{}", i + 4), img.to_string()))
                .collect();
            Ok(json!({ "n": n, "perm": sigma.to_string(), "images": images, "identity": map.is_identity() }))
        }
        CrossRatioCmd::Verify { n, samples, seed } => {
            let symbols = crossratio::verify_symbols(*n, *samples, *seed)?;
            let faithful = crossratio::verify_faithful::<Rational>(*n, &())?;
            let passed = symbols.passed() && faithful.passed;
            Ok(json!({
                "n": n,
                "seed": seed,
                "symbols": to_value(&symbols),
                "faithful": to_value(&faithful),
                "ok": passed,
                "__exit": if passed { 0 } else { 4 },
            }))
        }
    }
}

fn reduction_value<C: Scalar>(n: usize, domain: &C::Domain) -> Result<Value, CliError> {
    let (h, record): (GeneralPoly<C>, TransformRecord<C>) = tschirnhaus::reduce_general::<C>(n, domain)?;
    Ok(json!({
        "original": GeneralPoly::<C>::general(n, domain).to_string(),
        "reduced": h.to_string(),
        "parameters": h.parameter_count(),
        "record": to_value(&record),
    }))
}

fn run_tschirnhaus(cmd: &TschirnhausCmd) -> Result<Value, CliError> {
    match cmd {
        TschirnhausCmd::Reduce { n, char } => {
            let mut v = if *char == 0 {
                reduction_value::<Rational>(*n, &())?
            } else {
                reduction_value::<FqElement>(*n, &Fq::new(*char, 1)?)?
            };
            v["n"] = json!(n);
            v["char"] = json!(char);
            Ok(v)
        }
        TschirnhausCmd::Verify { n, char, trials, seed } => {
            let report = tschirnhaus::verify_random(*n, *char, *trials, *seed)?;
            let passed = report.all_passed() && report.admissible == *trials;
            let mut v = to_value(&report);
            v["ok"] = json!(passed);
            v["__exit"] = json!(if passed { 0 } else { 4 });
            Ok(v)
        }
    }
}

fn field_of_order(q: u64) -> Result<Fq, CliError> {
    if q > pgl2::MAX_Q {
        return Err(CliError::new(ErrorKind::TooLarge, format!("q = {q} exceeds {}", pgl2::MAX_Q)));
    }
    Ok(Fq::of_order(q)?)
}

fn run_pgl2(cmd: &Pgl2Cmd) -> Result<Value, CliError> {
    match cmd {
        Pgl2Cmd::Orders { q } => {
            let census = pgl2::order_census(&field_of_order(*q)?)?;
            let orders: BTreeMap<String, u64> = census.iter().map(|(o, c)| (o.to_string(), *c)).collect();
            let total: u64 = census.values().sum();
            Ok(json!({ "q": q, "order": total, "orders": orders }))
        }
        Pgl2Cmd::Embed { q, group } => {
            let h = parse_group(group)?;
            let field = field_of_order(*q)?;
            let v = match pgl2::pgl2_embeds(&h, &field)? {
                pgl2::Pgl2Embedding::Embeds(w) => {
                    json!({ "embeds": true, "witness": w.iter().map(|e| e.rep().to_string()).collect::<Vec<_>>() })
                }
                pgl2::Pgl2Embedding::No => json!({ "embeds": false }),
            };
            let mut v = v;
            v["q"] = json!(q);
            v["group"] = json!(h.to_string());
            Ok(v)
        }
        Pgl2Cmd::Reps { q, group } => {
            let h = parse_group(group)?.canonical();
            let field = field_of_order(*q)?;
            let mats = match h {
                GroupExpr::Dih(n) if n as u64 == field.p() => {
                    let (s, t) = pgl2::dp_representation(&field)?;
                    vec![s, t]
                }
                GroupExpr::Dih(n) => {
                    let (s, t) = pgl2::dn_representation(&field, n as u64)?;
                    vec![s, t]
                }
                GroupExpr::ElemAb(p, r) if p as u64 == field.p() => {
                    let alphas: Vec<FqElement> = (0..r as usize)
                        .map(|i| {
                            let mut c = vec![0u64; i + 1];
                            c[i] = 1;
                            field.from_coeffs(&c)
                        })
                        .collect();
                    pgl2::elemab_representation(&alphas)?
                }
                other => {
                    return Err(CliError::new(
                        ErrorKind::Unsupported,
                        format!("no explicit representation of {other} over {field}"),
                    ))
                }
            };
            Ok(json!({ "q": q, "group": h.to_string(), "generators": mats.iter().map(to_value).collect::<Vec<_>>() }))
        }
    }
}

fn run_field(query: FieldQuery, field: &str, n: Option<u64>) -> Result<Value, CliError> {
    let k = parse_field(field)?;
    let need_n = || n.ok_or_else(|| CliError::new(ErrorKind::Parse, "this query needs --n".into()));
    let mut v = json!({ "field": k.to_string() });
    match query {
        FieldQuery::Characteristic => v["characteristic"] = json!(k.characteristic()),
        FieldQuery::Zeta => {
            let m = need_n()?;
            v["n"] = json!(m);
            v["contains_zeta"] = json!(k.contains_zeta(m).to_string());
        }
        FieldQuery::RealZeta => {
            let m = need_n()?;
            v["n"] = json!(m);
            v["contains_real_zeta"] = json!(k.contains_real_zeta(m).to_string());
        }
        FieldQuery::FpDim => {
            v["fp_dimension"] = match k.fp_dimension()? {
                FpDim::Finite(d) => json!(d),
                FpDim::Infinite => json!("inf"),
            }
        }
        FieldQuery::Extend => {
            let m = need_n()?;
            v["n"] = json!(m);
            v["extension"] = json!(k.extend_with_zeta(m)?.to_string());
        }
    }
    Ok(v)
}
