//! Exhaustive enumeration of quadratical quasigroups of a given order, up to
//! isomorphism.
//!
//! Tables are idempotent Latin squares closed under the bookend and medial
//! laws. Elements that no known product mentions are interchangeable, so
//! when a cell is split only one such "fresh" value is tried.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use crate::construct::partial::{bits, Brancher, Cell, Control, Engine, PartialTable, MAX_ORDER};
use crate::error::{Error, Result};
use crate::groupoid::{automorphism_count, canonical_form, Groupoid};
use crate::properties::{is_quadratical, Method, PropertyKind};

/// Largest order accepted without a time budget.
pub const MAX_ENUMERATION_ORDER: usize = 13;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationResult {
    pub order: usize,
    /// Canonical forms, sorted.
    pub representatives: Vec<Groupoid>,
    /// Number of labeled tables, `sum of n!/|Aut|` over the representatives.
    pub raw_count: Option<u128>,
    /// False when the time budget ran out first.
    pub complete: bool,
}

/// Splits cells touching already mentioned elements first, and tries a
/// single representative of the unmentioned values.
struct FreshValues;

fn mentioned(t: &PartialTable) -> u64 {
    let n = t.order();
    let identity_diagonal = (0..n).all(|x| t.get(x, x) == Some(x));
    let mut m = 0u64;
    for r in 0..n {
        for c in 0..n {
            if r == c && identity_diagonal {
                continue;
            }
            if let Some(v) = t.get(r, c) {
                m |= 1 << r | 1 << c | 1 << v;
            }
        }
    }
    m
}

impl Brancher for FreshValues {
    fn branch(&self, t: &PartialTable) -> Option<(Cell, Vec<usize>)> {
        let n = t.order();
        let m = mentioned(t);
        let fresh: Vec<usize> = (0..n).filter(|&x| m >> x & 1 == 0).collect();
        // cost of a cell: new elements it would mention, then candidates
        let mut best: Option<((u32, u32), Cell)> = None;
        for r in 0..n {
            for c in 0..n {
                if t.get(r, c).is_some() {
                    continue;
                }
                let new = (m >> r & 1 == 0) as u32 + (m >> c & 1 == 0 && c != r) as u32;
                // only the smallest fresh elements need be considered
                if new > 0 {
                    let allowed = &fresh[..new as usize];
                    let ok = [r, c].iter().all(|x| m >> x & 1 == 1 || allowed.contains(x));
                    if !ok {
                        continue;
                    }
                }
                let key = (new, t.candidates(r, c).count_ones());
                if best.is_none_or(|(k, _)| key < k) {
                    best = Some((key, (r, c)));
                }
            }
        }
        let (_, (r, c)) = best?;
        let seen = m | 1 << r | 1 << c;
        let cand = t.candidates(r, c);
        let mut values: Vec<usize> = bits(cand & seen).collect();
        if let Some(v) = bits(cand & !seen).next() {
            values.push(v);
            values.sort_unstable();
        }
        Some(((r, c), values))
    }
}

fn quadratical_engine(n: usize) -> Engine {
    let clauses = [PropertyKind::Idempotent, PropertyKind::Bookend, PropertyKind::Medial]
        .iter()
        .flat_map(|p| p.clauses())
        .collect();
    Engine::new(n, clauses).latin(true, true)
}

/// Reads `QUADLAB_BUDGET_SECS`, if set.
pub fn budget_from_env() -> Option<Duration> {
    std::env::var("QUADLAB_BUDGET_SECS")
        .ok()
        .and_then(|s| s.trim().parse::<f64>().ok())
        .filter(|s| *s >= 0.0)
        .map(Duration::from_secs_f64)
}

/// Enumerates with the budget from the environment. Orders above 13 need
/// a budget.
pub fn enumerate_quadratical(n: usize) -> Result<EnumerationResult> {
    let budget = budget_from_env();
    if n > MAX_ENUMERATION_ORDER && budget.is_none() {
        return Err(Error::Precondition(format!(
            "enumeration above order {MAX_ENUMERATION_ORDER} needs QUADLAB_BUDGET_SECS"
        )));
    }
    enumerate_quadratical_within(n, budget)
}

pub fn enumerate_quadratical_within(n: usize, budget: Option<Duration>) -> Result<EnumerationResult> {
    if n == 0 || n > MAX_ORDER {
        return Err(Error::Precondition(format!("order must be in 1..={MAX_ORDER}")));
    }
    let deadline = budget.map(|b| Instant::now() + b);
    let engine = quadratical_engine(n);
    let mut t = engine.table();
    let mut found = BTreeSet::new();
    let mut failure = None;
    let stats = engine.search_until(
        &mut t,
        &FreshValues,
        &mut |t| {
            let g = t.to_groupoid().expect("complete table");
            match is_quadratical(&g, Method::All) {
                Ok(true) => {
                    found.insert(canonical_form(&g).table());
                    Control::Continue
                }
                Ok(false) => {
                    failure = Some(Error::NotQuadratical("propagation accepted a bad table".into()));
                    Control::Stop
                }
                Err(e) => {
                    failure = Some(e);
                    Control::Stop
                }
            }
        },
        deadline,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let representatives: Vec<Groupoid> = found
        .into_iter()
        .map(|t| Groupoid::from_table(n, t).expect("canonical tables are valid"))
        .collect();
    let complete = !stats.timed_out;
    let raw_count = complete.then(|| labeled_count(&representatives));
    Ok(EnumerationResult {
        order: n,
        representatives,
        raw_count,
        complete,
    })
}

/// Number of distinct labeled tables isomorphic to one of `reps`.
pub fn labeled_count(reps: &[Groupoid]) -> u128 {
    reps.iter()
        .map(|g| {
            let fact: u128 = (1..=g.order() as u128).product();
            fact / automorphism_count(g) as u128
        })
        .sum()
}
