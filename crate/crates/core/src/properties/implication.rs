//! Testing whether one set of properties forces another, by exhausting all
//! groupoids of small order that satisfy the hypotheses.
//!
//! Tables are grown cell by cell in row-major order, with the hypotheses that
//! are clauses driving propagation and the cancellation/solvability
//! hypotheses turned into Latin constraints. Because the first open cell is
//! always split, with values tried in increasing order, complete tables are
//! met in lexicographic order.

use super::{check, holds, PropertyKind, Witness};
use crate::construct::partial::{bits, Brancher, Cell, Control, Engine, PartialTable};
use crate::error::{Error, Result};
use crate::groupoid::Groupoid;

/// Largest order accepted by [`check_implication`].
pub const MAX_IMPLICATION_ORDER: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    NoCounterexample { max_order: usize },
    Counterexample {
        groupoid: Groupoid,
        property: PropertyKind,
        witness: Witness,
    },
}

impl Verdict {
    pub fn is_counterexample(&self) -> bool {
        matches!(self, Verdict::Counterexample { .. })
    }
}

struct RowMajor;

impl Brancher for RowMajor {
    fn branch(&self, t: &PartialTable) -> Option<(Cell, Vec<usize>)> {
        let n = t.order();
        let i = (0..n * n).find(|&i| t.get(i / n, i % n).is_none())?;
        let cell = (i / n, i % n);
        Some((cell, bits(t.candidates(cell.0, cell.1)).collect()))
    }
}

fn engine_for(hypotheses: &[PropertyKind], n: usize) -> Engine {
    use PropertyKind::*;
    let clauses = hypotheses.iter().flat_map(|p| p.clauses()).collect();
    let rows = hypotheses
        .iter()
        .any(|p| matches!(p, LeftCancellative | RightSolvable | Quasigroup));
    let cols = hypotheses
        .iter()
        .any(|p| matches!(p, RightCancellative | LeftSolvable | Quasigroup));
    Engine::new(n, clauses).latin(rows, cols)
}

/// Calls `visit` on every groupoid of order `n` with all the `hypotheses`,
/// in lexicographic order of tables.
pub fn for_each_model(
    hypotheses: &[PropertyKind],
    n: usize,
    visit: &mut dyn FnMut(&Groupoid) -> Control,
) {
    let engine = engine_for(hypotheses, n);
    let mut t = engine.table();
    engine.search(&mut t, &RowMajor, &mut |t| {
        let g = t.to_groupoid().expect("complete table");
        if hypotheses.iter().all(|&p| holds(&g, p)) {
            visit(&g)
        } else {
            Control::Continue
        }
    });
}

/// Looks for a groupoid of order at most `max_order` that has every
/// hypothesis but lacks some conclusion. Orders are tried in increasing
/// order and the lexicographically first table is reported.
pub fn check_implication(
    hypotheses: &[PropertyKind],
    conclusions: &[PropertyKind],
    max_order: usize,
) -> Result<Verdict> {
    if max_order > MAX_IMPLICATION_ORDER {
        return Err(Error::Precondition(format!(
            "implication checks go up to order {MAX_IMPLICATION_ORDER}"
        )));
    }
    for n in 1..=max_order {
        let mut found = None;
        for_each_model(hypotheses, n, &mut |g| {
            for &p in conclusions {
                if let Err(witness) = check(g, p) {
                    found = Some(Verdict::Counterexample {
                        groupoid: g.clone(),
                        property: p,
                        witness,
                    });
                    return Control::Stop;
                }
            }
            Control::Continue
        });
        if let Some(v) = found {
            return Ok(v);
        }
    }
    Ok(Verdict::NoCounterexample { max_order })
}
