//! Which shifts `k` admit a `k`-translatable quadratical quasigroup.
//!
//! An idempotent `k`-translatable table of order `n` is unique when it
//! exists, so a groupoid has a `k`-translatable ordering exactly when it is
//! isomorphic to that table.

use crate::construct::translatable::forced_idempotent_translatable;
use crate::error::{Error, Result};
use crate::groupoid::{canonical_form, is_isomorphic, Groupoid};
use crate::properties::{holds, is_quadratical, Method, PropertyKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslatabilityReport {
    pub order: usize,
    /// `(k, canonical form)` for each shift that works.
    pub hits: Vec<(usize, Groupoid)>,
}

impl TranslatabilityReport {
    pub fn shifts(&self) -> Vec<usize> {
        self.hits.iter().map(|(k, _)| *k).collect()
    }
}

/// Shifts whose forced idempotent table is quadratical, with the tables
/// themselves in their translatable ordering.
pub fn translatable_tables(n: usize) -> Result<Vec<(usize, Groupoid)>> {
    let mut out = vec![];
    for k in 1..=n {
        if let Some(g) = forced_idempotent_translatable(n, k) {
            // bookend fails fast on most shifts; the full check is costly
            if holds(&g, PropertyKind::Bookend) && is_quadratical(&g, Method::All)? {
                out.push((k, g));
            }
        }
    }
    Ok(out)
}

pub fn scan_translatable(n: usize) -> Result<TranslatabilityReport> {
    if n == 0 {
        return Err(Error::Precondition("order must be positive".into()));
    }
    let hits = translatable_tables(n)?
        .into_iter()
        .map(|(k, g)| (k, canonical_form(&g)))
        .collect();
    Ok(TranslatabilityReport { order: n, hits })
}

/// Every `k` for which some ordering of `g` is `k`-translatable.
pub fn detect_translatable(g: &Groupoid) -> Result<Vec<usize>> {
    if !holds(g, PropertyKind::Idempotent) {
        return Err(Error::Precondition("translatability is decided for idempotent groupoids".into()));
    }
    let n = g.order();
    Ok((1..=n)
        .filter(|&k| forced_idempotent_translatable(n, k).is_some_and(|t| is_isomorphic(g, &t)))
        .collect())
}
