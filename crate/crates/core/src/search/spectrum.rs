//! For each order up to a bound: is there a quadratical quasigroup?

use std::fmt;

use super::classify::{affine_class_count, affine_specs, MAX_AFFINE_ORDER};
use super::translate::translatable_tables;
use crate::construct::affine::build_affine;
use crate::error::{Error, Result};
use crate::groupoid::Groupoid;
use crate::properties::require_quadratical;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessSource {
    Trivial,
    Translatable { k: usize },
    Product { left: usize, right: usize },
    Affine,
}

impl fmt::Display for WitnessSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessSource::Trivial => write!(f, "trivial"),
            WitnessSource::Translatable { k } => write!(f, "{k}-translatable"),
            WitnessSource::Product { left, right } => write!(f, "product {left}x{right}"),
            WitnessSource::Affine => write!(f, "affine"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Existence {
    /// The order is not `1 mod 4`.
    Impossible,
    /// No affine class exists, and every quadratical quasigroup is affine.
    ImpossibleByClassification,
    Exists { source: WitnessSource, classes: usize },
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub order: usize,
    pub existence: Existence,
    pub witness: Option<Groupoid>,
}

impl fmt::Display for SpectrumEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.order)?;
        match &self.existence {
            Existence::Impossible => write!(f, "impossible (order not 1 mod 4)"),
            Existence::ImpossibleByClassification => write!(f, "impossible by classification (0 affine classes)"),
            Existence::Exists { source, classes } => write!(f, "exists ({source}); {classes} classes"),
            Existence::Unknown => write!(f, "unknown"),
        }
    }
}

pub fn spectrum_scan(n_max: usize) -> Result<Vec<SpectrumEntry>> {
    if n_max > MAX_AFFINE_ORDER {
        return Err(Error::Precondition(format!("spectrum scans go up to {MAX_AFFINE_ORDER}")));
    }
    let mut out: Vec<SpectrumEntry> = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let entry = if n == 1 {
            SpectrumEntry {
                order: 1,
                existence: Existence::Exists {
                    source: WitnessSource::Trivial,
                    classes: 1,
                },
                witness: Some(Groupoid::trivial()),
            }
        } else if n % 4 != 1 {
            SpectrumEntry {
                order: n,
                existence: Existence::Impossible,
                witness: None,
            }
        } else {
            scan_order(n, &out)?
        };
        out.push(entry);
    }
    Ok(out)
}

fn scan_order(n: usize, smaller: &[SpectrumEntry]) -> Result<SpectrumEntry> {
    let classes = affine_class_count(n)?;
    let mut found = translatable_tables(n)?
        .into_iter()
        .next()
        .map(|(k, g)| (WitnessSource::Translatable { k }, g));
    if found.is_none() {
        found = (2..n).filter(|d| n % d == 0).find_map(|a| {
            let b = n / a;
            let left = smaller[a - 1].witness.as_ref()?;
            let right = smaller.get(b - 1)?.witness.as_ref()?;
            (b > 1).then(|| (WitnessSource::Product { left: a, right: b }, left.direct_product(right)))
        });
    }
    if found.is_none() {
        if let Some(spec) = affine_specs(n)?.first() {
            found = Some((WitnessSource::Affine, build_affine(spec)?));
        }
    }
    let Some((source, g)) = found else {
        let existence = if classes == 0 {
            Existence::ImpossibleByClassification
        } else {
            Existence::Unknown
        };
        return Ok(SpectrumEntry {
            order: n,
            existence,
            witness: None,
        });
    };
    require_quadratical(&g)?;
    if classes == 0 {
        return Err(Error::StructureViolation(format!(
            "order {n} has a witness but no affine class"
        )));
    }
    Ok(SpectrumEntry {
        order: n,
        existence: Existence::Exists { source, classes },
        witness: Some(g),
    })
}
