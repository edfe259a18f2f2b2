//! Enumeration and scanning: all quadratical quasigroups of small orders,
//! affine classification at larger orders, translatability and the
//! spectrum of orders.

pub mod classify;
pub mod enumerate;
pub mod spectrum;
pub mod translate;

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::Result;
use crate::groupoid::format::serialize_table;

pub use classify::{affine_class_count, affine_specs, classify_affine};
pub use enumerate::{enumerate_quadratical, EnumerationResult};
pub use spectrum::{spectrum_scan, Existence, SpectrumEntry, WitnessSource};
pub use translate::{detect_translatable, scan_translatable, TranslatabilityReport};

/// Writes one table file per representative plus `index.txt`, returning the
/// table paths.
pub fn write_enumeration(result: &EnumerationResult, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut names = vec![];
    let mut paths = vec![];
    for (i, g) in result.representatives.iter().enumerate() {
        let name = format!("order{}_{}.tbl", result.order, i + 1);
        let path = dir.join(&name);
        fs::write(&path, serialize_table(g))?;
        names.push(name);
        paths.push(path);
    }
    fs::write(dir.join("index.txt"), index_line(result, &names))?;
    Ok(paths)
}

pub fn index_line(result: &EnumerationResult, files: &[String]) -> String {
    let mut line = format!(
        "order {} count {} representatives: {}",
        result.order,
        result.representatives.len(),
        files.join(" ")
    );
    if !result.complete {
        line.push_str(" (incomplete: time budget exhausted)");
    }
    line.push('\n');
    line
}
