//! Plain-text Cayley table format.
//!
//! ```text
//! 5
//! #names: a ab ba b aba
//! a ba aba ab b
//! ...
//! ```
//!
//! Line 1 is the order. An optional `#names:` line declares one distinct token
//! per element. Each of the following `n` lines holds row `r`, where column `c`
//! is `r·c`, written either as a 1-based integer or as a declared name. Blank
//! lines are ignored.

use std::collections::HashMap;

use super::Groupoid;
use crate::error::{Error, Result};

const NAMES_PREFIX: &str = "#names:";

pub fn parse_table(text: &str) -> Result<Groupoid> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::MalformedHeader("empty input".into()))?;
    let order: usize = header
        .parse()
        .map_err(|_| Error::MalformedHeader(format!("`{header}` is not an order")))?;
    if order == 0 {
        return Err(Error::EmptyGroupoid);
    }

    let mut rows: Vec<(usize, &str)> = lines.collect();
    let mut names: Option<Vec<String>> = None;
    if let Some(&(_, first)) = rows.first() {
        if let Some(rest) = first.strip_prefix(NAMES_PREFIX) {
            let declared: Vec<String> = rest.split_whitespace().map(str::to_owned).collect();
            if declared.len() != order {
                return Err(Error::WrongNameCount {
                    expected: order,
                    found: declared.len(),
                });
            }
            names = Some(declared);
            rows.remove(0);
        }
    }

    let mut lookup = HashMap::new();
    if let Some(names) = &names {
        for (i, name) in names.iter().enumerate() {
            if lookup.insert(name.as_str(), i).is_some() {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
    }

    if rows.len() != order {
        return Err(Error::WrongRowCount {
            expected: order,
            found: rows.len(),
        });
    }

    let mut table = Vec::with_capacity(order * order);
    for (line, row) in rows {
        let tokens: Vec<&str> = row.split_whitespace().collect();
        if tokens.len() != order {
            return Err(Error::WrongColumnCount {
                line,
                expected: order,
                found: tokens.len(),
            });
        }
        for token in tokens {
            table.push(resolve(token, line, order, &lookup)?);
        }
    }

    let g = Groupoid::from_table(order, table)?;
    match names {
        Some(names) => g.with_names(names),
        None => Ok(g),
    }
}

fn resolve(token: &str, line: usize, order: usize, lookup: &HashMap<&str, usize>) -> Result<usize> {
    if let Some(&i) = lookup.get(token) {
        return Ok(i);
    }
    match token.parse::<usize>() {
        Ok(v) if (1..=order).contains(&v) => Ok(v - 1),
        Ok(_) => Err(Error::EntryOutOfRange {
            line,
            token: token.to_owned(),
            order,
        }),
        Err(_) => Err(Error::UnknownElement {
            line,
            token: token.to_owned(),
        }),
    }
}

/// Writes names when present, otherwise 1-based integers.
pub fn serialize_table(g: &Groupoid) -> String {
    let n = g.order();
    let mut out = format!("{n}\n");
    if let Some(names) = g.names() {
        out.push_str(NAMES_PREFIX);
        for name in names {
            out.push(' ');
            out.push_str(name);
        }
        out.push('\n');
    }
    for r in 0..n {
        let row: Vec<String> = g.row(r).map(|v| g.name(v)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
