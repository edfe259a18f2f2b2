//! Regenerates the summary of the catalog's quadratical entries and the
//! table of class counts, and compares both with the checked-in
//! expectations.

use std::fmt::Write as _;

use crate::catalog::self_test;
use crate::error::{Error, Result};
use crate::groupoid::is_isomorphic;
use crate::search::{affine_class_count, detect_translatable, enumerate_quadratical};
use crate::search::enumerate::MAX_ENUMERATION_ORDER;
use crate::structure::detect_form_qn;

pub const EXPECTATIONS: &str = include_str!("../data/report_expectations.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummaryRow {
    pub name: String,
    pub order: usize,
    pub form: Option<usize>,
    pub shifts: Vec<usize>,
    pub any_two: bool,
    pub two_generated: bool,
    pub self_dual: bool,
}

impl SummaryRow {
    pub fn compute(name: &str) -> Result<SummaryRow> {
        let g = self_test(name)?;
        Ok(SummaryRow {
            name: name.to_owned(),
            order: g.order(),
            form: detect_form_qn(&g)?.map(|f| f.depth),
            shifts: detect_translatable(&g)?,
            any_two: g.generated_by_any_two(),
            two_generated: g.is_two_generated(),
            self_dual: is_isomorphic(&g, &g.dual()),
        })
    }

    /// The columns after the name, in the expectations-file format.
    pub fn fields(&self) -> Vec<String> {
        let yes_no = |b: bool| if b { "yes" } else { "no" }.to_owned();
        let shifts = if self.shifts.is_empty() {
            "no".to_owned()
        } else {
            self.shifts.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",")
        };
        vec![
            self.order.to_string(),
            self.form.map_or("no".into(), |d| d.to_string()),
            shifts,
            yes_no(self.any_two),
            yes_no(self.two_generated),
            yes_no(self.self_dual),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Line {
    Summary { name: String, fields: Vec<String> },
    Count { order: usize, classes: usize },
}

pub fn parse_expectations(text: &str) -> Result<Vec<Line>> {
    let mut out = vec![];
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        let bad = || Error::MalformedHeader(format!("expectations line {}: `{line}`", i + 1));
        match words.as_slice() {
            ["summary", name, rest @ ..] if rest.len() == 6 => out.push(Line::Summary {
                name: (*name).to_owned(),
                fields: rest.iter().map(|s| (*s).to_owned()).collect(),
            }),
            ["count", order, classes] => out.push(Line::Count {
                order: order.parse().map_err(|_| bad())?,
                classes: classes.parse().map_err(|_| bad())?,
            }),
            _ => return Err(bad()),
        }
    }
    Ok(out)
}

/// Class count from exhaustive search where it is cheap, else from the
/// affine classification.
pub fn class_count(n: usize) -> Result<(usize, &'static str)> {
    if n <= MAX_ENUMERATION_ORDER {
        Ok((enumerate_quadratical(n)?.representatives.len(), "search"))
    } else {
        Ok((affine_class_count(n)?, "affine"))
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub text: String,
    pub mismatches: usize,
}

pub fn run_report() -> Result<Report> {
    let mut r = Report::default();
    let mut header_done = false;
    let mut counts_done = false;
    for line in parse_expectations(EXPECTATIONS)? {
        match line {
            Line::Summary { name, fields } => {
                if !header_done {
                    writeln!(r.text, "{:<14} {:>5} {:>5} {:>8} {:>8} {:>8} {:>9}", "groupoid", "order", "form", "shifts", "any-two", "2-gen", "self-dual").unwrap();
                    header_done = true;
                }
                let got = SummaryRow::compute(&name)?.fields();
                let ok = got == fields;
                write!(r.text, "{:<14} {:>5} {:>5} {:>8} {:>8} {:>8} {:>9}", name, got[0], got[1], got[2], got[3], got[4], got[5]).unwrap();
                if ok {
                    r.text.push('\n');
                } else {
                    r.mismatches += 1;
                    writeln!(r.text, "   MISMATCH, expected {}", fields.join(" ")).unwrap();
                }
            }
            Line::Count { order, classes } => {
                if !counts_done {
                    writeln!(r.text, "\n{:<6} {:>7}  engine", "order", "classes").unwrap();
                    counts_done = true;
                }
                let (got, engine) = class_count(order)?;
                write!(r.text, "{order:<6} {got:>7}  {engine}").unwrap();
                if got == classes {
                    r.text.push('\n');
                } else {
                    r.mismatches += 1;
                    writeln!(r.text, "   MISMATCH, expected {classes}").unwrap();
                }
            }
        }
    }
    writeln!(r.text, "\n{} mismatches", r.mismatches).unwrap();
    Ok(r)
}
