//! Finite groupoids stored as Cayley tables.
//!
//! Elements are the indices `0..n`. Display names are optional metadata and
//! never take part in any algebraic computation. The text format (see
//! [`format`]) is 1-based to match the usual way the tables are written by
//! hand.

pub mod format;
pub mod iso;

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

pub use iso::{automorphism_count, canonical_form, canonical_labeling, find_isomorphism, is_isomorphic, Isomorphism};

/// A finite groupoid: a set `0..order` with a total binary operation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Groupoid {
    order: usize,
    table: Vec<u16>,
    names: Option<Vec<String>>,
}

impl Groupoid {
    /// Builds a groupoid from a row-major table (`table[r * n + c] = r·c`).
    pub fn from_table(order: usize, table: Vec<usize>) -> Result<Self> {
        if order == 0 {
            return Err(Error::EmptyGroupoid);
        }
        if order > u16::MAX as usize {
            return Err(Error::IndexOutOfRange {
                index: order,
                order: u16::MAX as usize,
            });
        }
        if table.len() != order * order {
            return Err(Error::WrongRowCount {
                expected: order * order,
                found: table.len(),
            });
        }
        let mut packed = Vec::with_capacity(table.len());
        for (i, &v) in table.iter().enumerate() {
            if v >= order {
                return Err(Error::NotClosed {
                    row: i / order,
                    col: i % order,
                    value: v,
                    order,
                });
            }
            packed.push(v as u16);
        }
        Ok(Groupoid {
            order,
            table: packed,
            names: None,
        })
    }

    /// Builds a groupoid from a product function.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> usize) -> Result<Self> {
        let mut table = Vec::with_capacity(order * order);
        for r in 0..order {
            for c in 0..order {
                table.push(f(r, c));
            }
        }
        Self::from_table(order, table)
    }

    /// The one-element groupoid.
    pub fn trivial() -> Self {
        Groupoid {
            order: 1,
            table: vec![0],
            names: None,
        }
    }

    /// Attaches display names; they must be distinct and exactly `order` many.
    pub fn with_names<S: Into<String>>(mut self, names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() != self.order {
            return Err(Error::WrongNameCount {
                expected: self.order,
                found: names.len(),
            });
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn without_names(mut self) -> Self {
        self.names = None;
        self
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    /// The product `x·y`.
    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y] as usize
    }

    pub fn row(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.table[x * self.order..(x + 1) * self.order]
            .iter()
            .map(|&v| v as usize)
    }

    pub fn column(&self, y: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.order).map(move |x| self.mul(x, y))
    }

    /// Row-major table as plain indices.
    pub fn table(&self) -> Vec<usize> {
        self.table.iter().map(|&v| v as usize).collect()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display name of `x`: its declared name, or its 1-based index.
    pub fn name(&self, x: usize) -> String {
        match &self.names {
            Some(names) => names[x].clone(),
            None => (x + 1).to_string(),
        }
    }

    /// Resolves a declared name, or a 1-based integer when no name matches.
    pub fn element(&self, token: &str) -> Option<usize> {
        if let Some(names) = &self.names {
            if let Some(i) = names.iter().position(|n| n == token) {
                return Some(i);
            }
        }
        match token.parse::<usize>() {
            Ok(i) if (1..=self.order).contains(&i) => Some(i - 1),
            _ => None,
        }
    }

    /// Like [`Groupoid::element`] but panics on unknown tokens; for built-in data.
    pub fn el(&self, token: &str) -> usize {
        self.element(token)
            .unwrap_or_else(|| panic!("no element `{token}` in groupoid"))
    }

    /// The dual groupoid: `x * y = y·x` (transposed table).
    pub fn dual(&self) -> Groupoid {
        let n = self.order;
        let mut table = vec![0u16; n * n];
        for r in 0..n {
            for c in 0..n {
                table[r * n + c] = self.table[c * n + r];
            }
        }
        Groupoid {
            order: n,
            table,
            names: self.names.clone(),
        }
    }

    /// Componentwise product; the pair `(g, h)` has index `g·|H| + h`.
    pub fn direct_product(&self, other: &Groupoid) -> Groupoid {
        let m = other.order;
        let n = self.order * m;
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            let (g1, h1) = (a / m, a % m);
            for b in 0..n {
                let (g2, h2) = (b / m, b % m);
                table.push((self.mul(g1, g2) * m + other.mul(h1, h2)) as u16);
            }
        }
        let names = (0..n)
            .map(|a| format!("({},{})", self.name(a / m), other.name(a % m)))
            .collect();
        Groupoid {
            order: n,
            table,
            names: Some(names),
        }
    }

    /// Relabels elements: element `x` of `self` becomes `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> Groupoid {
        let n = self.order;
        assert_eq!(perm.len(), n, "relabeling must cover every element");
        let mut table = vec![0u16; n * n];
        for x in 0..n {
            for y in 0..n {
                table[perm[x] * n + perm[y]] = perm[self.mul(x, y)] as u16;
            }
        }
        let names = self.names.as_ref().map(|names| {
            let mut out = vec![String::new(); n];
            for x in 0..n {
                out[perm[x]] = names[x].clone();
            }
            out
        });
        Groupoid {
            order: n,
            table,
            names,
        }
    }

    /// The substructure on `elements`, re-indexed in the given order.
    /// Returns `None` when the set is not closed.
    pub fn restrict(&self, elements: &[usize]) -> Option<Groupoid> {
        let mut pos = vec![usize::MAX; self.order];
        for (i, &e) in elements.iter().enumerate() {
            pos[e] = i;
        }
        let k = elements.len();
        let mut table = Vec::with_capacity(k * k);
        for &x in elements {
            for &y in elements {
                let p = pos[self.mul(x, y)];
                if p == usize::MAX {
                    return None;
                }
                table.push(p as u16);
            }
        }
        let names = elements.iter().map(|&e| self.name(e)).collect();
        Some(Groupoid {
            order: k,
            table,
            names: Some(names),
        })
    }

    /// Smallest product-closed subset containing `seeds`, sorted ascending.
    pub fn generated_subgroupoid(&self, seeds: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order];
        let mut members = Vec::new();
        for &s in seeds {
            if !inside[s] {
                inside[s] = true;
                members.push(s);
            }
        }
        // every pair (i, j) with max(i, j) = k is multiplied once
        let mut k = 0;
        while k < members.len() {
            let z = members[k];
            for i in 0..=k {
                let x = members[i];
                for p in [self.mul(x, z), self.mul(z, x)] {
                    if !inside[p] {
                        inside[p] = true;
                        members.push(p);
                    }
                }
            }
            k += 1;
        }
        members.sort_unstable();
        members
    }

    /// True when some pair of distinct elements generates everything.
    pub fn is_two_generated(&self) -> bool {
        let n = self.order;
        if n < 2 {
            return false;
        }
        (0..n).any(|x| (x + 1..n).any(|y| self.generated_subgroupoid(&[x, y]).len() == n))
    }

    /// True when every pair of distinct elements generates everything.
    pub fn generated_by_any_two(&self) -> bool {
        let n = self.order;
        if n < 2 {
            return false;
        }
        (0..n).all(|x| (x + 1..n).all(|y| self.generated_subgroupoid(&[x, y]).len() == n))
    }
}

impl fmt::Debug for Groupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Groupoid(order {})", self.order)?;
        let width = (0..self.order).map(|x| self.name(x).len()).max().unwrap_or(1);
        for r in 0..self.order {
            let row: Vec<String> = self
                .row(r)
                .map(|v| format!("{:>width$}", self.name(v)))
                .collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Display for Groupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format::serialize_table(self))
    }
}
