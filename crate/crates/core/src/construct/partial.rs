//! Partial Cayley tables and the propagation engine that fills them.
//!
//! The engine knows a list of [`Clause`]s and optional Latin constraints on
//! rows and columns. Whenever a cell becomes known it looks for every clause
//! instance that mentions the cell, and if one side of an instance is known
//! while the other side is a single unknown cell with known operands, that
//! cell is forced. Two known sides that differ are a contradiction. Latin
//! constraints add the usual naked-single and hidden-single rules. When
//! nothing more can be deduced, [`Engine::search`] splits on a cell.
//!
//! Every assignment can be logged together with the rule instance that
//! produced it, and [`Engine::replay`] re-checks such a log from scratch.

use std::fmt::Write as _;
use std::time::Instant;

use crate::groupoid::Groupoid;
use crate::properties::clause::{Clause, Node};

pub const MAX_ORDER: usize = 64;
const UNKNOWN: u8 = u8::MAX;
const UNBOUND: usize = usize::MAX;
const MAX_VARS: usize = 8;
const MAX_NODES: usize = 48;

pub type Cell = (usize, usize);

/// Why a cell received its value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reason {
    /// Part of the starting data.
    Seed(String),
    /// An instance of clause number `clause` under `binding`.
    Clause { clause: usize, binding: Vec<usize> },
    /// Every other value already occurs in the cell's row or column.
    NakedSingle,
    /// The value must occur in this row (column) and no other cell can take it.
    HiddenSingle(Line),
    /// A case split.
    Case,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Line {
    Row(usize),
    Col(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deduction {
    pub cell: Cell,
    pub value: usize,
    pub reason: Reason,
    /// Known cells `(row, col, value)` the reason relies on.
    pub premises: Vec<(usize, usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conflict {
    /// A clause instance whose two sides are known and differ; `cell` is the
    /// outermost product on the left side (or right side if the left is a
    /// bare element).
    Clash {
        cell: Cell,
        left: usize,
        right: usize,
        clause: usize,
        binding: Vec<usize>,
        premises: Vec<(usize, usize, usize)>,
    },
    /// A rule would put `value` into `cell`, which the Latin constraints
    /// forbid because `value` already sits at `other` (or `cell` already
    /// holds something else).
    Rejected {
        deduction: Deduction,
        other: (usize, usize, usize),
    },
    /// No value is left for `cell`.
    NoValue { cell: Cell },
    /// `value` cannot be placed anywhere in `line`.
    MissingValue { line: Line, value: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LogEntry {
    Fact(Deduction),
    CaseStart { cell: Cell, value: usize },
    Contradiction(Conflict),
    /// Every admissible value of `cell` was tried and refuted.
    CasesExhausted { cell: Cell },
    /// The current case produced a complete table.
    Completed,
    /// Closes the innermost open case.
    CaseEnd,
}

/// A Cayley table under construction.
#[derive(Clone, Debug)]
pub struct PartialTable {
    n: usize,
    cells: Vec<u8>,
    cand: Vec<u64>,
    by_value: Vec<Vec<u16>>,
    queue: Vec<u16>,
    head: usize,
    known: usize,
    started: bool,
    log: Vec<LogEntry>,
}

impl PartialTable {
    pub fn new(n: usize) -> Self {
        assert!((1..=MAX_ORDER).contains(&n), "order {n} outside 1..={MAX_ORDER}");
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        PartialTable {
            n,
            cells: vec![UNKNOWN; n * n],
            cand: vec![all; n * n],
            by_value: vec![Vec::new(); n],
            queue: Vec::new(),
            head: 0,
            known: 0,
            started: false,
            log: Vec::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Option<usize> {
        let v = self.cells[r * self.n + c];
        (v != UNKNOWN).then_some(v as usize)
    }

    /// Bitmask of values still admissible at `(r, c)`.
    pub fn candidates(&self, r: usize, c: usize) -> u64 {
        self.cand[r * self.n + c]
    }

    pub fn known_count(&self) -> usize {
        self.known
    }

    pub fn is_complete(&self) -> bool {
        self.known == self.n * self.n
    }

    pub fn log(&self) -> &[LogEntry] {
        &self.log
    }

    pub fn take_log(&mut self) -> Vec<LogEntry> {
        std::mem::take(&mut self.log)
    }

    pub fn to_groupoid(&self) -> Option<Groupoid> {
        if !self.is_complete() {
            return None;
        }
        Groupoid::from_table(self.n, self.cells.iter().map(|&v| v as usize).collect()).ok()
    }
}

/// Chooses the cell and values to split on once propagation stalls.
pub trait Brancher {
    /// `None` when the table is complete.
    fn branch(&self, t: &PartialTable) -> Option<(Cell, Vec<usize>)>;
}

/// Splits on the unknown cell with the fewest candidates, trying each
/// candidate in increasing order.
pub struct FewestCandidates;

impl Brancher for FewestCandidates {
    fn branch(&self, t: &PartialTable) -> Option<(Cell, Vec<usize>)> {
        let n = t.n;
        let idx = (0..n * n)
            .filter(|&i| t.cells[i] == UNKNOWN)
            .min_by_key(|&i| t.cand[i].count_ones())?;
        Some(((idx / n, idx % n), bits(t.cand[idx]).collect()))
    }
}

pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

/// What the visitor wants after seeing a complete table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Control {
    Continue,
    Stop,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub contradictions: u64,
    pub leaves: u64,
    pub stopped: bool,
    /// The deadline passed before the search finished.
    pub timed_out: bool,
}

#[derive(Clone, Copy)]
enum Val {
    Known(usize),
    Open(usize),
    Unknown,
}

/// Clause set plus Latin flags; shared by all tables it works on.
#[derive(Clone, Debug)]
pub struct Engine {
    n: usize,
    clauses: Vec<Clause>,
    latin_rows: bool,
    latin_cols: bool,
    logging: bool,
    names: Vec<String>,
}

impl Engine {
    pub fn new(n: usize, clauses: Vec<Clause>) -> Self {
        assert!((1..=MAX_ORDER).contains(&n));
        for c in &clauses {
            assert!(c.var_count() <= MAX_VARS && c.nodes().len() <= MAX_NODES);
        }
        Engine {
            n,
            clauses,
            latin_rows: false,
            latin_cols: false,
            logging: false,
            names: (1..=n).map(|i| i.to_string()).collect(),
        }
    }

    pub fn latin(mut self, rows: bool, cols: bool) -> Self {
        self.latin_rows = rows;
        self.latin_cols = cols;
        self
    }

    pub fn logging(mut self, on: bool) -> Self {
        self.logging = on;
        self
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.n);
        self.names = names;
        self
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> PartialTable {
        PartialTable::new(self.n)
    }

    /// Places a starting value.
    pub fn seed(&self, t: &mut PartialTable, r: usize, c: usize, v: usize, why: &str) -> Result<(), Conflict> {
        self.assign(
            t,
            Deduction {
                cell: (r, c),
                value: v,
                reason: Reason::Seed(why.to_owned()),
                premises: vec![],
            },
        )
    }

    fn assign(&self, t: &mut PartialTable, d: Deduction) -> Result<(), Conflict> {
        let n = self.n;
        let (r, c) = d.cell;
        let v = d.value;
        let idx = r * n + c;
        let current = t.cells[idx];
        if current != UNKNOWN {
            if current as usize == v {
                return Ok(());
            }
            return Err(self.reject(t, d, (r, c, current as usize)));
        }
        if t.cand[idx] & (1 << v) == 0 {
            let other = self.holder(t, r, c, v).expect("excluded value has a holder");
            return Err(self.reject(t, d, other));
        }
        t.cells[idx] = v as u8;
        t.cand[idx] = 1 << v;
        t.by_value[v].push(idx as u16);
        t.queue.push(idx as u16);
        t.known += 1;
        if self.latin_rows {
            for j in 0..n {
                if j != c {
                    t.cand[r * n + j] &= !(1 << v);
                }
            }
        }
        if self.latin_cols {
            for i in 0..n {
                if i != r {
                    t.cand[i * n + c] &= !(1 << v);
                }
            }
        }
        if self.logging && d.reason != Reason::Case {
            t.log.push(LogEntry::Fact(d));
        }
        Ok(())
    }

    fn reject(&self, t: &mut PartialTable, d: Deduction, other: (usize, usize, usize)) -> Conflict {
        let conflict = Conflict::Rejected { deduction: d, other };
        if self.logging {
            t.log.push(LogEntry::Contradiction(conflict.clone()));
        }
        conflict
    }

    fn conflict(&self, t: &mut PartialTable, c: Conflict) -> Conflict {
        if self.logging {
            t.log.push(LogEntry::Contradiction(c.clone()));
        }
        c
    }

    /// A known cell in the row or column of `(r, c)` holding `v`.
    fn holder(&self, t: &PartialTable, r: usize, c: usize, v: usize) -> Option<(usize, usize, usize)> {
        let n = self.n;
        if self.latin_rows {
            if let Some(j) = (0..n).find(|&j| j != c && t.cells[r * n + j] as usize == v) {
                return Some((r, j, v));
            }
        }
        if self.latin_cols {
            if let Some(i) = (0..n).find(|&i| i != r && t.cells[i * n + c] as usize == v) {
                return Some((i, c, v));
            }
        }
        None
    }

    /// Runs all rules to a fixpoint.
    pub fn propagate(&self, t: &mut PartialTable) -> Result<(), Conflict> {
        if !t.started {
            t.started = true;
            for ci in 0..self.clauses.len() {
                let mut binding = [UNBOUND; MAX_VARS];
                self.enumerate_free(t, ci, &mut binding, 0)?;
            }
        }
        loop {
            while t.head < t.queue.len() {
                let idx = t.queue[t.head] as usize;
                t.head += 1;
                self.trigger(t, idx)?;
            }
            if !self.singles(t)? {
                return Ok(());
            }
        }
    }

    fn trigger(&self, t: &mut PartialTable, idx: usize) -> Result<(), Conflict> {
        let (r, c) = (idx / self.n, idx % self.n);
        let mut goals = Vec::with_capacity(8);
        for (ci, clause) in self.clauses.iter().enumerate() {
            for node in clause.nodes() {
                if let Node::Mul(a, b) = *node {
                    let mut binding = [UNBOUND; MAX_VARS];
                    goals.clear();
                    goals.push((b, c));
                    goals.push((a, r));
                    self.solve(t, ci, &mut goals, &mut binding)?;
                }
            }
        }
        Ok(())
    }

    /// Finds bindings under which each `(node, value)` goal evaluates to
    /// its value using known cells, then examines every completion of them.
    fn solve(
        &self,
        t: &mut PartialTable,
        ci: usize,
        goals: &mut Vec<(usize, usize)>,
        binding: &mut [usize; MAX_VARS],
    ) -> Result<(), Conflict> {
        let Some((node, val)) = goals.pop() else {
            return self.enumerate_free(t, ci, binding, 0);
        };
        let nodes = self.clauses[ci].nodes();
        match nodes[node] {
            Node::Var(i) => {
                if binding[i] == UNBOUND {
                    binding[i] = val;
                    self.solve(t, ci, goals, binding)?;
                    binding[i] = UNBOUND;
                } else if binding[i] == val {
                    self.solve(t, ci, goals, binding)?;
                }
            }
            Node::Const(e) => {
                if e == val {
                    self.solve(t, ci, goals, binding)?;
                }
            }
            Node::Mul(a, b) => {
                let len = t.by_value[val].len();
                for k in 0..len {
                    let cell = t.by_value[val][k] as usize;
                    goals.push((b, cell % self.n));
                    goals.push((a, cell / self.n));
                    self.solve(t, ci, goals, binding)?;
                    goals.pop();
                    goals.pop();
                }
            }
        }
        goals.push((node, val));
        Ok(())
    }

    fn enumerate_free(
        &self,
        t: &mut PartialTable,
        ci: usize,
        binding: &mut [usize; MAX_VARS],
        from: usize,
    ) -> Result<(), Conflict> {
        let k = self.clauses[ci].var_count();
        match (from..k).find(|&i| binding[i] == UNBOUND) {
            None => self.examine(t, ci, &binding[..k]),
            Some(i) => {
                for v in 0..self.n {
                    binding[i] = v;
                    self.enumerate_free(t, ci, binding, i + 1)?;
                }
                binding[i] = UNBOUND;
                Ok(())
            }
        }
    }

    fn evaluate(&self, t: &PartialTable, ci: usize, binding: &[usize], vals: &mut [Val; MAX_NODES]) {
        let n = self.n;
        for (i, node) in self.clauses[ci].nodes().iter().enumerate() {
            vals[i] = match *node {
                Node::Var(v) => Val::Known(binding[v]),
                Node::Const(e) => Val::Known(e),
                Node::Mul(a, b) => match (vals[a], vals[b]) {
                    (Val::Known(p), Val::Known(q)) => {
                        let idx = p * n + q;
                        match t.cells[idx] {
                            UNKNOWN => Val::Open(idx),
                            v => Val::Known(v as usize),
                        }
                    }
                    _ => Val::Unknown,
                },
            };
        }
    }

    fn examine(&self, t: &mut PartialTable, ci: usize, binding: &[usize]) -> Result<(), Conflict> {
        let mut vals = [Val::Unknown; MAX_NODES];
        self.evaluate(t, ci, binding, &mut vals);
        let clause = &self.clauses[ci];
        for &(l, r) in clause.premises() {
            match (vals[l], vals[r]) {
                (Val::Known(x), Val::Known(y)) if x == y => {}
                _ => return Ok(()),
            }
        }
        let (l, r) = clause.conclusion();
        match (vals[l], vals[r]) {
            (Val::Known(x), Val::Known(y)) if x != y => {
                let nodes = clause.nodes();
                // a clash between two variables is blamed on the first premise
                let top = [l, r]
                    .into_iter()
                    .chain(clause.premises().iter().map(|&(pl, _)| pl))
                    .find(|&i| matches!(nodes[i], Node::Mul(..)))
                    .expect("a clause mentions some product");
                let cell = self.node_cell(ci, top, binding, t);
                let c = Conflict::Clash {
                    cell,
                    left: x,
                    right: y,
                    clause: ci,
                    binding: binding.to_vec(),
                    premises: self.premises(t, ci, &vals, binding),
                };
                Err(self.conflict(t, c))
            }
            (Val::Known(v), Val::Open(idx)) | (Val::Open(idx), Val::Known(v)) => {
                let premises = if self.logging {
                    self.premises(t, ci, &vals, binding)
                } else {
                    Vec::new()
                };
                self.assign(
                    t,
                    Deduction {
                        cell: (idx / self.n, idx % self.n),
                        value: v,
                        reason: Reason::Clause {
                            clause: ci,
                            binding: binding.to_vec(),
                        },
                        premises,
                    },
                )
            }
            _ => Ok(()),
        }
    }

    fn node_cell(&self, ci: usize, node: usize, binding: &[usize], t: &PartialTable) -> Cell {
        let mut vals = [Val::Unknown; MAX_NODES];
        self.evaluate(t, ci, binding, &mut vals);
        let nodes = self.clauses[ci].nodes();
        match nodes[node] {
            Node::Mul(a, b) => match (vals[a], vals[b]) {
                (Val::Known(p), Val::Known(q)) => (p, q),
                _ => unreachable!("known product has known operands"),
            },
            _ => unreachable!("node is a product"),
        }
    }

    fn premises(&self, t: &PartialTable, ci: usize, vals: &[Val; MAX_NODES], _binding: &[usize]) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (i, node) in self.clauses[ci].nodes().iter().enumerate() {
            if let (Node::Mul(a, b), Val::Known(v)) = (*node, vals[i]) {
                if let (Val::Known(p), Val::Known(q)) = (vals[a], vals[b]) {
                    debug_assert_eq!(t.get(p, q), Some(v));
                    if !out.contains(&(p, q, v)) {
                        out.push((p, q, v));
                    }
                }
            }
        }
        out
    }

    /// Applies one naked or hidden single. Returns whether anything changed.
    fn singles(&self, t: &mut PartialTable) -> Result<bool, Conflict> {
        if !self.latin_rows && !self.latin_cols {
            return Ok(false);
        }
        let n = self.n;
        for idx in 0..n * n {
            if t.cells[idx] != UNKNOWN {
                continue;
            }
            let (r, c) = (idx / n, idx % n);
            match t.cand[idx].count_ones() {
                0 => return Err(self.conflict(t, Conflict::NoValue { cell: (r, c) })),
                1 => {
                    let v = t.cand[idx].trailing_zeros() as usize;
                    let premises = if self.logging {
                        (0..n)
                            .filter(|&u| u != v)
                            .map(|u| self.holder(t, r, c, u).expect("excluded value has a holder"))
                            .collect()
                    } else {
                        Vec::new()
                    };
                    self.assign(
                        t,
                        Deduction {
                            cell: (r, c),
                            value: v,
                            reason: Reason::NakedSingle,
                            premises,
                        },
                    )?;
                    return Ok(true);
                }
                _ => {}
            }
        }
        let lines = (0..n)
            .filter(|_| self.latin_rows)
            .map(Line::Row)
            .chain((0..n).filter(|_| self.latin_cols).map(Line::Col));
        for line in lines {
            let cells: Vec<usize> = match line {
                Line::Row(r) => (0..n).map(|j| r * n + j).collect(),
                Line::Col(c) => (0..n).map(|i| i * n + c).collect(),
            };
            let mut present = 0u64;
            for &i in &cells {
                if t.cells[i] != UNKNOWN {
                    present |= 1 << t.cells[i];
                }
            }
            for v in 0..n {
                if present & (1 << v) != 0 {
                    continue;
                }
                let mut spots = cells.iter().filter(|&&i| t.cells[i] == UNKNOWN && t.cand[i] & (1 << v) != 0);
                let Some(&first) = spots.next() else {
                    return Err(self.conflict(t, Conflict::MissingValue { line, value: v }));
                };
                if spots.next().is_some() {
                    continue;
                }
                let premises = if self.logging {
                    cells
                        .iter()
                        .filter(|&&i| i != first)
                        .map(|&i| match t.cells[i] {
                            UNKNOWN => self
                                .holder(t, i / n, i % n, v)
                                .expect("excluded value has a holder"),
                            w => (i / n, i % n, w as usize),
                        })
                        .collect()
                } else {
                    Vec::new()
                };
                self.assign(
                    t,
                    Deduction {
                        cell: (first / n, first % n),
                        value: v,
                        reason: Reason::HiddenSingle(line),
                        premises,
                    },
                )?;
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Depth-first search: propagate, then split with `brancher`, calling
    /// `visit` on every complete table. The table's log (when logging) ends
    /// up holding the whole search tree.
    pub fn search(
        &self,
        t: &mut PartialTable,
        brancher: &dyn Brancher,
        visit: &mut dyn FnMut(&PartialTable) -> Control,
    ) -> SearchStats {
        self.search_until(t, brancher, visit, None)
    }

    /// [`Engine::search`] that gives up once `deadline` passes, setting
    /// `timed_out` (and `stopped`) in the returned stats.
    pub fn search_until(
        &self,
        t: &mut PartialTable,
        brancher: &dyn Brancher,
        visit: &mut dyn FnMut(&PartialTable) -> Control,
        deadline: Option<Instant>,
    ) -> SearchStats {
        let mut stats = SearchStats::default();
        self.search_inner(t, brancher, visit, &mut stats, deadline);
        stats
    }

    /// Returns true when the subtree was refuted entirely.
    fn search_inner(
        &self,
        t: &mut PartialTable,
        brancher: &dyn Brancher,
        visit: &mut dyn FnMut(&PartialTable) -> Control,
        stats: &mut SearchStats,
        deadline: Option<Instant>,
    ) -> bool {
        stats.nodes += 1;
        if deadline.is_some_and(|d| Instant::now() >= d) {
            stats.stopped = true;
            stats.timed_out = true;
            return false;
        }
        if self.propagate(t).is_err() {
            stats.contradictions += 1;
            return true;
        }
        let Some((cell, values)) = brancher.branch(t) else {
            stats.leaves += 1;
            if self.logging {
                t.log.push(LogEntry::Completed);
            }
            if visit(t) == Control::Stop {
                stats.stopped = true;
            }
            return false;
        };
        let mut refuted = true;
        for v in values {
            if stats.stopped {
                return false;
            }
            let mut child = t.clone();
            child.log.clear();
            if self.logging {
                child.log.push(LogEntry::CaseStart { cell, value: v });
            }
            let d = Deduction {
                cell,
                value: v,
                reason: Reason::Case,
                premises: vec![],
            };
            let sub_refuted = match self.assign(&mut child, d) {
                Ok(()) => self.search_inner(&mut child, brancher, visit, stats, deadline),
                Err(_) => {
                    stats.contradictions += 1;
                    true
                }
            };
            refuted &= sub_refuted;
            if self.logging {
                t.log.append(&mut child.log);
                t.log.push(LogEntry::CaseEnd);
            }
        }
        if refuted && self.logging && !stats.stopped {
            t.log.push(LogEntry::CasesExhausted { cell });
        }
        refuted
    }

    fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    fn cell_text(&self, (r, c): Cell) -> String {
        format!("({},{})", self.name(r), self.name(c))
    }

    fn premise_text(&self, premises: &[(usize, usize, usize)]) -> String {
        if premises.is_empty() {
            return "-".into();
        }
        premises
            .iter()
            .map(|&(r, c, v)| format!("({},{})={}", self.name(r), self.name(c), self.name(v)))
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn instance_text(&self, ci: usize, binding: &[usize]) -> String {
        let clause = &self.clauses[ci];
        let vars: Vec<String> = binding
            .iter()
            .enumerate()
            .map(|(i, &v)| format!("{}={}", clause.var_name(i), self.name(v)))
            .collect();
        format!("{}[{}]", clause.name(), vars.join(","))
    }

    fn reason_text(&self, reason: &Reason) -> String {
        match reason {
            Reason::Seed(why) => format!("seed {why}"),
            Reason::Clause { clause, binding } => self.instance_text(*clause, binding),
            Reason::NakedSingle => "cancellation".into(),
            Reason::HiddenSingle(Line::Row(r)) => format!("solvability in row {}", self.name(*r)),
            Reason::HiddenSingle(Line::Col(c)) => format!("solvability in column {}", self.name(*c)),
            Reason::Case => "case".into(),
        }
    }

    /// Renders a log in the line-oriented trace format.
    pub fn render_log(&self, log: &[LogEntry]) -> String {
        let mut out = String::new();
        let mut depth = 0usize;
        for entry in log {
            let pad = "  ".repeat(depth);
            match entry {
                LogEntry::Fact(d) => {
                    let _ = writeln!(
                        out,
                        "{pad}cell {} := {} BY {} FROM {}",
                        self.cell_text(d.cell),
                        self.name(d.value),
                        self.reason_text(&d.reason),
                        self.premise_text(&d.premises)
                    );
                }
                LogEntry::CaseStart { cell, value } => {
                    let _ = writeln!(out, "{pad}CASE {} := {}", self.cell_text(*cell), self.name(*value));
                    depth += 1;
                }
                LogEntry::Contradiction(c) => {
                    let _ = writeln!(out, "{pad}{}", self.conflict_text(c));
                }
                LogEntry::CasesExhausted { cell } => {
                    let _ = writeln!(
                        out,
                        "{pad}CONTRADICTION at {}: every admissible value refuted",
                        self.cell_text(*cell)
                    );
                }
                LogEntry::Completed => {
                    let _ = writeln!(out, "{pad}COMPLETE");
                }
                LogEntry::CaseEnd => {
                    depth = depth.saturating_sub(1);
                }
            }
        }
        out
    }

    fn conflict_text(&self, c: &Conflict) -> String {
        match c {
            Conflict::Clash {
                cell,
                left,
                right,
                clause,
                binding,
                premises,
            } => format!(
                "CONTRADICTION at {}: {} ≠ {} BY {} FROM {}",
                self.cell_text(*cell),
                self.name(*left),
                self.name(*right),
                self.instance_text(*clause, binding),
                self.premise_text(premises)
            ),
            Conflict::Rejected { deduction, other } => {
                let (r, c, v) = *other;
                let existing = if (r, c) == deduction.cell {
                    format!("it holds {}", self.name(v))
                } else {
                    format!("{} already sits at ({},{})", self.name(v), self.name(r), self.name(c))
                };
                format!(
                    "CONTRADICTION at {}: {} ≠ {} BY {} FROM {}; {existing}",
                    self.cell_text(deduction.cell),
                    self.name(deduction.value),
                    self.name(v),
                    self.reason_text(&deduction.reason),
                    self.premise_text(&deduction.premises)
                )
            }
            Conflict::NoValue { cell } => {
                format!("CONTRADICTION at {}: no admissible value BY cancellation", self.cell_text(*cell))
            }
            Conflict::MissingValue { line, value } => {
                let where_ = match line {
                    Line::Row(r) => format!("row {}", self.name(*r)),
                    Line::Col(c) => format!("column {}", self.name(*c)),
                };
                format!(
                    "CONTRADICTION in {where_}: no cell can hold {} BY solvability",
                    self.name(*value)
                )
            }
        }
    }

    /// Re-checks a logged search from scratch. Each fact must follow from
    /// earlier facts by its stated rule, each contradiction must be real in
    /// the table where it is reported, and each exhausted split must have
    /// tried every admissible value. Returns the completed tables.
    pub fn replay(&self, log: &[LogEntry]) -> Result<Replay, String> {
        let n = self.n;
        struct Frame {
            cells: Vec<Option<usize>>,
            // (value, refuted) for each closed case of this frame's split
            tried: Vec<(usize, bool)>,
            split: Option<(Cell, u64)>,
            closed: bool,
            refuted: bool,
        }
        let frame = |cells: Vec<Option<usize>>| Frame {
            cells,
            tried: vec![],
            split: None,
            closed: false,
            refuted: false,
        };
        let mut stack = vec![frame(vec![None; n * n])];
        let mut completed = Vec::new();
        for (pos, entry) in log.iter().enumerate() {
            let err = |msg: &str| format!("entry {pos}: {msg}");
            let top = stack.last_mut().expect("root frame");
            if top.closed && *entry != LogEntry::CaseEnd {
                return Err(err("entry after the case was closed"));
            }
            match entry {
                LogEntry::Fact(d) => {
                    self.check_fact(&top.cells, d).map_err(|e| err(&e))?;
                    top.cells[d.cell.0 * n + d.cell.1] = Some(d.value);
                }
                LogEntry::CaseStart { cell, value } => {
                    let mask = self.admissible(&top.cells, *cell);
                    if top.cells[cell.0 * n + cell.1].is_some() || mask & (1 << value) == 0 {
                        return Err(err("case value is not admissible"));
                    }
                    match top.split {
                        Some((c, _)) if c != *cell => return Err(err("split changes cell")),
                        _ => top.split = Some((*cell, mask)),
                    }
                    let mut cells = top.cells.clone();
                    cells[cell.0 * n + cell.1] = Some(*value);
                    stack.push(frame(cells));
                }
                LogEntry::Contradiction(c) => {
                    self.check_conflict(&top.cells, c).map_err(|e| err(&e))?;
                    top.closed = true;
                    top.refuted = true;
                }
                LogEntry::CasesExhausted { cell } => {
                    let Some((c, mask)) = top.split else {
                        return Err(err("no split to exhaust"));
                    };
                    if c != *cell {
                        return Err(err("exhausted cell differs from split cell"));
                    }
                    let tried = top.tried.iter().fold(0u64, |m, &(v, _)| m | 1 << v);
                    if tried != mask || !top.tried.iter().all(|&(_, refuted)| refuted) {
                        return Err(err("not every admissible value was refuted"));
                    }
                    top.closed = true;
                    top.refuted = true;
                }
                LogEntry::Completed => {
                    if top.cells.iter().any(Option::is_none) {
                        return Err(err("table marked complete has unknown cells"));
                    }
                    let table: Vec<usize> = top.cells.iter().map(|v| v.unwrap()).collect();
                    completed.push(Groupoid::from_table(n, table).map_err(|e| err(&e.to_string()))?);
                    top.closed = true;
                }
                LogEntry::CaseEnd => {
                    if stack.len() == 1 {
                        return Err(err("case end without a case"));
                    }
                    let child = stack.pop().unwrap();
                    let parent = stack.last_mut().unwrap();
                    let value = child.cells[parent.split.unwrap().0 .0 * n + parent.split.unwrap().0 .1]
                        .expect("case cell assigned");
                    parent.tried.push((value, child.refuted));
                }
            }
        }
        if stack.len() != 1 {
            return Err("log ends inside an open case".into());
        }
        Ok(Replay {
            refuted: stack[0].refuted,
            completed,
        })
    }

    /// Values not yet excluded at `cell` by the Latin constraints.
    fn admissible(&self, cells: &[Option<usize>], (r, c): Cell) -> u64 {
        let n = self.n;
        if let Some(v) = cells[r * n + c] {
            return 1 << v;
        }
        let mut mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        for k in 0..n {
            if self.latin_rows {
                if let Some(v) = cells[r * n + k] {
                    mask &= !(1 << v);
                }
            }
            if self.latin_cols {
                if let Some(v) = cells[k * n + c] {
                    mask &= !(1 << v);
                }
            }
        }
        mask
    }

    fn check_premises(&self, cells: &[Option<usize>], premises: &[(usize, usize, usize)]) -> Result<(), String> {
        for &(r, c, v) in premises {
            if cells[r * self.n + c] != Some(v) {
                return Err(format!("premise ({r},{c})={v} is not established"));
            }
        }
        Ok(())
    }

    fn eval_replay(&self, cells: &[Option<usize>], ci: usize, binding: &[usize]) -> Vec<Result<usize, Option<usize>>> {
        // Ok(v): known value; Err(Some(idx)): single open cell; Err(None): unknown
        let n = self.n;
        let mut vals: Vec<Result<usize, Option<usize>>> = Vec::new();
        for node in self.clauses[ci].nodes() {
            let v = match *node {
                Node::Var(i) => Ok(binding[i]),
                Node::Const(e) => Ok(e),
                Node::Mul(a, b) => match (vals[a], vals[b]) {
                    (Ok(p), Ok(q)) => cells[p * n + q].ok_or(Some(p * n + q)),
                    _ => Err(None),
                },
            };
            vals.push(v);
        }
        vals
    }

    fn check_fact(&self, cells: &[Option<usize>], d: &Deduction) -> Result<(), String> {
        let n = self.n;
        let (r, c) = d.cell;
        if cells[r * n + c].is_some() {
            return Err(format!("cell ({r},{c}) assigned twice"));
        }
        self.check_premises(cells, &d.premises)?;
        match &d.reason {
            Reason::Seed(_) => Ok(()),
            Reason::Case => Err("case assignment outside a case split".into()),
            Reason::Clause { clause, binding } => {
                let vals = self.eval_replay(cells, *clause, binding);
                let cl = &self.clauses[*clause];
                for &(a, b) in cl.premises() {
                    match (vals[a], vals[b]) {
                        (Ok(x), Ok(y)) if x == y => {}
                        _ => return Err("clause premise not satisfied".into()),
                    }
                }
                let (a, b) = cl.conclusion();
                let target = Err(Some(r * n + c));
                let forced = (vals[a] == Ok(d.value) && vals[b] == target)
                    || (vals[b] == Ok(d.value) && vals[a] == target);
                if forced {
                    Ok(())
                } else {
                    Err(format!("clause instance does not force ({r},{c})={}", d.value))
                }
            }
            Reason::NakedSingle => {
                if self.admissible(cells, d.cell) == 1 << d.value {
                    Ok(())
                } else {
                    Err("naked single is not the only admissible value".into())
                }
            }
            Reason::HiddenSingle(line) => {
                let others: Vec<Cell> = match *line {
                    Line::Row(row) if row == r => (0..n).filter(|&j| j != c).map(|j| (r, j)).collect(),
                    Line::Col(col) if col == c => (0..n).filter(|&i| i != r).map(|i| (i, c)).collect(),
                    _ => return Err("hidden single outside its line".into()),
                };
                let ok = match line {
                    Line::Row(_) => self.latin_rows,
                    Line::Col(_) => self.latin_cols,
                } && others
                    .iter()
                    .all(|&cell| self.admissible(cells, cell) & (1 << d.value) == 0);
                if ok && self.admissible(cells, d.cell) & (1 << d.value) != 0 {
                    Ok(())
                } else {
                    Err("hidden single has another place in its line".into())
                }
            }
        }
    }

    fn check_conflict(&self, cells: &[Option<usize>], c: &Conflict) -> Result<(), String> {
        let n = self.n;
        match c {
            Conflict::Clash {
                left,
                right,
                clause,
                binding,
                premises,
                ..
            } => {
                self.check_premises(cells, premises)?;
                let vals = self.eval_replay(cells, *clause, binding);
                let cl = &self.clauses[*clause];
                for &(a, b) in cl.premises() {
                    match (vals[a], vals[b]) {
                        (Ok(x), Ok(y)) if x == y => {}
                        _ => return Err("clause premise not satisfied".into()),
                    }
                }
                let (a, b) = cl.conclusion();
                if vals[a] == Ok(*left) && vals[b] == Ok(*right) && left != right {
                    Ok(())
                } else {
                    Err("clash does not evaluate as recorded".into())
                }
            }
            Conflict::Rejected { deduction, other } => {
                let (r, c) = deduction.cell;
                // the deduction itself must be valid as if the cell were open
                let mut relaxed = cells.to_vec();
                relaxed[r * n + c] = None;
                match deduction.reason {
                    Reason::Clause { .. } => self.check_fact(&relaxed, deduction)?,
                    Reason::Seed(_) | Reason::Case => self.check_premises(cells, &deduction.premises)?,
                    _ => return Err("only clauses and seeds can be rejected".into()),
                }
                let (or, oc, ov) = *other;
                if cells[or * n + oc] != Some(ov) {
                    return Err("rejecting cell not established".into());
                }
                let same_cell = (or, oc) == (r, c) && ov != deduction.value;
                let same_row = self.latin_rows && or == r && oc != c && ov == deduction.value;
                let same_col = self.latin_cols && oc == c && or != r && ov == deduction.value;
                if same_cell || same_row || same_col {
                    Ok(())
                } else {
                    Err("rejection is not a Latin conflict".into())
                }
            }
            Conflict::NoValue { cell } => {
                if cells[cell.0 * n + cell.1].is_none() && self.admissible(cells, *cell) == 0 {
                    Ok(())
                } else {
                    Err("cell still has an admissible value".into())
                }
            }
            Conflict::MissingValue { line, value } => {
                let (ok_side, line_cells): (bool, Vec<Cell>) = match *line {
                    Line::Row(r) => (self.latin_rows, (0..n).map(|j| (r, j)).collect()),
                    Line::Col(c) => (self.latin_cols, (0..n).map(|i| (i, c)).collect()),
                };
                let impossible = line_cells.iter().all(|&cell| {
                    cells[cell.0 * n + cell.1] != Some(*value)
                        && (cells[cell.0 * n + cell.1].is_some()
                            || self.admissible(cells, cell) & (1 << value) == 0)
                });
                if ok_side && impossible {
                    Ok(())
                } else {
                    Err("value still has a place in its line".into())
                }
            }
        }
    }
}

/// Outcome of [`Engine::replay`].
#[derive(Clone, Debug)]
pub struct Replay {
    pub refuted: bool,
    pub completed: Vec<Groupoid>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::properties::PropertyKind;

    fn quadratical_engine(n: usize) -> Engine {
        let clauses = PropertyKind::QUADRATICAL_IDENTITIES
            .iter()
            .flat_map(|p| p.clauses())
            .collect();
        Engine::new(n, clauses).latin(true, true).logging(true)
    }

    #[test]
    fn idempotency_fills_the_diagonal() {
        let e = Engine::new(4, PropertyKind::Idempotent.clauses());
        let mut t = e.table();
        e.propagate(&mut t).unwrap();
        for i in 0..4 {
            assert_eq!(t.get(i, i), Some(i));
        }
        assert_eq!(t.known_count(), 4);
    }

    #[test]
    fn order_five_from_one_product() {
        // 12 labeled quadratical tables of order 5 (two classes, each with
        // 20 automorphisms); fixing 0·1 = 2 keeps a third of them
        let e = quadratical_engine(5);
        let mut t = e.table();
        e.seed(&mut t, 0, 1, 2, "start").unwrap();
        let mut found = Vec::new();
        e.search(&mut t, &FewestCandidates, &mut |t| {
            found.push(t.to_groupoid().unwrap());
            Control::Continue
        });
        assert_eq!(found.len(), 4);
        for g in &found {
            assert!(crate::properties::is_quadratical(g, crate::properties::Method::All).unwrap());
        }
        let mut classes: Vec<_> = found.iter().map(crate::groupoid::canonical_form).collect();
        classes.sort_by_key(|g| g.table());
        classes.dedup();
        assert_eq!(classes.len(), 2);
        let replay = e.replay(t.log()).unwrap();
        assert!(!replay.refuted);
        assert_eq!(replay.completed, found);
    }

    #[test]
    fn order_three_is_refuted_with_valid_log() {
        let e = quadratical_engine(3);
        let mut t = e.table();
        let stats = e.search(&mut t, &FewestCandidates, &mut |_| Control::Continue);
        assert_eq!(stats.leaves, 0);
        let replay = e.replay(t.log()).unwrap();
        assert!(replay.refuted);
        assert!(e.render_log(t.log()).contains("CONTRADICTION"));
    }

    #[test]
    fn replay_rejects_tampered_log() {
        let e = quadratical_engine(3);
        let mut t = e.table();
        e.search(&mut t, &FewestCandidates, &mut |_| Control::Continue);
        let mut log = t.log().to_vec();
        let pos = log
            .iter()
            .position(|x| matches!(x, LogEntry::Fact(d) if matches!(d.reason, Reason::Clause { .. })))
            .unwrap();
        if let LogEntry::Fact(d) = &mut log[pos] {
            d.value = (d.value + 1) % 3;
        }
        assert!(e.replay(&log).is_err());
    }

    #[test]
    fn seed_conflict_is_reported() {
        let e = Engine::new(3, vec![]).latin(true, true);
        let mut t = e.table();
        e.seed(&mut t, 0, 0, 1, "a").unwrap();
        assert!(matches!(e.seed(&mut t, 0, 1, 1, "b"), Err(Conflict::Rejected { .. })));
    }
}
