//! Completing a quadratical quasigroup of form Qn from its skeleton.
//!
//! The symbols are `aba` and the levels `H1, ..., Hn`, each level a 4-tuple
//! `(m1, m2, m3, m4)` with `H1 = (a, ab, ba, b)`. Indices: `11..14` are
//! `0..4`, `aba` is 4, and `mk` for `m ≥ 2` is `5 + 4(m-2) + (k-1)`.
//!
//! The starting facts are the products that hold in every quadratical
//! quasigroup of this form (the level recursion and its consequences) plus
//! the chosen value of `aba·a`. Everything else is derived by the engine in
//! [`super::partial`].

use std::fmt;
use std::str::FromStr;

use super::partial::{Brancher, Control, Engine, FewestCandidates, LogEntry, PartialTable, Replay, SearchStats};
use crate::error::{Error, Result};
use crate::groupoid::Groupoid;
use crate::properties::{self, Clause, Method, PropertyKind};

pub const ABA: usize = 4;

/// Index of the symbol `mk` (level `m ≥ 1`, position `k ∈ 1..=4`).
pub fn sym(m: usize, k: usize) -> usize {
    assert!(m >= 1 && (1..=4).contains(&k));
    if m == 1 {
        k - 1
    } else {
        5 + 4 * (m - 2) + (k - 1)
    }
}

/// Display names: `11, 12, 13, 14, aba, 21, ...` (with a dot once the level
/// has two digits).
pub fn symbol_names(n: usize) -> Vec<String> {
    let label = |m: usize, k: usize| {
        if m < 10 {
            format!("{m}{k}")
        } else {
            format!("{m}.{k}")
        }
    };
    let mut names: Vec<String> = (1..=4).map(|k| label(1, k)).collect();
    names.push("aba".into());
    for m in 2..=n {
        names.extend((1..=4).map(|k| label(m, k)));
    }
    names
}

/// Which member of `Hn` equals `aba·a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    N1,
    N2,
    N3,
    N4,
}

impl Branch {
    pub const ALL: [Branch; 4] = [Branch::N1, Branch::N2, Branch::N3, Branch::N4];

    /// Position `1..=4` within a level.
    pub fn position(self) -> usize {
        self as usize + 1
    }

    pub fn from_position(k: usize) -> Option<Branch> {
        Branch::ALL.get(k.checked_sub(1)?).copied()
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.position())
    }
}

impl FromStr for Branch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.strip_prefix('n')
            .and_then(|d| d.parse().ok())
            .and_then(Branch::from_position)
            .ok_or_else(|| Error::Precondition(format!("branch must be n1..n4, got `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BranchChoice {
    pub n: usize,
    pub target: Branch,
}

impl BranchChoice {
    pub fn new(n: usize, target: Branch) -> Self {
        BranchChoice { n, target }
    }

    pub fn order(&self) -> usize {
        4 * self.n + 1
    }
}

/// Products forced by the choice of `aba·a`, valid from depth 2 on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BranchRow {
    /// `aba·ab, aba·ba, aba·b, a·aba, ab·aba, ba·aba, b·aba` as positions in `Hn`.
    pub top: [usize; 7],
    /// `n1·n2, n2·n4, n3·n1, n4·n3` as positions in `H1`.
    pub back: [usize; 4],
    /// `11·34, 23·14, 34·14, 14·21` as positions in `Hn`.
    pub cross: [usize; 4],
    /// `(n-1)s = 11·nt = ns·11` where `t` is the branch.
    pub s: usize,
}

impl BranchRow {
    pub fn of(branch: Branch) -> BranchRow {
        match branch {
            Branch::N1 => BranchRow {
                top: [2, 3, 4, 2, 4, 1, 3],
                back: [1, 2, 3, 4],
                cross: [3, 2, 1, 1],
                s: 2,
            },
            Branch::N2 => BranchRow {
                top: [4, 1, 3, 4, 3, 2, 1],
                back: [3, 1, 4, 2],
                cross: [1, 4, 2, 2],
                s: 4,
            },
            Branch::N3 => BranchRow {
                top: [1, 4, 2, 1, 2, 3, 4],
                back: [2, 4, 1, 3],
                cross: [4, 1, 3, 3],
                s: 1,
            },
            Branch::N4 => BranchRow {
                top: [3, 2, 1, 3, 1, 4, 2],
                back: [4, 3, 2, 1],
                cross: [2, 3, 4, 4],
                s: 3,
            },
        }
    }

    /// The products `(x, y, x·y)` this row asserts at depth `n ≥ 2`, in
    /// symbol indices. Products involving level 3 are skipped when `n < 3`.
    pub fn products(&self, n: usize, branch: Branch) -> Vec<(usize, usize, usize)> {
        assert!(n >= 2);
        let h = |k: usize| sym(n, k);
        let (a, ab, ba, b) = (sym(1, 1), sym(1, 2), sym(1, 3), sym(1, 4));
        let mut out = vec![
            (ABA, ab, h(self.top[0])),
            (ABA, ba, h(self.top[1])),
            (ABA, b, h(self.top[2])),
            (a, ABA, h(self.top[3])),
            (ab, ABA, h(self.top[4])),
            (ba, ABA, h(self.top[5])),
            (b, ABA, h(self.top[6])),
            (h(1), h(2), sym(1, self.back[0])),
            (h(2), h(4), sym(1, self.back[1])),
            (h(3), h(1), sym(1, self.back[2])),
            (h(4), h(3), sym(1, self.back[3])),
            (sym(2, 3), sym(1, 4), h(self.cross[1])),
            (sym(1, 4), sym(2, 1), h(self.cross[3])),
        ];
        if n >= 3 {
            out.push((sym(1, 1), sym(3, 4), h(self.cross[0])));
            out.push((sym(3, 4), sym(1, 4), h(self.cross[2])));
        }
        let t = branch.position();
        out.push((sym(1, 1), h(t), sym(n - 1, self.s)));
        out.push((h(self.s), sym(1, 1), sym(n - 1, self.s)));
        out
    }
}

/// Knobs used by tests to check that the outcome does not depend on them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompletionOptions {
    /// Seed the products implied by the branch choice (depth ≥ 2).
    pub branch_row: bool,
    /// Apply the identity rules in reverse order.
    pub reverse_rules: bool,
}

impl Default for CompletionOptions {
    fn default() -> Self {
        CompletionOptions {
            branch_row: true,
            reverse_rules: false,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Completed(Groupoid),
    Contradiction,
}

/// The result of a completion attempt together with its full trace.
#[derive(Clone, Debug)]
pub struct CompletionRun {
    pub choice: BranchChoice,
    pub outcome: Outcome,
    pub log: Vec<LogEntry>,
    pub stats: SearchStats,
    engine: Engine,
}

impl CompletionRun {
    pub fn is_contradiction(&self) -> bool {
        matches!(self.outcome, Outcome::Contradiction)
    }

    pub fn groupoid(&self) -> Option<&Groupoid> {
        match &self.outcome {
            Outcome::Completed(g) => Some(g),
            Outcome::Contradiction => None,
        }
    }

    /// The trace in text form.
    pub fn trace(&self) -> String {
        self.engine.render_log(&self.log)
    }

    /// Re-checks the trace from scratch.
    pub fn replay(&self) -> std::result::Result<Replay, String> {
        self.engine.replay(&self.log)
    }
}

/// The rule list, cheapest first. Cancellation and solvability are built
/// into the engine as Latin constraints.
pub fn completion_clauses() -> Vec<Clause> {
    let named = |name: &str, text: &str| Clause::parse(name, text).expect("built-in clause parses");
    let mut clauses = vec![named("idempotency", "x*x = x")];
    for (name, p) in [
        ("bookend", PropertyKind::Bookend),
        ("elasticity", PropertyKind::StronglyElastic),
        ("left distributivity", PropertyKind::LeftDistributive),
        ("right distributivity", PropertyKind::RightDistributive),
        ("mediality", PropertyKind::Medial),
        ("identity8", PropertyKind::Identity8),
        ("identity9", PropertyKind::Identity9),
        ("property A", PropertyKind::PropertyA),
        ("alterability", PropertyKind::Alterable),
    ] {
        for c in p.clauses() {
            clauses.push(named(name, c.text()));
        }
    }
    let aba = [ABA];
    let constant = |name: &str, text: &str| {
        Clause::parse_with_constants(name, text, &aba).expect("built-in clause parses")
    };
    clauses.push(constant("left generation", "$0*(x*y) = ($0*x)*($0*y)"));
    clauses.push(constant("right generation", "(x*y)*$0 = (x*$0)*(y*$0)"));
    clauses
}

/// The starting facts for form `n` with the given branch.
pub fn seed_facts(choice: BranchChoice, options: CompletionOptions) -> Vec<(usize, usize, usize, &'static str)> {
    let n = choice.n;
    let s = sym;
    let mut facts = vec![
        (s(1, 1), s(1, 4), s(1, 2), "ab = a*b"),
        (s(1, 4), s(1, 1), s(1, 3), "ba = b*a"),
        (s(1, 2), s(1, 1), ABA, "aba = ab*a"),
    ];
    for m in 2..=n {
        let p = m - 1;
        facts.push((s(p, 1), s(p, 2), s(m, 1), "level recursion"));
        facts.push((s(p, 2), s(p, 4), s(m, 2), "level recursion"));
        facts.push((s(p, 3), s(p, 1), s(m, 3), "level recursion"));
        facts.push((s(p, 4), s(p, 3), s(m, 4), "level recursion"));
    }
    for m in 1..=n {
        facts.push((s(m, 1), s(m, 4), s(m, 2), "level products"));
        facts.push((s(m, 2), s(m, 3), s(m, 4), "level products"));
        facts.push((s(m, 3), s(m, 2), s(m, 1), "level products"));
        facts.push((s(m, 4), s(m, 1), s(m, 3), "level products"));
    }
    for m in 2..=n {
        let p = m - 1;
        for k in 1..=4 {
            facts.push((ABA, s(m, k), s(p, k), "aba times a level"));
        }
        facts.push((s(m, 1), ABA, s(p, 2), "a level times aba"));
        facts.push((s(m, 2), ABA, s(p, 4), "a level times aba"));
        facts.push((s(m, 3), ABA, s(p, 1), "a level times aba"));
        facts.push((s(m, 4), ABA, s(p, 3), "a level times aba"));
    }
    for m in 1..=n {
        facts.push((s(m, 1), s(m, 3), ABA, "4-cycle on aba"));
        facts.push((s(m, 2), s(m, 1), ABA, "4-cycle on aba"));
        facts.push((s(m, 3), s(m, 4), ABA, "4-cycle on aba"));
        facts.push((s(m, 4), s(m, 2), ABA, "4-cycle on aba"));
    }
    facts.push((ABA, s(1, 1), s(n, choice.target.position()), "branch choice"));
    if n >= 2 && options.branch_row {
        let row = BranchRow::of(choice.target);
        for (x, y, v) in row.products(n, choice.target) {
            facts.push((x, y, v, "branch row"));
        }
    }
    facts
}

/// Attempts to complete the form-Qn skeleton for `choice`.
pub fn complete_form_qn(choice: BranchChoice) -> Result<CompletionRun> {
    complete_form_qn_with(choice, CompletionOptions::default())
}

pub fn complete_form_qn_with(choice: BranchChoice, options: CompletionOptions) -> Result<CompletionRun> {
    if choice.n == 0 {
        return Err(Error::Precondition("form depth must be at least 1".into()));
    }
    let order = choice.order();
    if order > super::partial::MAX_ORDER {
        return Err(Error::Precondition(format!(
            "form depth {} gives order {order}, above the supported {}",
            choice.n,
            super::partial::MAX_ORDER
        )));
    }
    let mut clauses = completion_clauses();
    if options.reverse_rules {
        clauses.reverse();
    }
    let engine = Engine::new(order, clauses)
        .latin(true, true)
        .logging(true)
        .with_names(symbol_names(choice.n));
    let mut table = engine.table();
    let mut seeded = true;
    for (x, y, v, why) in seed_facts(choice, options) {
        if engine.seed(&mut table, x, y, v, why).is_err() {
            seeded = false;
            break;
        }
    }
    let names = symbol_names(choice.n);
    let mut found: Vec<Groupoid> = Vec::new();
    let stats = if seeded {
        engine.search(&mut table, &FewestCandidates as &dyn Brancher, &mut |t: &PartialTable| {
            found.push(t.to_groupoid().expect("complete table"));
            if found.len() > 1 {
                Control::Stop
            } else {
                Control::Continue
            }
        })
    } else {
        SearchStats {
            contradictions: 1,
            ..SearchStats::default()
        }
    };
    if found.len() > 1 {
        return Err(Error::AmbiguousCompletion(found.len()));
    }
    let outcome = match found.pop() {
        None => Outcome::Contradiction,
        Some(g) => {
            let g = g.with_names(names)?;
            if !properties::is_quadratical(&g, Method::All)? {
                let why = properties::quadratical_failure(&g).unwrap_or_default();
                return Err(Error::CompletionNotQuadratical(why));
            }
            Outcome::Completed(g)
        }
    };
    Ok(CompletionRun {
        choice,
        outcome,
        log: table.take_log(),
        stats,
        engine,
    })
}
