//! One PASS/FAIL line per acceptance criterion. Every check runs even when
//! an earlier one fails; the test fails at the end if any line is FAIL.

mod common;

use std::collections::BTreeSet;
use std::io::Write;
use std::time::{Duration, Instant};

use common::invariants::{self, Check};
use common::{entry, identity_failure, permutations};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;
use quadlab::construct::completion::{complete_form_qn, symbol_names, Branch, BranchChoice};
use quadlab::groupoid::{canonical_form, is_isomorphic};
use quadlab::properties::{check_implication, holds, PropertyKind, Verdict};
use quadlab::search::{classify_affine, enumerate_quadratical, scan_translatable};
use quadlab::structure::{cycle_decomposition, detect_form_qn};
use quadlab::Groupoid;

use PropertyKind::*;

struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            failures: vec![],
            notes: vec![],
        }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn check(&mut self, result: Check) {
        if let Err(e) = result {
            self.failures.push(e);
        }
    }

    fn time_limit(&mut self, what: &str, took: Duration, limit: Duration) {
        self.notes.push(format!("{what} {took:.2?}"));
        self.require(took <= limit, format!("{what} took {took:.2?}, limit {limit:?}"));
    }
}

const SUITE_ENTRIES: [&str; 11] = [
    "Q1", "Q1_dual", "Q2", "Q3", "Q3_dual", "Q4", "Q4_dual", "K", "K_dual", "G29", "G29_dual",
];

fn identity_suite() -> Outcome {
    let mut o = Outcome::new();
    let tables: Vec<(&str, Groupoid)> = SUITE_ENTRIES.iter().map(|&n| (n, entry(n))).collect();
    let t = Instant::now();
    for (name, g) in &tables {
        if let Some(bad) = identity_failure(g) {
            o.failures.push(format!("{name}: {bad} fails"));
        }
    }
    o.time_limit("suite", t.elapsed(), Duration::from_secs(5));
    o
}

fn counts() -> Outcome {
    let mut o = Outcome::new();
    let expected = [(1, 1), (2, 0), (3, 0), (4, 0), (5, 2), (6, 0), (7, 0), (8, 0), (9, 1), (10, 0), (11, 0), (12, 0)];
    for (n, want) in expected {
        let got = enumerate_quadratical(n).unwrap().representatives.len();
        o.require(got == want, format!("order {n}: {got} classes, expected {want}"));
    }
    let t = Instant::now();
    let thirteen = enumerate_quadratical(13).unwrap();
    o.time_limit("search(13)", t.elapsed(), Duration::from_secs(60));
    o.require(thirteen.complete, "search at 13 incomplete");
    o.require(thirteen.representatives.len() == 2, format!("order 13: {} classes", thirteen.representatives.len()));
    for (n, want) in [(17, 2), (21, 0)] {
        let got = classify_affine(n).unwrap().representatives.len();
        o.require(got == want, format!("affine {n}: {got} classes, expected {want}"));
    }
    for n in [1, 5, 9, 13] {
        let a = classify_affine(n).unwrap().representatives;
        let s = enumerate_quadratical(n).unwrap().representatives;
        o.require(a == s, format!("order {n}: affine classes differ from search"));
    }
    o
}

fn completion() -> Outcome {
    let mut o = Outcome::new();
    let limit = Duration::from_secs(10);
    let mut slowest = Duration::ZERO;
    let mut run = |o: &mut Outcome, n: usize, b: Branch, want_contradiction: bool| {
        let t = Instant::now();
        let r = complete_form_qn(BranchChoice::new(n, b)).unwrap();
        let took = t.elapsed();
        slowest = slowest.max(took);
        o.require(took <= limit, format!("Q{n} {b} took {took:.2?}"));
        o.require(r.is_contradiction() == want_contradiction, format!("Q{n} {b}: wrong outcome"));
        if let Err(e) = r.replay() {
            o.failures.push(format!("Q{n} {b}: trace does not replay: {e}"));
        }
        r
    };
    let q2 = run(&mut o, 2, Branch::N2, false);
    if let Some(g) = q2.groupoid() {
        let g = g.clone().with_names(symbol_names(2)).unwrap();
        let table = entry("Q2");
        let n = g.order();
        let mut differing = 0;
        for x in 0..n {
            for y in 0..n {
                let (gx, gy) = (g.element(&table.name(x)).unwrap(), g.element(&table.name(y)).unwrap());
                if g.name(g.mul(gx, gy)) != table.name(table.mul(x, y)) {
                    differing += 1;
                }
            }
        }
        o.require(differing == 0, format!("Q2 completion differs from the printed table in {differing} cells"));
    }
    for b in [Branch::N1, Branch::N3, Branch::N4] {
        run(&mut o, 2, b, true);
    }
    for b in [Branch::N1, Branch::N2, Branch::N3, Branch::N4] {
        run(&mut o, 6, b, true);
    }
    for b in [Branch::N3, Branch::N4] {
        run(&mut o, 3, b, true);
    }
    o.notes.push(format!("slowest branch {slowest:.2?}"));
    o
}

fn translatability() -> Outcome {
    let mut o = Outcome::new();
    let expected: [(usize, &[(usize, &str)]); 6] = [
        (5, &[(2, "Q1_dual"), (3, "Q1")]),
        (9, &[]),
        (13, &[(5, "Q3"), (8, "Q3_dual")]),
        (17, &[(4, "Q4_dual"), (13, "Q4")]),
        (25, &[(7, "K"), (18, "K_dual")]),
        (29, &[(12, "G29"), (17, "G29_dual")]),
    ];
    let t = Instant::now();
    let reports: Vec<_> = expected.iter().map(|(n, _)| scan_translatable(*n).unwrap()).collect();
    o.time_limit("scans", t.elapsed(), Duration::from_secs(10));
    for ((n, want), report) in expected.iter().zip(&reports) {
        let shifts = report.shifts();
        let want_shifts: Vec<usize> = want.iter().map(|(k, _)| *k).collect();
        o.require(shifts == want_shifts, format!("order {n}: shifts {shifts:?}, expected {want_shifts:?}"));
        for ((k, g), (_, name)) in report.hits.iter().zip(want.iter()) {
            if let Some(bad) = identity_failure(g) {
                o.failures.push(format!("order {n} k={k}: {bad} fails"));
            }
            o.require(is_isomorphic(g, &entry(name)), format!("order {n} k={k} is not {name}"));
        }
    }
    o
}

fn structure() -> Outcome {
    let mut o = Outcome::new();
    for name in common::QUADRATICAL_ENTRIES {
        let g = entry(name);
        let n = g.order();
        for base in 0..n {
            let d = cycle_decomposition(&g, base).unwrap();
            o.require(d.cycles.len() == (n - 1) / 4, format!("{name} base {base}: {} cycles", d.cycles.len()));
            let mut seen = vec![false; n];
            seen[base] = true;
            for c in &d.cycles {
                let m = c.members;
                let is_cycle = (0..4).all(|i| g.mul(m[i], m[(i + 1) % 4]) == base);
                o.require(is_cycle, format!("{name} base {base}: {m:?} is not a 4-cycle"));
                for x in m {
                    o.require(!std::mem::replace(&mut seen[x], true), format!("{name} base {base}: {x} repeated"));
                }
            }
            o.require(seen.iter().all(|&s| s), format!("{name} base {base}: not a partition"));
        }
    }
    let q = entry("Q1xQ1");
    let sets: [[&str; 4]; 6] = [
        ["(a,a)", "(a,aba)", "(a,ab)", "(a,ba)"],
        ["(b,ab)", "(aba,ba)", "(ba,a)", "(ab,aba)"],
        ["(ab,b)", "(b,b)", "(aba,b)", "(ba,b)"],
        ["(ab,ab)", "(b,ba)", "(aba,a)", "(ba,aba)"],
        ["(ba,ba)", "(ab,a)", "(b,aba)", "(aba,ab)"],
        ["(aba,aba)", "(ba,ab)", "(ab,ba)", "(b,a)"],
    ];
    let want: BTreeSet<BTreeSet<usize>> = sets.iter().map(|s| s.iter().map(|x| q.el(x)).collect()).collect();
    let got: BTreeSet<BTreeSet<usize>> = cycle_decomposition(&q, q.el("(a,b)"))
        .unwrap()
        .cycles
        .iter()
        .map(|c| c.members.iter().copied().collect())
        .collect();
    o.require(got == want, "Q1xQ1 cycles on (a,b) differ from the listed sets");
    let depths: [(&str, Option<usize>); 10] = [
        ("Q1", Some(1)),
        ("Q2", Some(2)),
        ("Q3", Some(3)),
        ("Q4", Some(4)),
        ("G29", Some(7)),
        ("K", None),
        ("Q1xQ1", None),
        ("Q1xQ1dual", None),
        ("Q1dualxQ1", None),
        ("Q1dualxQ1dual", None),
    ];
    for (name, want) in depths {
        let got = detect_form_qn(&entry(name)).unwrap().map(|f| f.depth);
        o.require(got == want, format!("{name}: form {got:?}, expected {want:?}"));
    }
    o
}

fn duality() -> Outcome {
    let mut o = Outcome::new();
    let self_dual = |name: &str| {
        let g = entry(name);
        is_isomorphic(&g, &g.dual())
    };
    o.require(self_dual("Q2"), "Q2 is not self-dual");
    for name in ["Q1", "Q3", "Q4", "K", "G29"] {
        o.require(!self_dual(name), format!("{name} is self-dual"));
    }
    let dudek: Vec<Groupoid> = (1..=6).map(|i| entry(&format!("Dudek9_{i}"))).collect();
    let q2 = entry("Q2");
    for (i, g) in dudek.iter().enumerate() {
        o.require(is_isomorphic(g, &q2), format!("Dudek9_{} is not Q2", i + 1));
        for h in &dudek[i + 1..] {
            o.require(is_isomorphic(g, h), "two order-9 affine tables differ");
        }
    }
    let k = entry("K");
    for p in ["Q1xQ1", "Q1xQ1dual", "Q1dualxQ1", "Q1dualxQ1dual"] {
        o.require(!is_isomorphic(&k, &entry(p)), format!("K is isomorphic to {p}"));
    }
    o
}

/// Every table of order `n`, as a flat value list.
fn all_tables(n: usize) -> impl Iterator<Item = Groupoid> {
    let cells = n * n;
    (0..(n as u64).pow(cells as u32)).map(move |mut code| {
        let mut t = vec![0; cells];
        for c in t.iter_mut() {
            *c = (code % n as u64) as usize;
            code /= n as u64;
        }
        Groupoid::from_fn(n, |x, y| t[x * n + y]).unwrap()
    })
}

fn implications() -> Outcome {
    let mut o = Outcome::new();
    let laws: [(&[PropertyKind], &[PropertyKind]); 11] = [
        (&[LeftDistributive, RightDistributive, Bookend], &[Idempotent]),
        (&[LeftDistributive, RightDistributive, Medial, Bookend], &[LeftCancellative, RightCancellative]),
        (&[LeftDistributive, RightDistributive, Bookend], &[StronglyElastic]),
        (&[LeftCancellative, Medial, Idempotent, StronglyElastic], &[Bookend]),
        (&[RightCancellative, Medial, Idempotent, StronglyElastic], &[Bookend]),
        (&[Idempotent, Bookend, Alterable], &[Elastic]),
        (&[Elastic, Bookend], &[Idempotent]),
        (&[Elastic, Idempotent, Alterable], &[Bookend]),
        (&[Medial, Bookend], &[Alterable]),
        (&[LeftDistributive, Alterable, StronglyElastic], &[PropertyA]),
        (&[RightDistributive, Alterable, StronglyElastic], &[PropertyA]),
    ];
    let small: Vec<Groupoid> = (1..=3).flat_map(all_tables).collect();
    for (hyps, concls) in laws {
        let bad = small
            .iter()
            .find(|g| hyps.iter().all(|&p| holds(g, p)) && !concls.iter().all(|&p| holds(g, p)));
        o.require(bad.is_none(), format!("{hyps:?} => {concls:?}: exhaustive counterexample {bad:?}"));
    }
    let t = Instant::now();
    for (hyps, concls) in laws {
        let v = check_implication(hyps, concls, 4).unwrap();
        o.require(v == Verdict::NoCounterexample { max_order: 4 }, format!("{hyps:?} => {concls:?}: {v:?}"));
    }
    for concl in [Idempotent, Elastic, Medial] {
        match check_implication(&[Bookend], &[concl], 4).unwrap() {
            Verdict::Counterexample { groupoid, .. } => {
                o.require(holds(&groupoid, Bookend) && !holds(&groupoid, concl), format!("bad witness for {concl:?}"));
            }
            v => o.failures.push(format!("bookend => {concl:?}: {v:?}")),
        }
    }
    o.time_limit("order-4 sweeps", t.elapsed(), Duration::from_secs(120));
    let ex = entry("Ex2_2");
    let ok = holds(&ex, Bookend) && [Idempotent, Elastic, Medial].iter().all(|&p| !holds(&ex, p));
    o.require(ok, "Ex2_2 is not a bookend counterexample to all three");
    o
}

fn property_suites() -> Outcome {
    let mut o = Outcome::new();
    let mut runner = TestRunner::deterministic();
    for _ in 0..100 {
        let g = common::any_groupoid(7).new_tree(&mut runner).unwrap().current();
        o.check(invariants::transpose_involution(&g));
        o.check(invariants::serialization_round_trip(&g));
        let n = g.order();
        o.check(invariants::closure_monotone(&g, &[0], &[n - 1]));
        let (h, p) = common::groupoid_and_permutation(6).new_tree(&mut runner).unwrap().current();
        o.check(invariants::canonical_form_laws(&h, &p));
    }
    let q1 = entry("Q1");
    for p in permutations(5) {
        o.check(invariants::canonical_form_laws(&q1, &p));
    }
    o.require(canonical_form(&q1) != canonical_form(&q1.dual()), "Q1 and its dual share a canonical form");
    o.check(invariants::completion_confluence());
    o.check(invariants::forced_row_uniqueness(7));
    o.check(invariants::star_correspondence(&entry("Q3"), 3));
    o.check(invariants::star_correspondence(&entry("Q4"), 4));
    o
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("identity suite on the catalog", identity_suite),
        ("class counts by search and by classification", counts),
        ("completion outcomes and traces", completion),
        ("translatable shifts", translatability),
        ("4-cycles and form detection", structure),
        ("duality and isomorphism", duality),
        ("implications and counterexamples", implications),
        ("invariant suites", property_suites),
    ];
    let mut failed = vec![];
    for (i, (title, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        let status = if o.failures.is_empty() { "PASS" } else { "FAIL" };
        let notes = if o.notes.is_empty() { String::new() } else { format!(" [{}]", o.notes.join(", ")) };
        // straight to stderr so the lines survive libtest's output capture
        let mut err = std::io::stderr().lock();
        writeln!(err, "criterion {}: {status} {title} ({:.2?}){notes}", i + 1, t.elapsed()).unwrap();
        for f in &o.failures {
            writeln!(err, "    {f}").unwrap();
        }
        if !o.failures.is_empty() {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
