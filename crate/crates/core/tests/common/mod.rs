//! Oracles shared by the integration tests. Each one is written directly
//! from the definitions with plain loops, independent of the library's
//! property engine.

#![allow(dead_code)]

use proptest::prelude::*;
use quadlab::catalog::self_test;
use quadlab::groupoid::format::parse_table;
use quadlab::Groupoid;

pub const QUADRATICAL_ENTRIES: [&str; 15] = [
    "Q1",
    "Q1_dual",
    "Q2",
    "Q3",
    "Q3_dual",
    "Q4",
    "Q4_dual",
    "K",
    "K_dual",
    "G29",
    "G29_dual",
    "Q1xQ1",
    "Q1xQ1dual",
    "Q1dualxQ1",
    "Q1dualxQ1dual",
];

pub fn entry(name: &str) -> Groupoid {
    self_test(name).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn data_table(file: &str) -> Groupoid {
    let path = format!("{}/tests/data/{file}", env!("CARGO_MANIFEST_DIR"));
    parse_table(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Name of the first failing identity, checked over every tuple.
pub fn identity_failure(g: &Groupoid) -> Option<&'static str> {
    let n = g.order();
    let m = |x, y| g.mul(x, y);
    let all2 = |f: &dyn Fn(usize, usize) -> bool| (0..n).all(|x| (0..n).all(|y| f(x, y)));
    let all3 = |f: &dyn Fn(usize, usize, usize) -> bool| (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| f(x, y, z))));
    let all4 = |f: &dyn Fn(usize, usize, usize, usize) -> bool| {
        (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| (0..n).all(|w| f(x, y, z, w)))))
    };
    let checks: [(&str, bool); 16] = [
        ("idempotent", (0..n).all(|x| m(x, x) == x)),
        ("elastic", all2(&|x, y| m(x, m(y, x)) == m(m(x, y), x))),
        ("strongly elastic", all2(&|x, y| m(m(x, y), x) == m(m(y, x), y))),
        ("bookend", all2(&|x, y| m(m(y, x), m(x, y)) == x)),
        ("left distributive", all3(&|x, y, z| m(x, m(y, z)) == m(m(x, y), m(x, z)))),
        ("right distributive", all3(&|x, y, z| m(m(x, y), z) == m(m(x, z), m(y, z)))),
        ("medial", all4(&|x, y, z, w| m(m(x, y), m(z, w)) == m(m(x, z), m(y, w)))),
        ("identity 8", all2(&|x, y| m(x, m(y, m(y, x))) == m(m(m(x, y), x), y))),
        ("identity 9", all2(&|x, y| m(m(m(x, y), y), x) == m(y, m(x, m(y, x))))),
        ("alterable", all4(&|x, y, z, w| (m(x, y) == m(z, w)) == (m(y, z) == m(w, x)))),
        ("property A", all3(&|x, y, z| m(m(x, y), x) == m(m(z, x), m(y, z)))),
        ("nowhere commutative", all2(&|x, y| x == y || m(x, y) != m(y, x))),
        ("rows are permutations", (0..n).all(|x| is_permutation(g.row(x)))),
        ("columns are permutations", (0..n).all(|y| is_permutation(g.column(y)))),
        ("left simple", (0..n).all(|x| orbit(n, x, |z, a| m(a, z)) == n)),
        ("right simple", (0..n).all(|x| orbit(n, x, |z, a| m(z, a)) == n)),
    ];
    checks.iter().find(|(_, ok)| !ok).map(|(name, _)| *name)
}

fn is_permutation(values: impl Iterator<Item = usize>) -> bool {
    let v: Vec<usize> = values.collect();
    let mut seen = vec![false; v.len()];
    v.iter().all(|&x| x < seen.len() && !std::mem::replace(&mut seen[x], true))
}

/// Size of the smallest set containing `x` and closed under `z ↦ step(z, a)`.
fn orbit(n: usize, x: usize, step: impl Fn(usize, usize) -> usize) -> usize {
    let mut seen = vec![false; n];
    let mut stack = vec![x];
    seen[x] = true;
    while let Some(z) = stack.pop() {
        for a in 0..n {
            let w = step(z, a);
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.iter().filter(|&&s| s).count()
}

/// Every permutation of `0..n`, by insertion.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Levels of the pair `(a, b)`: `H1 = (a, ab, ba, b)` and the recursion
/// `n1 = (n-1)1·(n-1)2, n2 = (n-1)2·(n-1)4, n3 = (n-1)3·(n-1)1, n4 = (n-1)4·(n-1)3`.
pub fn levels_by_recursion(mul: &dyn Fn(usize, usize) -> usize, a: usize, b: usize, depth: usize) -> Vec<[usize; 4]> {
    let mut out = vec![[a, mul(a, b), mul(b, a), b]];
    while out.len() < depth {
        let p = *out.last().unwrap();
        out.push([mul(p[0], p[1]), mul(p[1], p[3]), mul(p[2], p[0]), mul(p[3], p[2])]);
    }
    out
}

/// Arbitrary groupoid of order 1..=max.
pub fn any_groupoid(max: usize) -> impl Strategy<Value = Groupoid> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(0..n, n * n).prop_map(move |t| Groupoid::from_fn(n, |x, y| t[x * n + y]).unwrap())
    })
}

/// A groupoid together with a permutation of its elements.
pub fn groupoid_and_permutation(max: usize) -> impl Strategy<Value = (Groupoid, Vec<usize>)> {
    any_groupoid(max).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

pub mod invariants;
