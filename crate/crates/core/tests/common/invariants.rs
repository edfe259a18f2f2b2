//! Invariant checks returning a description of the first failure. Used by
//! the property tests and, on fixed inputs, by the acceptance run.

use quadlab::construct::completion::{complete_form_qn_with, Branch, BranchChoice, CompletionOptions};
use quadlab::construct::translatable::forced_idempotent_translatable;
use quadlab::groupoid::format::{parse_table, serialize_table};
use quadlab::groupoid::{canonical_form, is_isomorphic};
use quadlab::structure::star_elements;
use quadlab::Groupoid;

use super::levels_by_recursion;

pub type Check = Result<(), String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

pub fn transpose_involution(g: &Groupoid) -> Check {
    let d = g.dual();
    let n = g.order();
    for x in 0..n {
        for y in 0..n {
            ensure(d.mul(x, y) == g.mul(y, x), || format!("dual({x},{y}) is not g({y},{x})"))?;
        }
    }
    ensure(d.dual() == *g, || "dual of dual differs".into())
}

pub fn serialization_round_trip(g: &Groupoid) -> Check {
    let text = serialize_table(g);
    let back = parse_table(&text).map_err(|e| format!("reparse failed: {e}\n{text}"))?;
    ensure(back.table() == g.table(), || format!("table changed:\n{text}"))?;
    let named = g.clone().with_names((0..g.order()).map(|i| format!("e{i}"))).unwrap();
    let back = parse_table(&serialize_table(&named)).map_err(|e| e.to_string())?;
    ensure(back == named, || "named table changed".into())
}

pub fn canonical_form_laws(g: &Groupoid, perm: &[usize]) -> Check {
    let c = canonical_form(g);
    ensure(canonical_form(&c).table() == c.table(), || "canonical form is not idempotent".into())?;
    ensure(canonical_form(&g.relabel(perm)).table() == c.table(), || {
        format!("canonical form changes under relabeling {perm:?}")
    })?;
    ensure(is_isomorphic(g, &c), || "canonical form is not isomorphic to the input".into())
}

pub fn closure_monotone(g: &Groupoid, small: &[usize], extra: &[usize]) -> Check {
    let n = g.order();
    let a = g.generated_subgroupoid(small);
    let mut bigger = small.to_vec();
    bigger.extend_from_slice(extra);
    let b = g.generated_subgroupoid(&bigger);
    ensure(small.iter().all(|s| a.contains(s)), || "closure misses a seed".into())?;
    ensure(a.iter().all(|x| b.contains(x)), || "closure is not monotone".into())?;
    ensure(g.generated_subgroupoid(&a) == a, || "closure is not idempotent".into())?;
    let closed = a.iter().all(|&x| a.iter().all(|&y| a.contains(&g.mul(x, y))));
    ensure(closed && a.iter().all(|&x| x < n), || "closure is not closed".into())
}

/// Completion outcome at depths 1..=4 does not depend on branch-row seeding
/// or rule order.
pub fn completion_confluence() -> Check {
    let variants = [
        CompletionOptions::default(),
        CompletionOptions {
            branch_row: false,
            reverse_rules: false,
        },
        CompletionOptions {
            branch_row: true,
            reverse_rules: true,
        },
        CompletionOptions {
            branch_row: false,
            reverse_rules: true,
        },
    ];
    for n in 1..=4 {
        for k in 1..=4 {
            let choice = BranchChoice::new(n, Branch::from_position(k).unwrap());
            let outcomes: Vec<Option<Vec<usize>>> = variants
                .iter()
                .map(|&o| {
                    let run = complete_form_qn_with(choice, o).map_err(|e| e.to_string())?;
                    run.replay().map_err(|e| format!("Q{n} n{k}: {e}"))?;
                    Ok(run.groupoid().map(|g| g.table()))
                })
                .collect::<Result<_, String>>()?;
            ensure(outcomes.windows(2).all(|w| w[0] == w[1]), || format!("Q{n} n{k}: outcomes differ"))?;
        }
    }
    Ok(())
}

/// For every order up to `max`, counts idempotent `k`-translatable tables by
/// trying every first row, and compares with the forced table.
pub fn forced_row_uniqueness(max: usize) -> Check {
    for n in 1..=max {
        for k in 1..=n {
            let mut found: Vec<Vec<usize>> = vec![];
            let mut row = vec![0; n];
            loop {
                // row q is row 0 moved k places right per step
                if (0..n).all(|q| row[(q + n * n - q * k % n) % n] == q) {
                    found.push(row.clone());
                }
                let mut i = 0;
                while i < n && row[i] == n - 1 {
                    row[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
                row[i] += 1;
            }
            ensure(found.len() <= 1, || format!("n={n} k={k}: {} idempotent tables", found.len()))?;
            let forced = forced_idempotent_translatable(n, k);
            let same = match (&forced, found.first()) {
                (None, None) => true,
                (Some(g), Some(r)) => g.row(0).collect::<Vec<_>>() == *r,
                _ => false,
            };
            ensure(same, || format!("n={n} k={k}: forced table disagrees with exhaustive search"))?;
        }
    }
    Ok(())
}

/// `star[m-1][k-1] = j` where the dual's level element `mk` is the
/// original's `mj`, for levels 1..4 (then repeating with period 4).
pub const STAR_TABLE: [[usize; 4]; 4] = [[1, 3, 2, 4], [3, 4, 1, 2], [4, 2, 3, 1], [2, 1, 4, 3]];

/// Levels in the dual agree with the starred positions of the levels in
/// `g`, for every pair of distinct elements, and the library agrees.
pub fn star_correspondence(g: &Groupoid, depth: usize) -> Check {
    let n = g.order();
    let d = |x: usize, y: usize| g.mul(y, x);
    let m = |x: usize, y: usize| g.mul(x, y);
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let plain = levels_by_recursion(&m, a, b, depth);
            let starred = levels_by_recursion(&d, a, b, depth);
            for (i, (p, s)) in plain.iter().zip(&starred).enumerate() {
                for k in 0..4 {
                    let j = STAR_TABLE[i % 4][k];
                    ensure(s[k] == p[j - 1], || format!("pair ({a},{b}) level {}: position {}", i + 1, k + 1))?;
                }
            }
            let lib = star_elements(g, a, b, depth).map_err(|e| e.to_string())?;
            ensure(lib == starred, || format!("pair ({a},{b}): library starred levels differ"))?;
        }
    }
    Ok(())
}
