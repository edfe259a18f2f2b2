mod common;

use common::invariants::STAR_TABLE;
use common::{data_table, entry, identity_failure, QUADRATICAL_ENTRIES};
use quadlab::catalog::{catalog_names, load, self_test};
use quadlab::construct::completion::{complete_form_qn, symbol_names, Branch, BranchChoice};
use quadlab::groupoid::is_isomorphic;
use quadlab::Groupoid;

#[test]
fn every_entry_passes_its_self_test() {
    for name in catalog_names() {
        self_test(name).unwrap_or_else(|e| panic!("{e}"));
    }
}

#[test]
fn quadratical_entries_satisfy_every_identity() {
    for name in QUADRATICAL_ENTRIES {
        assert_eq!(identity_failure(&entry(name)), None, "{name}");
    }
}

/// Cells where `g` and `h` disagree, matching elements by name.
fn differing_cells(g: &Groupoid, h: &Groupoid) -> Vec<(String, String)> {
    let n = g.order();
    let mut out = vec![];
    for x in 0..n {
        for y in 0..n {
            let (hx, hy) = (h.el(&g.name(x)), h.el(&g.name(y)));
            if g.name(g.mul(x, y)) != h.name(h.mul(hx, hy)) {
                out.push((g.name(x), g.name(y)));
            }
        }
    }
    out
}

#[test]
fn q4_matches_the_printed_table() {
    assert!(differing_cells(&entry("Q4"), &data_table("q4_transcribed.tbl")).is_empty());
}

#[test]
fn q3_differs_from_the_printed_table_only_where_that_table_is_not_latin() {
    let printed = data_table("q3_transcribed.tbl");
    let mut diff = differing_cells(&entry("Q3"), &printed);
    diff.sort();
    let want: Vec<(String, String)> = [("12", "31"), ("12", "32"), ("21", "aba"), ("22", "aba"), ("23", "aba"), ("24", "aba")]
        .iter()
        .map(|(x, y)| (x.to_string(), y.to_string()))
        .collect();
    assert_eq!(diff, want);
    assert!(identity_failure(&printed).is_some());
}

#[test]
fn printed_dual_of_q4_follows_the_star_labels() {
    // a label mk in the printed dual denotes (mk)*, which is the element mj of Q4
    let printed = data_table("q4_dual_transcribed.tbl");
    let q4 = entry("Q4");
    let relabeled: Vec<String> = (0..printed.order())
        .map(|x| {
            let name = printed.name(x);
            match name.as_bytes() {
                [m, k] => {
                    let (m, k) = ((m - b'0') as usize, (k - b'0') as usize);
                    format!("{m}{}", STAR_TABLE[(m - 1) % 4][k - 1])
                }
                _ => name,
            }
        })
        .collect();
    let printed = printed.with_names(relabeled).unwrap();
    assert!(differing_cells(&q4.dual(), &printed).is_empty());
}

#[test]
fn other_completions_are_the_duals() {
    for (n, branch, of) in [(3, Branch::N2, "Q3"), (4, Branch::N3, "Q4")] {
        let run = complete_form_qn(BranchChoice::new(n, branch)).unwrap();
        let g = run.groupoid().expect("completes");
        assert!(is_isomorphic(g, &entry(of).dual()), "Q{n} {branch}");
        assert!(!is_isomorphic(g, &entry(of)), "Q{n} {branch}");
    }
}

#[test]
fn order_29_entry_is_a_depth_seven_completion() {
    let g29 = entry("G29");
    let completed: Vec<Groupoid> = [Branch::N1, Branch::N2, Branch::N3, Branch::N4]
        .into_iter()
        .filter_map(|b| {
            let run = complete_form_qn(BranchChoice::new(7, b)).unwrap();
            run.replay().unwrap();
            run.groupoid().cloned()
        })
        .collect();
    assert_eq!(completed.len(), 2);
    assert!(completed.iter().any(|g| is_isomorphic(g, &g29)));
    assert!(completed.iter().any(|g| is_isomorphic(g, &g29.dual())));
}

#[test]
fn completion_names_match_the_catalog() {
    let q2 = complete_form_qn(BranchChoice::new(2, Branch::N2)).unwrap();
    let g = q2.groupoid().unwrap().clone().with_names(symbol_names(2)).unwrap();
    assert!(differing_cells(&g, &entry("Q2")).is_empty());
}

#[test]
fn mixed_products_are_two_generated_by_the_listed_pairs() {
    let q = entry("Q1xQ1dual");
    assert_eq!(q.generated_subgroupoid(&[q.el("(a,ba)"), q.el("(ab,b)")]).len(), 25);
    let q = entry("Q1dualxQ1");
    assert_eq!(q.generated_subgroupoid(&[q.el("(ba,a)"), q.el("(b,ab)")]).len(), 25);
    assert!(!entry("Q1xQ1").is_two_generated());
    assert!(!entry("Q1dualxQ1dual").is_two_generated());
}

#[test]
fn dual_of_a_product_is_the_product_of_duals() {
    let pq = entry("Q1xQ1").dual();
    assert_eq!(pq.table(), entry("Q1dualxQ1dual").table());
    assert_eq!(entry("Q1xQ1dual").dual().table(), entry("Q1dualxQ1").table());
}

#[test]
fn every_cycle_in_q1_squared_is_a_copy_of_q1() {
    let q = entry("Q1xQ1");
    let q1 = entry("Q1");
    for c in quadlab::structure::cycle_decomposition(&q, q.el("(a,b)")).unwrap().cycles {
        let mut members = c.member_set();
        members.push(q.el("(a,b)"));
        let sub = q.restrict(&members).expect("cycle and base are closed");
        assert!(is_isomorphic(&sub, &q1));
        assert!(q.generated_subgroupoid(&members[..2]).len() < 25);
    }
}

#[test]
fn load_reads_catalog_names_and_files() {
    assert_eq!(load("catalog:Q1").unwrap(), entry("Q1"));
    let path = format!("{}/tests/data/q4_transcribed.tbl", env!("CARGO_MANIFEST_DIR"));
    assert_eq!(load(&path).unwrap().order(), 17);
}
