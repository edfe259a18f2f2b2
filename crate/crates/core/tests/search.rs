mod common;

use std::time::Duration;

use common::{entry, identity_failure};
use quadlab::groupoid::format::parse_table;
use quadlab::groupoid::is_isomorphic;
use quadlab::search::enumerate::enumerate_quadratical_within;
use quadlab::search::{
    classify_affine, detect_translatable, enumerate_quadratical, spectrum_scan, write_enumeration, Existence,
};

/// Odd, and every prime `3 mod 4` divides it to an even power.
fn order_admits_affine_example(mut n: usize) -> bool {
    if n % 2 == 0 {
        return false;
    }
    let mut p = 3;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if p % 4 == 3 && e % 2 == 1 {
            return false;
        }
        p += 2;
    }
    n == 1 || n % 4 == 1
}

#[test]
fn spectrum_agrees_with_the_sum_of_two_squares_pattern() {
    for e in spectrum_scan(100).unwrap() {
        let exists = matches!(e.existence, Existence::Exists { .. });
        assert_eq!(exists, order_admits_affine_example(e.order), "order {}", e.order);
        assert!(!matches!(e.existence, Existence::Unknown), "order {}", e.order);
        if let Some(g) = &e.witness {
            assert_eq!(g.order(), e.order);
        }
    }
}

#[test]
fn affine_classes_match_exhaustive_search_beyond_thirteen() {
    for n in [17, 21] {
        let searched = enumerate_quadratical_within(n, Some(Duration::from_secs(300))).unwrap();
        assert!(searched.complete);
        let affine = classify_affine(n).unwrap();
        assert_eq!(searched.representatives, affine.representatives, "order {n}");
        assert_eq!(searched.raw_count, affine.raw_count, "order {n}");
    }
}

#[test]
fn order_thirteen_classes_are_q3_and_its_dual() {
    let reps = enumerate_quadratical(13).unwrap().representatives;
    let q3 = entry("Q3");
    assert!(reps.iter().any(|g| is_isomorphic(g, &q3)));
    assert!(reps.iter().any(|g| is_isomorphic(g, &q3.dual())));
}

#[test]
fn translatability_of_a_dual_uses_the_inverse_shift() {
    // T(q, j) = f(j - qk) transposes to f(q - jk); scaling labels by a unit
    // turns that into the shift law for k' exactly when k·k' = 1 mod n
    for name in ["Q1", "Q3", "Q4", "K", "G29"] {
        let g = entry(name);
        let n = g.order();
        let ks = detect_translatable(&g).unwrap();
        let dual: Vec<usize> = detect_translatable(&g.dual()).unwrap();
        let mirrored: Vec<usize> = ks.iter().map(|k| (1..=n).find(|j| k * j % n == 1).unwrap()).collect();
        assert_eq!(dual, mirrored, "{name}");
    }
}

#[test]
fn enumeration_output_is_readable_back() {
    let dir = std::env::temp_dir().join(format!("quadlab-enum-{}", std::process::id()));
    let r = enumerate_quadratical(5).unwrap();
    let files = write_enumeration(&r, &dir).unwrap();
    assert_eq!(files.len(), 2);
    for (f, rep) in files.iter().zip(&r.representatives) {
        let g = parse_table(&std::fs::read_to_string(f).unwrap()).unwrap();
        assert_eq!(g.table(), rep.table());
        assert_eq!(identity_failure(&g), None);
    }
    let index = std::fs::read_to_string(dir.join("index.txt")).unwrap();
    assert!(index.starts_with("order 5 count 2"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn even_and_out_of_range_orders_are_handled() {
    assert!(classify_affine(10).is_err());
    assert!(spectrum_scan(101).is_err());
    assert!(enumerate_quadratical(17).is_err() || std::env::var("QUADLAB_BUDGET_SECS").is_ok());
}
