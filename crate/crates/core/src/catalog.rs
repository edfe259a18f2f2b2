//! Named groupoids: the small quadratical quasigroups and their duals and
//! products, the order-9 affine family, and a few non-quadratical examples.
//!
//! Small tables are stored literally; larger ones are rebuilt from a
//! completion branch, a translatable first row or an affine spec, and then
//! spot-checked against known cells.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::construct::affine::{build_affine, AffineSpec};
use crate::construct::completion::{complete_form_qn, symbol_names, Branch, BranchChoice, Outcome};
use crate::construct::translatable::{forced_idempotent_translatable, from_translatable, is_k_translatable, TranslatableSeed};
use crate::error::{Error, Result};
use crate::groupoid::format::parse_table;
use crate::groupoid::{is_isomorphic, Groupoid};
use crate::properties::{check, is_quadratical, Method, PropertyKind};
use crate::structure::{branch_profile, detect_form_qn};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Completion(BranchChoice),
    Translatable {
        seed: TranslatableSeed,
        names: Option<Vec<&'static str>>,
    },
    Affine {
        spec: AffineSpec,
        names: Vec<String>,
    },
    Literal(&'static str),
    Dual(&'static str),
    Product(&'static str, &'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expectation {
    Order(usize),
    Quadratical(bool),
    Property(PropertyKind, bool),
    /// `x·y = v`, by element name.
    Cell(&'static str, &'static str, &'static str),
    /// The shift law holds for `k` in the stored element order.
    ShiftLaw(usize),
    NoIdempotents,
    /// Depth found by form detection, `None` if not of form Qn.
    FormDepth(Option<usize>),
    /// Which member of the last level is `aba·a` for the given pair.
    BranchAt(&'static str, &'static str, Branch),
    IsomorphicTo(&'static str),
    /// Same table as the forced idempotent `k`-translatable table.
    ForcedTranslatable(usize),
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub source: Source,
    pub expected: Vec<Expectation>,
}

const Q1_TABLE: &str = "
5
#names: a ab ba b aba
a ba aba ab b
aba ab b a ba
b a ba aba ab
ba aba ab b a
ab b a ba aba
";

const Q2_TABLE: &str = "
9
#names: 11 12 13 14 aba 21 22 23 24
11 21 aba 12 24 13 14 22 23
aba 12 14 22 23 24 11 21 13
23 11 13 aba 22 12 24 14 21
13 aba 24 14 21 22 23 11 12
22 24 21 23 aba 11 12 13 14
24 14 23 11 12 21 13 aba 22
21 23 12 13 14 aba 22 24 11
12 13 22 24 11 14 21 23 aba
14 22 11 21 13 23 aba 12 24
";

const EX2_1_TABLE: &str = "
2
1 1
1 1
";

const EX2_2_TABLE: &str = "
4
#names: x y z w
y z w y
w x w x
y x w y
z z x z
";

const EX8_2_TABLE: &str = "
5
1 4 2 5 3
4 2 5 3 1
2 5 3 1 4
5 3 1 4 2
3 1 4 2 5
";

const EX8_3_TABLE: &str = "
5
2 1 3 4 5
1 3 4 5 2
3 4 5 2 1
4 5 2 1 3
5 2 1 3 4
";

const K_ROW: [usize; 25] = [
    1, 5, 9, 13, 17, 21, 25, 4, 8, 12, 16, 20, 24, 3, 7, 11, 15, 19, 23, 2, 6, 10, 14, 18, 22,
];

/// Element order in which the order-29 table is 12-translatable.
const G29_ORDER: [&str; 29] = [
    "11", "14", "44", "34", "42", "74", "21", "22", "64", "13", "53", "72", "63", "54", "33", "aba", "32", "51", "62",
    "73", "52", "12", "61", "23", "24", "71", "43", "31", "41",
];

/// Its first row, in the same labels.
const G29_ROW: [&str; 29] = [
    "11", "12", "54", "74", "43", "62", "53", "44", "23", "aba", "22", "41", "52", "63", "42", "71", "51", "13", "14",
    "61", "33", "21", "31", "73", "72", "34", "24", "32", "64",
];

/// The six order-9 products `(x, y)·(z, u)` over `Z3 × Z3`, as coefficients
/// of `x, y, z, u` in each coordinate.
const DUDEK: [[[i64; 4]; 2]; 6] = [
    [[0, 1, 1, 2], [1, 1, 2, 0]],
    [[0, 2, 1, 1], [2, 1, 1, 0]],
    [[1, 1, 0, 2], [1, 0, 2, 1]],
    [[1, 2, 0, 1], [2, 0, 1, 1]],
    [[2, 1, 2, 2], [2, 2, 1, 2]],
    [[2, 2, 2, 1], [1, 2, 2, 2]],
];

fn dudek_spec(i: usize) -> AffineSpec {
    let f = DUDEK[i];
    // x·y = φ(x) + (1-φ)(y): only the coefficients of the left factor matter
    AffineSpec::new(vec![3, 3], vec![vec![f[0][0], f[0][1]], vec![f[1][0], f[1][1]]])
}

fn pair_names() -> Vec<String> {
    (0..9).map(|i| format!("({},{})", i / 3, i % 3)).collect()
}

fn quadratical_basics(order: usize) -> Vec<Expectation> {
    vec![Expectation::Order(order), Expectation::Quadratical(true)]
}

fn with(mut base: Vec<Expectation>, more: impl IntoIterator<Item = Expectation>) -> Vec<Expectation> {
    base.extend(more);
    base
}

/// Every built-in entry, in a fixed order.
pub fn catalog() -> Vec<CatalogEntry> {
    use Expectation::*;
    use PropertyKind::*;
    let e = |name, description, source, expected| CatalogEntry {
        name,
        description,
        source,
        expected,
    };
    let mut out = vec![
        e(
            "Q1",
            "order 5, form Q1, on a, ab, ba, b, aba",
            Source::Literal(Q1_TABLE),
            with(quadratical_basics(5), [FormDepth(Some(1)), Cell("a", "ba", "aba"), Cell("ba", "b", "aba")]),
        ),
        e("Q1_dual", "dual of Q1", Source::Dual("Q1"), with(quadratical_basics(5), [FormDepth(Some(1))])),
        e(
            "Q2",
            "order 9, form Q2, the only order-9 class",
            Source::Literal(Q2_TABLE),
            with(
                quadratical_basics(9),
                [FormDepth(Some(2)), BranchAt("11", "14", Branch::N2), Cell("aba", "11", "22")],
            ),
        ),
        e(
            "Q3",
            "order 13, completion of form Q3 with aba·a = 31",
            Source::Completion(BranchChoice::new(3, Branch::N1)),
            with(
                quadratical_basics(13),
                [
                    FormDepth(Some(3)),
                    BranchAt("11", "14", Branch::N1),
                    Cell("11", "14", "12"),
                    Cell("aba", "21", "11"),
                    Cell("aba", "11", "31"),
                    Cell("11", "12", "21"),
                    Cell("33", "aba", "21"),
                ],
            ),
        ),
        e("Q3_dual", "dual of Q3", Source::Dual("Q3"), with(quadratical_basics(13), [FormDepth(Some(3))])),
        e(
            "Q4",
            "order 17, completion of form Q4 with aba·a = 42",
            Source::Completion(BranchChoice::new(4, Branch::N2)),
            with(
                quadratical_basics(17),
                [
                    FormDepth(Some(4)),
                    BranchAt("11", "14", Branch::N2),
                    Cell("aba", "11", "42"),
                    Cell("11", "21", "24"),
                    Cell("24", "34", "31"),
                    Cell("44", "43", "12"),
                ],
            ),
        ),
        e("Q4_dual", "dual of Q4", Source::Dual("Q4"), with(quadratical_basics(17), [FormDepth(Some(4))])),
        e(
            "K",
            "order 25, 7-translatable, not of form Qn",
            Source::Translatable {
                seed: TranslatableSeed::from_one_based(7, &K_ROW).expect("valid seed"),
                names: None,
            },
            with(quadratical_basics(25), [ShiftLaw(7), FormDepth(None), ForcedTranslatable(7)]),
        ),
        e("K_dual", "dual of K", Source::Dual("K"), with(quadratical_basics(25), [FormDepth(None)])),
        e(
            "G29",
            "order 29, 12-translatable, form Q7",
            Source::Translatable {
                seed: {
                    let row: Vec<usize> = G29_ROW
                        .iter()
                        .map(|s| G29_ORDER.iter().position(|o| o == s).expect("label in ordering"))
                        .collect();
                    TranslatableSeed::new(12, row).expect("valid seed")
                },
                names: Some(G29_ORDER.to_vec()),
            },
            with(
                quadratical_basics(29),
                [ShiftLaw(12), FormDepth(Some(7)), ForcedTranslatable(12)],
            ),
        ),
        e("G29_dual", "dual of G29", Source::Dual("G29"), with(quadratical_basics(29), [FormDepth(Some(7))])),
        e("Q1xQ1", "Q1 × Q1", Source::Product("Q1", "Q1"), with(quadratical_basics(25), [FormDepth(None)])),
        e("Q1xQ1dual", "Q1 × Q1*", Source::Product("Q1", "Q1_dual"), with(quadratical_basics(25), [FormDepth(None)])),
        e("Q1dualxQ1", "Q1* × Q1", Source::Product("Q1_dual", "Q1"), with(quadratical_basics(25), [FormDepth(None)])),
        e(
            "Q1dualxQ1dual",
            "Q1* × Q1*",
            Source::Product("Q1_dual", "Q1_dual"),
            with(quadratical_basics(25), [FormDepth(None)]),
        ),
        e(
            "Ex2_1",
            "constant product on two elements",
            Source::Literal(EX2_1_TABLE),
            vec![
                Order(2),
                Property(LeftDistributive, true),
                Property(RightDistributive, true),
                Property(Idempotent, false),
            ],
        ),
        e(
            "Ex2_2",
            "bookend groupoid of order 4 that is neither idempotent nor medial",
            Source::Literal(EX2_2_TABLE),
            vec![
                Order(4),
                Property(Bookend, true),
                Property(Idempotent, false),
                Property(Elastic, false),
                Property(Medial, false),
                Property(LeftDistributive, false),
                Property(RightDistributive, false),
                Property(Alterable, false),
                Property(LeftSolvable, false),
                Property(RightSolvable, false),
                Quadratical(false),
            ],
        ),
        e(
            "Ex8_2",
            "idempotent 4-translatable groupoid of order 5",
            Source::Literal(EX8_2_TABLE),
            vec![
                Order(5),
                ShiftLaw(4),
                Property(Idempotent, true),
                Property(Bookend, false),
                ForcedTranslatable(4),
            ],
        ),
        e(
            "Ex8_3",
            "4-translatable groupoid of order 5 without idempotents",
            Source::Literal(EX8_3_TABLE),
            vec![Order(5), ShiftLaw(4), NoIdempotents],
        ),
    ];
    const DUDEK_NAMES: [&str; 6] = ["Dudek9_1", "Dudek9_2", "Dudek9_3", "Dudek9_4", "Dudek9_5", "Dudek9_6"];
    for (i, name) in DUDEK_NAMES.into_iter().enumerate() {
        out.push(e(
            name,
            "affine quasigroup of order 9 over Z3 × Z3",
            Source::Affine {
                spec: dudek_spec(i),
                names: pair_names(),
            },
            with(
                quadratical_basics(9),
                [BranchAt("(1,1)", "(1,2)", Branch::N2), IsomorphicTo("Q2")],
            ),
        ));
    }
    out
}

pub fn catalog_names() -> Vec<&'static str> {
    catalog().into_iter().map(|e| e.name).collect()
}

pub fn catalog_entry(name: &str) -> Result<CatalogEntry> {
    catalog()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownCatalogEntry(name.to_owned()))
}

fn cache() -> &'static Mutex<HashMap<&'static str, Groupoid>> {
    static CACHE: OnceLock<Mutex<HashMap<&'static str, Groupoid>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Builds an entry from its source (memoized). Does not run the self-test.
pub fn catalog_get(name: &str) -> Result<Groupoid> {
    let entry = catalog_entry(name)?;
    if let Some(g) = cache().lock().expect("catalog cache").get(entry.name) {
        return Ok(g.clone());
    }
    let g = build(&entry.source)?;
    cache().lock().expect("catalog cache").insert(entry.name, g.clone());
    Ok(g)
}

fn build(source: &Source) -> Result<Groupoid> {
    match source {
        Source::Literal(text) => parse_table(text),
        Source::Completion(choice) => {
            let run = complete_form_qn(*choice)?;
            match run.outcome {
                Outcome::Completed(g) => g.with_names(symbol_names(choice.n)),
                Outcome::Contradiction => Err(Error::Precondition(format!(
                    "form Q{} with branch {} has no completion",
                    choice.n, choice.target
                ))),
            }
        }
        Source::Translatable { seed, names } => {
            let g = from_translatable(seed);
            match names {
                Some(names) => g.with_names(names.iter().copied()),
                None => Ok(g),
            }
        }
        Source::Affine { spec, names } => build_affine(spec)?.with_names(names.iter().cloned()),
        Source::Dual(of) => Ok(catalog_get(of)?.dual()),
        Source::Product(a, b) => Ok(catalog_get(a)?.direct_product(&catalog_get(b)?)),
    }
}

fn lookup(g: &Groupoid, token: &str) -> Result<usize> {
    g.element(token)
        .ok_or_else(|| Error::Precondition(format!("no element `{token}`")))
}

fn check_expectation(g: &Groupoid, exp: &Expectation) -> Result<()> {
    let fail = |detail: String| Err(Error::Precondition(detail));
    match *exp {
        Expectation::Order(n) => {
            if g.order() != n {
                return fail(format!("order {} instead of {n}", g.order()));
            }
        }
        Expectation::Quadratical(want) => {
            if is_quadratical(g, Method::All)? != want {
                return fail(format!("quadratical is not {want}"));
            }
        }
        Expectation::Property(p, want) => {
            let got = check(g, p);
            if got.is_ok() != want {
                let why = got.err().map(|w| format!(": {}", w.describe(g))).unwrap_or_default();
                return fail(format!("{p} should be {want}{why}"));
            }
        }
        Expectation::Cell(x, y, v) => {
            let (x, y, v) = (lookup(g, x)?, lookup(g, y)?, lookup(g, v)?);
            if g.mul(x, y) != v {
                return fail(format!(
                    "{}·{} is {}, expected {}",
                    g.name(x),
                    g.name(y),
                    g.name(g.mul(x, y)),
                    g.name(v)
                ));
            }
        }
        Expectation::ShiftLaw(k) => {
            if !is_k_translatable(g, k) {
                return fail(format!("not {k}-translatable in stored order"));
            }
        }
        Expectation::NoIdempotents => {
            if let Some(x) = (0..g.order()).find(|&x| g.mul(x, x) == x) {
                return fail(format!("{} is idempotent", g.name(x)));
            }
        }
        Expectation::FormDepth(want) => {
            let got = detect_form_qn(g)?.map(|f| f.depth);
            if got != want {
                return fail(format!("form depth {got:?}, expected {want:?}"));
            }
        }
        Expectation::BranchAt(a, b, want) => {
            let got = branch_profile(g, lookup(g, a)?, lookup(g, b)?)?.branch;
            if got != want {
                return fail(format!("branch {got}, expected {want}"));
            }
        }
        Expectation::IsomorphicTo(other) => {
            if !is_isomorphic(g, &catalog_get(other)?) {
                return fail(format!("not isomorphic to {other}"));
            }
        }
        Expectation::ForcedTranslatable(k) => {
            let same = forced_idempotent_translatable(g.order(), k).is_some_and(|t| t.table() == g.table());
            if !same {
                return fail(format!("differs from the forced {k}-translatable table"));
            }
        }
    }
    Ok(())
}

/// Builds the entry and checks every expectation.
pub fn self_test(name: &str) -> Result<Groupoid> {
    let entry = catalog_entry(name)?;
    let g = catalog_get(name)?;
    for exp in &entry.expected {
        check_expectation(&g, exp).map_err(|e| Error::CatalogSelfTest {
            entry: entry.name.to_owned(),
            detail: e.to_string(),
        })?;
    }
    Ok(g)
}

/// Resolves `catalog:NAME` to a built-in entry, or reads a table file.
pub fn load(spec: &str) -> Result<Groupoid> {
    match spec.strip_prefix("catalog:") {
        Some(name) => catalog_get(name),
        None => {
            let text = std::fs::read_to_string(spec)?;
            parse_table(&text)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let mut names = catalog_names();
        let n = names.len();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), n);
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(catalog_get("nope"), Err(Error::UnknownCatalogEntry(_))));
        assert!(load("catalog:nope").is_err());
    }

    #[test]
    fn small_entries_pass_self_test() {
        for name in ["Q1", "Q1_dual", "Q2", "Ex2_1", "Ex2_2", "Ex8_2", "Ex8_3", "Dudek9_1"] {
            self_test(name).unwrap();
        }
    }
}
