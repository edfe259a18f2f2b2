//! Decision procedures for the identities and structural properties of a
//! finite groupoid, plus the bundle of equivalent ways to recognise a
//! quadratical quasigroup.

pub mod clause;
pub mod implication;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::groupoid::Groupoid;

pub use clause::Clause;
pub use implication::{check_implication, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PropertyKind {
    Idempotent,
    Elastic,
    StronglyElastic,
    Bookend,
    LeftDistributive,
    RightDistributive,
    Medial,
    Identity8,
    Identity9,
    Alterable,
    PropertyA,
    LeftCancellative,
    RightCancellative,
    LeftSolvable,
    RightSolvable,
    Quasigroup,
    NowhereCommutative,
    LeftSimple,
    RightSimple,
    Simple,
}

use PropertyKind::*;

impl PropertyKind {
    pub const ALL: [PropertyKind; 20] = [
        Idempotent,
        Elastic,
        StronglyElastic,
        Bookend,
        LeftDistributive,
        RightDistributive,
        Medial,
        Identity8,
        Identity9,
        Alterable,
        PropertyA,
        LeftCancellative,
        RightCancellative,
        LeftSolvable,
        RightSolvable,
        Quasigroup,
        NowhereCommutative,
        LeftSimple,
        RightSimple,
        Simple,
    ];

    /// The identities that every quadratical quasigroup satisfies.
    pub const QUADRATICAL_IDENTITIES: [PropertyKind; 11] = [
        Idempotent,
        Elastic,
        StronglyElastic,
        Bookend,
        LeftDistributive,
        RightDistributive,
        Medial,
        Identity8,
        Identity9,
        Alterable,
        PropertyA,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Idempotent => "idempotent",
            Elastic => "elastic",
            StronglyElastic => "strongly_elastic",
            Bookend => "bookend",
            LeftDistributive => "left_distributive",
            RightDistributive => "right_distributive",
            Medial => "medial",
            Identity8 => "identity8",
            Identity9 => "identity9",
            Alterable => "alterable",
            PropertyA => "property_A",
            LeftCancellative => "left_cancellative",
            RightCancellative => "right_cancellative",
            LeftSolvable => "left_solvable",
            RightSolvable => "right_solvable",
            Quasigroup => "quasigroup",
            NowhereCommutative => "nowhere_commutative",
            LeftSimple => "left_simple",
            RightSimple => "right_simple",
            Simple => "simple",
        }
    }

    /// The defining condition as text, with `·` written `*`.
    pub fn condition(self) -> &'static str {
        match self {
            Idempotent => "x*x = x",
            Elastic => "x*(y*x) = (x*y)*x",
            StronglyElastic => "x*(y*x) = (x*y)*x = (y*x)*y",
            Bookend => "(y*x)*(x*y) = x",
            LeftDistributive => "x*(y*z) = (x*y)*(x*z)",
            RightDistributive => "(x*y)*z = (x*z)*(y*z)",
            Medial => "(x*y)*(z*w) = (x*z)*(y*w)",
            Identity8 => "x*(y*(y*x)) = ((x*y)*x)*y",
            Identity9 => "((x*y)*y)*x = y*(x*(y*x))",
            Alterable => "x*y = z*w <=> y*z = w*x",
            PropertyA => "(x*y)*x = (z*x)*(y*z)",
            LeftCancellative => "x*y = x*z => y = z",
            RightCancellative => "y*x = z*x => y = z",
            LeftSolvable => "x*a = b has a unique solution x",
            RightSolvable => "a*x = b has a unique solution x",
            Quasigroup => "left and right solvable",
            NowhereCommutative => "x*y = y*x => x = y",
            LeftSimple => "no proper left ideal",
            RightSimple => "no proper right ideal",
            Simple => "no proper two-sided ideal",
        }
    }

    /// Equational clauses expressing the property, for the propagation engine.
    /// Empty for properties that are not universally quantified implications
    /// between equations (solvability, simplicity).
    pub fn clauses(self) -> Vec<Clause> {
        let c = |text: &str| Clause::parse(self.tag(), text).expect("built-in clause parses");
        match self {
            Idempotent => vec![c("x*x = x")],
            Elastic => vec![c("x*(y*x) = (x*y)*x")],
            StronglyElastic => vec![c("x*(y*x) = (x*y)*x"), c("(x*y)*x = (y*x)*y")],
            Bookend => vec![c("(y*x)*(x*y) = x")],
            LeftDistributive => vec![c("x*(y*z) = (x*y)*(x*z)")],
            RightDistributive => vec![c("(x*y)*z = (x*z)*(y*z)")],
            Medial => vec![c("(x*y)*(z*w) = (x*z)*(y*w)")],
            Identity8 => vec![c("x*(y*(y*x)) = ((x*y)*x)*y")],
            Identity9 => vec![c("((x*y)*y)*x = y*(x*(y*x))")],
            Alterable => vec![c("x*y = z*w => y*z = w*x"), c("y*z = w*x => x*y = z*w")],
            PropertyA => vec![c("(x*y)*x = (z*x)*(y*z)")],
            LeftCancellative => vec![c("x*y = x*z => y = z")],
            RightCancellative => vec![c("y*x = z*x => y = z")],
            NowhereCommutative => vec![c("x*y = y*x => x = y")],
            LeftSolvable | RightSolvable | Quasigroup | LeftSimple | RightSimple | Simple => vec![],
        }
    }

    /// The property `q` such that `g` has `self` iff the dual of `g` has `q`.
    /// `None` for property A, whose mirror image is not in the list.
    pub fn dual(self) -> Option<PropertyKind> {
        Some(match self {
            LeftDistributive => RightDistributive,
            RightDistributive => LeftDistributive,
            LeftCancellative => RightCancellative,
            RightCancellative => LeftCancellative,
            LeftSolvable => RightSolvable,
            RightSolvable => LeftSolvable,
            LeftSimple => RightSimple,
            RightSimple => LeftSimple,
            Identity8 => Identity9,
            Identity9 => Identity8,
            PropertyA => return None,
            other => other,
        })
    }
}

impl fmt::Display for PropertyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for PropertyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PropertyKind::ALL
            .into_iter()
            .find(|p| p.tag() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown property `{s}`")))
    }
}

/// A concrete failure of a property.
///
/// For equational properties `assignment` binds the variables in order of
/// first appearance in [`PropertyKind::condition`] and `lhs ≠ rhs` are the two
/// sides. Cancellation, solvability and commutativity failures report the
/// two distinct elements that should have coincided; simplicity failures
/// report the generating element (`lhs`) and an element its ideal misses
/// (`rhs`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub property: PropertyKind,
    pub assignment: Vec<usize>,
    pub lhs: usize,
    pub rhs: usize,
}

impl Witness {
    fn new(property: PropertyKind, assignment: &[usize], lhs: usize, rhs: usize) -> Self {
        Witness {
            property,
            assignment: assignment.to_vec(),
            lhs,
            rhs,
        }
    }

    /// Human-readable description using the groupoid's element names.
    pub fn describe(&self, g: &Groupoid) -> String {
        let names: Vec<String> = self.assignment.iter().map(|&v| g.name(v)).collect();
        let (l, r) = (g.name(self.lhs), g.name(self.rhs));
        match self.property {
            LeftSolvable | RightSolvable | Quasigroup => {
                let eq = if self.property == LeftSolvable {
                    format!("x*{} = {}", names[0], names[1])
                } else {
                    format!("{}*x = {}", names[0], names[1])
                };
                format!("{}: {eq} is solved by both x={l} and x={r}", self.property)
            }
            LeftSimple | RightSimple | Simple => {
                format!("{}: the ideal generated by {l} misses {r}", self.property)
            }
            LeftCancellative | RightCancellative | NowhereCommutative => {
                let vars = ["x", "y", "z"];
                let binding: Vec<String> = names
                    .iter()
                    .zip(vars)
                    .map(|(n, v)| format!("{v}={n}"))
                    .collect();
                format!("{}: {} but {l} ≠ {r}", self.property, binding.join(", "))
            }
            _ => {
                let vars = ["x", "y", "z", "w"];
                let binding: Vec<String> = names
                    .iter()
                    .zip(vars)
                    .map(|(n, v)| format!("{v}={n}"))
                    .collect();
                format!(
                    "{} ({}): at {} the sides are {l} ≠ {r}",
                    self.property,
                    self.property.condition(),
                    binding.join(", ")
                )
            }
        }
    }
}

/// Checks `p` over all of `g`, returning a witness on failure.
pub fn check(g: &Groupoid, p: PropertyKind) -> std::result::Result<(), Witness> {
    let n = g.order();
    let m = |x: usize, y: usize| g.mul(x, y);
    let fail = |a: &[usize], l: usize, r: usize| Err(Witness::new(p, a, l, r));
    match p {
        Idempotent => {
            for x in 0..n {
                if m(x, x) != x {
                    return fail(&[x], m(x, x), x);
                }
            }
        }
        Elastic | StronglyElastic => {
            for x in 0..n {
                for y in 0..n {
                    let l = m(x, m(y, x));
                    let r = m(m(x, y), x);
                    if l != r {
                        return fail(&[x, y], l, r);
                    }
                    let s = m(m(y, x), y);
                    if p == StronglyElastic && r != s {
                        return fail(&[x, y], r, s);
                    }
                }
            }
        }
        Bookend => {
            for x in 0..n {
                for y in 0..n {
                    let l = m(m(y, x), m(x, y));
                    if l != x {
                        return fail(&[y, x], l, x);
                    }
                }
            }
        }
        LeftDistributive | RightDistributive | PropertyA => {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let (l, r) = match p {
                            LeftDistributive => (m(x, m(y, z)), m(m(x, y), m(x, z))),
                            RightDistributive => (m(m(x, y), z), m(m(x, z), m(y, z))),
                            _ => (m(m(x, y), x), m(m(z, x), m(y, z))),
                        };
                        if l != r {
                            return fail(&[x, y, z], l, r);
                        }
                    }
                }
            }
        }
        Medial => {
            for x in 0..n {
                for y in 0..n {
                    let xy = m(x, y);
                    for z in 0..n {
                        let xz = m(x, z);
                        for w in 0..n {
                            let l = m(xy, m(z, w));
                            let r = m(xz, m(y, w));
                            if l != r {
                                return fail(&[x, y, z, w], l, r);
                            }
                        }
                    }
                }
            }
        }
        Identity8 | Identity9 => {
            for x in 0..n {
                for y in 0..n {
                    let (l, r) = if p == Identity8 {
                        (m(x, m(y, m(y, x))), m(m(m(x, y), x), y))
                    } else {
                        (m(m(m(x, y), y), x), m(y, m(x, m(y, x))))
                    };
                    if l != r {
                        return fail(&[x, y], l, r);
                    }
                }
            }
        }
        Alterable => {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        for w in 0..n {
                            let first = m(x, y) == m(z, w);
                            let second = m(y, z) == m(w, x);
                            if first && !second {
                                return fail(&[x, y, z, w], m(y, z), m(w, x));
                            }
                            if second && !first {
                                return fail(&[x, y, z, w], m(x, y), m(z, w));
                            }
                        }
                    }
                }
            }
        }
        LeftCancellative | RightCancellative => {
            for x in 0..n {
                for y in 0..n {
                    for z in y + 1..n {
                        let same = if p == LeftCancellative {
                            m(x, y) == m(x, z)
                        } else {
                            m(y, x) == m(z, x)
                        };
                        if same {
                            return fail(&[x, y, z], y, z);
                        }
                    }
                }
            }
        }
        RightSolvable | LeftSolvable => {
            for a in 0..n {
                let mut seen = vec![usize::MAX; n];
                for x in 0..n {
                    let b = if p == RightSolvable { m(a, x) } else { m(x, a) };
                    if seen[b] != usize::MAX {
                        return fail(&[a, b], seen[b], x);
                    }
                    seen[b] = x;
                }
            }
        }
        Quasigroup => {
            for side in [RightSolvable, LeftSolvable] {
                check(g, side).map_err(|w| Witness { property: side, ..w })?;
            }
        }
        NowhereCommutative => {
            for x in 0..n {
                for y in x + 1..n {
                    if m(x, y) == m(y, x) {
                        return fail(&[x, y], x, y);
                    }
                }
            }
        }
        LeftSimple | RightSimple | Simple => {
            for i in 0..n {
                let ideal = principal_ideal(g, i, p != LeftSimple, p != RightSimple);
                if let Some(missing) = ideal.iter().position(|&inside| !inside) {
                    return fail(&[i], i, missing);
                }
            }
        }
    }
    Ok(())
}

/// True iff `p` holds on `g`.
pub fn holds(g: &Groupoid, p: PropertyKind) -> bool {
    check(g, p).is_ok()
}

/// Membership vector of the smallest one- or two-sided ideal containing `i`.
fn principal_ideal(g: &Groupoid, i: usize, right: bool, left: bool) -> Vec<bool> {
    let n = g.order();
    let mut inside = vec![false; n];
    inside[i] = true;
    let mut stack = vec![i];
    while let Some(x) = stack.pop() {
        for h in 0..n {
            let mut reach = |v: usize| {
                if !inside[v] {
                    inside[v] = true;
                    stack.push(v);
                }
            };
            if right {
                reach(g.mul(x, h));
            }
            if left {
                reach(g.mul(h, x));
            }
        }
    }
    inside
}

/// The equivalent characterizations of a quadratical quasigroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Right solvable with property A.
    Definition,
    IdempotentBookendMedial,
    ElasticBookendMedial,
    ElasticMedialIdempotentAlterable,
    /// Left and right distributive, bookend and alterable.
    DistributiveBookendAlterable,
    MedialIdempotentPropertyA,
    /// Every characterization; they must agree.
    All,
}

impl Method {
    pub const EACH: [Method; 6] = [
        Method::Definition,
        Method::IdempotentBookendMedial,
        Method::ElasticBookendMedial,
        Method::ElasticMedialIdempotentAlterable,
        Method::DistributiveBookendAlterable,
        Method::MedialIdempotentPropertyA,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Method::Definition => "definition",
            Method::IdempotentBookendMedial => "idempotent_bookend_medial",
            Method::ElasticBookendMedial => "elastic_bookend_medial",
            Method::ElasticMedialIdempotentAlterable => "elastic_medial_idempotent_alterable",
            Method::DistributiveBookendAlterable => "distributive_bookend_alterable",
            Method::MedialIdempotentPropertyA => "medial_idempotent_property_a",
            Method::All => "all",
        }
    }

    /// The conjunction of properties a single method checks.
    pub fn properties(self) -> &'static [PropertyKind] {
        match self {
            Method::Definition => &[RightSolvable, PropertyA],
            Method::IdempotentBookendMedial => &[Idempotent, Bookend, Medial],
            Method::ElasticBookendMedial => &[Elastic, Bookend, Medial],
            Method::ElasticMedialIdempotentAlterable => &[Elastic, Medial, Idempotent, Alterable],
            Method::DistributiveBookendAlterable => {
                &[LeftDistributive, RightDistributive, Bookend, Alterable]
            }
            Method::MedialIdempotentPropertyA => &[Medial, Idempotent, PropertyA],
            Method::All => &[],
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::EACH
            .into_iter()
            .chain([Method::All])
            .find(|m| m.tag() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown method `{s}`")))
    }
}

/// Decides whether `g` is a quadratical quasigroup using `method`.
pub fn is_quadratical(g: &Groupoid, method: Method) -> Result<bool> {
    if method != Method::All {
        return Ok(method.properties().iter().all(|&p| holds(g, p)));
    }
    let mut known: Vec<(PropertyKind, bool)> = Vec::new();
    let mut has = |p: PropertyKind| match known.iter().find(|&&(q, _)| q == p) {
        Some(&(_, v)) => v,
        None => {
            let v = holds(g, p);
            known.push((p, v));
            v
        }
    };
    let verdicts: Vec<(Method, bool)> = Method::EACH
        .into_iter()
        .map(|m| (m, m.properties().iter().all(|&p| has(p))))
        .collect();
    let first = verdicts[0].1;
    if verdicts.iter().all(|&(_, v)| v == first) {
        Ok(first)
    } else {
        let detail: Vec<String> = verdicts.iter().map(|(m, v)| format!("{m}={v}")).collect();
        Err(Error::CharacterizationDisagreement(detail.join(", ")))
    }
}

/// Shorthand for `is_quadratical(g, Method::All)` that reports disagreement
/// as a plain error.
pub fn require_quadratical(g: &Groupoid) -> Result<()> {
    if is_quadratical(g, Method::All)? {
        Ok(())
    } else {
        Err(Error::NotQuadratical(
            quadratical_failure(g).unwrap_or_else(|| "unknown reason".into()),
        ))
    }
}

/// Description of the first failing defining identity, if any.
pub fn quadratical_failure(g: &Groupoid) -> Option<String> {
    Method::IdempotentBookendMedial
        .properties()
        .iter()
        .find_map(|&p| check(g, p).err())
        .map(|w| w.describe(g))
}

/// In a quadratical quasigroup, `x·(y·z) = (x·y)·z` exactly when `x = z`.
/// Returns whether that biconditional holds over all triples.
pub fn check_assoc_boundary(g: &Groupoid) -> Result<bool> {
    require_quadratical(g)?;
    let n = g.order();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let assoc = g.mul(x, g.mul(y, z)) == g.mul(g.mul(x, y), z);
                if assoc != (x == z) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
