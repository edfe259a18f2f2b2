//! Fine structure of a quadratical quasigroup: the element `aba` of a pair,
//! 4-cycles based on an element, the levels `H1, H2, ...` generated by a pair,
//! and the starred levels computed in the dual.

use crate::construct::completion::{Branch, BranchRow, ABA};
use crate::error::{Error, Result};
use crate::groupoid::Groupoid;
use crate::properties::require_quadratical;

/// A groupoid already checked to be a quadratical quasigroup.
#[derive(Clone, Copy, Debug)]
pub struct Quadratical<'g> {
    g: &'g Groupoid,
}

impl<'g> Quadratical<'g> {
    pub fn new(g: &'g Groupoid) -> Result<Self> {
        require_quadratical(g)?;
        Ok(Quadratical { g })
    }

    pub fn groupoid(&self) -> &'g Groupoid {
        self.g
    }

    fn check_index(&self, x: usize) -> Result<()> {
        if x < self.g.order() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: x,
                order: self.g.order(),
            })
        }
    }

    /// The unique `x` with `a·x = b`.
    pub fn right_divide(&self, a: usize, b: usize) -> usize {
        (0..self.g.order())
            .find(|&x| self.g.mul(a, x) == b)
            .expect("rows of a quasigroup are permutations")
    }

    pub fn base_point(&self, a: usize, b: usize) -> Result<BasePoint> {
        self.check_index(a)?;
        self.check_index(b)?;
        if a == b {
            return Err(Error::Precondition("base pair needs two distinct elements".into()));
        }
        let g = self.g;
        let aba = g.mul(g.mul(a, b), a);
        if aba != g.mul(a, g.mul(b, a)) {
            return Err(Error::StructureViolation(format!(
                "(a·b)·a ≠ a·(b·a) for a={}, b={}",
                g.name(a),
                g.name(b)
            )));
        }
        Ok(BasePoint { a, b, aba })
    }

    pub fn four_cycle_through(&self, base: usize, x1: usize) -> Result<FourCycle> {
        self.check_index(base)?;
        self.check_index(x1)?;
        if x1 == base {
            return Err(Error::Precondition("a 4-cycle does not contain its base".into()));
        }
        let x2 = self.right_divide(x1, base);
        let x3 = self.right_divide(x2, base);
        let x4 = self.right_divide(x3, base);
        let members = [x1, x2, x3, x4];
        let distinct = (0..4).all(|i| (i + 1..4).all(|j| members[i] != members[j]));
        if self.g.mul(x4, x1) != base || !distinct || members.contains(&base) {
            return Err(Error::StructureViolation(format!(
                "the chain from {} does not close into a 4-cycle on {}",
                self.g.name(x1),
                self.g.name(base)
            )));
        }
        Ok(FourCycle { members, base })
    }

    pub fn cycle_decomposition(&self, base: usize) -> Result<CycleDecomposition> {
        self.check_index(base)?;
        let n = self.g.order();
        if n == 1 {
            return Err(Error::Precondition("the trivial groupoid has no 4-cycles".into()));
        }
        let mut covered = vec![false; n];
        covered[base] = true;
        let mut cycles = Vec::new();
        for x in 0..n {
            if covered[x] {
                continue;
            }
            let cycle = self.four_cycle_through(base, x)?;
            for &m in &cycle.members {
                if std::mem::replace(&mut covered[m], true) {
                    return Err(Error::StructureViolation(format!(
                        "4-cycles on {} overlap in {}",
                        self.g.name(base),
                        self.g.name(m)
                    )));
                }
            }
            cycles.push(cycle);
        }
        Ok(CycleDecomposition { base, cycles })
    }

    /// Levels `H1..=Hdepth` for the pair `(a, b)`, with every level property
    /// checked.
    pub fn h_family(&self, a: usize, b: usize, depth: usize) -> Result<HFamily> {
        if depth == 0 {
            return Err(Error::Precondition("depth must be at least 1".into()));
        }
        let base = self.base_point(a, b)?;
        let levels = raw_levels(self.g, a, b, depth);
        let family = HFamily { base, levels };
        family.validate(self.g)?;
        Ok(family)
    }

    /// First ordered pair (lexicographic) whose levels exhaust the groupoid.
    pub fn detect_form_qn(&self) -> Option<FormQn> {
        let g = self.g;
        let order = g.order();
        if order < 5 || order % 4 != 1 {
            return None;
        }
        let depth = (order - 1) / 4;
        for a in 0..order {
            for b in 0..order {
                if a != b && covers(g, a, b, depth) {
                    return Some(FormQn { a, b, depth });
                }
            }
        }
        None
    }

    /// Starred levels: the levels of `(a, b)` computed in the dual. Checks the
    /// correspondence with the unstarred levels, which depends on the level
    /// number mod 4.
    pub fn star_elements(&self, a: usize, b: usize, depth: usize) -> Result<Vec<[usize; 4]>> {
        let family = self.h_family(a, b, depth)?;
        let dual = self.g.dual();
        let star = Quadratical { g: &dual }.h_family(a, b, depth)?;
        for (i, (plain, starred)) in family.levels.iter().zip(&star.levels).enumerate() {
            let m = i + 1;
            let image = star_position(m);
            for k in 0..4 {
                if starred[k] != plain[image[k] - 1] {
                    return Err(Error::StructureViolation(format!(
                        "starred {m}{} is {}, expected {m}{}",
                        k + 1,
                        self.g.name(starred[k]),
                        image[k]
                    )));
                }
            }
        }
        Ok(star.levels)
    }

    /// Identifies which member of `Hn` equals `aba·a` and checks every
    /// product that choice forces.
    pub fn branch_profile(&self, a: usize, b: usize) -> Result<BranchProfile> {
        let g = self.g;
        let order = g.order();
        let depth = (order - 1) / 4;
        if order % 4 != 1 || depth == 0 || !covers(g, a, b, depth) {
            return Err(Error::Precondition(format!(
                "({}, {}) does not present the groupoid in form Qn",
                g.name(a),
                g.name(b)
            )));
        }
        let family = self.h_family(a, b, depth)?;
        // relabel into the skeleton's symbol indices
        let mut to_sym = vec![usize::MAX; order];
        to_sym[family.base.aba] = ABA;
        for (m, level) in family.levels.iter().enumerate() {
            for (k, &x) in level.iter().enumerate() {
                to_sym[x] = crate::construct::completion::sym(m + 1, k + 1);
            }
        }
        let mut from_sym = vec![0; order];
        for (x, &s) in to_sym.iter().enumerate() {
            from_sym[s] = x;
        }
        let last = family.levels[depth - 1];
        let aba_a = g.mul(family.base.aba, a);
        let branch = last
            .iter()
            .position(|&x| x == aba_a)
            .and_then(|k| Branch::from_position(k + 1))
            .ok_or_else(|| Error::StructureViolation("aba·a is not in the last level".into()))?;
        let mut products = Vec::new();
        if depth >= 2 {
            for (x, y, v) in BranchRow::of(branch).products(depth, branch) {
                let (gx, gy, gv) = (from_sym[x], from_sym[y], from_sym[v]);
                if g.mul(gx, gy) != gv {
                    return Err(Error::StructureViolation(format!(
                        "branch {branch}: {}·{} should be {}, table has {}",
                        g.name(gx),
                        g.name(gy),
                        g.name(gv),
                        g.name(g.mul(gx, gy))
                    )));
                }
                products.push((gx, gy, gv));
            }
        }
        Ok(BranchProfile {
            branch,
            depth,
            products,
        })
    }
}

/// The level recursion without any checks.
fn raw_levels(g: &Groupoid, a: usize, b: usize, depth: usize) -> Vec<[usize; 4]> {
    let mut levels = vec![[a, g.mul(a, b), g.mul(b, a), b]];
    while levels.len() < depth {
        let [p1, p2, p3, p4] = *levels.last().unwrap();
        levels.push([g.mul(p1, p2), g.mul(p2, p4), g.mul(p3, p1), g.mul(p4, p3)]);
    }
    levels
}

fn covers(g: &Groupoid, a: usize, b: usize, depth: usize) -> bool {
    let mut seen = vec![false; g.order()];
    seen[g.mul(g.mul(a, b), a)] = true;
    for level in raw_levels(g, a, b, depth) {
        for x in level {
            if std::mem::replace(&mut seen[x], true) {
                return false;
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// `star_position(m)[k-1]` is the position `j` with `(mk)* = mj`.
pub fn star_position(m: usize) -> [usize; 4] {
    match m % 4 {
        1 => [1, 3, 2, 4],
        2 => [3, 4, 1, 2],
        3 => [4, 2, 3, 1],
        _ => [2, 1, 4, 3],
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasePoint {
    pub a: usize,
    pub b: usize,
    pub aba: usize,
}

/// Distinct `x1..x4` with `x1·x2 = x2·x3 = x3·x4 = x4·x1 = base`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FourCycle {
    pub members: [usize; 4],
    pub base: usize,
}

impl FourCycle {
    pub fn member_set(&self) -> Vec<usize> {
        let mut m = self.members.to_vec();
        m.sort_unstable();
        m
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDecomposition {
    pub base: usize,
    pub cycles: Vec<FourCycle>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HFamily {
    pub base: BasePoint,
    pub levels: Vec<[usize; 4]>,
}

impl HFamily {
    fn validate(&self, g: &Groupoid) -> Result<()> {
        let aba = self.base.aba;
        let m = |x, y| g.mul(x, y);
        let fail = |level: usize, what: &str| {
            Err(Error::StructureViolation(format!("level {level}: {what}")))
        };
        for (i, &[x1, x2, x3, x4]) in self.levels.iter().enumerate() {
            let level = i + 1;
            let members = [x1, x2, x3, x4];
            if (0..4).any(|p| (p + 1..4).any(|q| members[p] == members[q])) {
                return fail(level, "members are not distinct");
            }
            if members.contains(&aba) {
                return fail(level, "contains aba");
            }
            if m(x1, x4) != x2 || m(x2, x3) != x4 || m(x3, x2) != x1 || m(x4, x1) != x3 {
                return fail(level, "level products n1·n4 = n2, n2·n3 = n4, n3·n2 = n1, n4·n1 = n3 fail");
            }
            if [m(x1, x3), m(x2, x1), m(x3, x4), m(x4, x2)] != [aba; 4] {
                return fail(level, "(n1, n3, n4, n2) is not a 4-cycle on aba");
            }
            if level > 1 {
                let [p1, p2, p3, p4] = self.levels[i - 1];
                if [m(aba, x1), m(aba, x2), m(aba, x3), m(aba, x4)] != [p1, p2, p3, p4] {
                    return fail(level, "aba·nk ≠ (n-1)k");
                }
                if [m(x1, aba), m(x2, aba), m(x3, aba), m(x4, aba)] != [p2, p4, p1, p3] {
                    return fail(level, "nk·aba does not match the previous level");
                }
            }
        }
        Ok(())
    }
}

/// A pair `(a, b)` with `G = {aba} ∪ H1 ∪ ... ∪ H_depth`, all disjoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FormQn {
    pub a: usize,
    pub b: usize,
    pub depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchProfile {
    pub branch: Branch,
    pub depth: usize,
    /// The forced products `(x, y, x·y)` that were checked.
    pub products: Vec<(usize, usize, usize)>,
}

pub fn base_point(g: &Groupoid, a: usize, b: usize) -> Result<BasePoint> {
    Quadratical::new(g)?.base_point(a, b)
}

pub fn four_cycle_through(g: &Groupoid, base: usize, x1: usize) -> Result<FourCycle> {
    Quadratical::new(g)?.four_cycle_through(base, x1)
}

pub fn cycle_decomposition(g: &Groupoid, base: usize) -> Result<CycleDecomposition> {
    Quadratical::new(g)?.cycle_decomposition(base)
}

pub fn h_family(g: &Groupoid, a: usize, b: usize, depth: usize) -> Result<HFamily> {
    Quadratical::new(g)?.h_family(a, b, depth)
}

pub fn detect_form_qn(g: &Groupoid) -> Result<Option<FormQn>> {
    Ok(Quadratical::new(g)?.detect_form_qn())
}

pub fn star_elements(g: &Groupoid, a: usize, b: usize, depth: usize) -> Result<Vec<[usize; 4]>> {
    Quadratical::new(g)?.star_elements(a, b, depth)
}

pub fn branch_profile(g: &Groupoid, a: usize, b: usize) -> Result<BranchProfile> {
    Quadratical::new(g)?.branch_profile(a, b)
}
