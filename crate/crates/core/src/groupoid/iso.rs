//! Isomorphism search and canonical relabeling.
//!
//! Both procedures grow a partial bijection and close it under products: once
//! `x ↦ x'` and `y ↦ y'` are fixed, `x·y ↦ x'·y'` is forced. For groupoids
//! generated by a few elements this leaves only a handful of free choices.

use super::Groupoid;

const UNSET: usize = usize::MAX;

/// A bijection on element indices, `map[x]` being the image of `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Isomorphism {
    map: Vec<usize>,
}

impl Isomorphism {
    pub fn identity(n: usize) -> Self {
        Isomorphism {
            map: (0..n).collect(),
        }
    }

    /// Wraps a permutation; `None` if `map` is not a bijection on `0..len`.
    pub fn from_map(map: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; map.len()];
        for &v in &map {
            if v >= map.len() || std::mem::replace(&mut seen[v], true) {
                return None;
            }
        }
        Some(Isomorphism { map })
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn inverse(&self) -> Isomorphism {
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Isomorphism { map: inv }
    }

    /// `self` followed by `then`.
    pub fn compose(&self, then: &Isomorphism) -> Isomorphism {
        Isomorphism {
            map: self.map.iter().map(|&y| then.map[y]).collect(),
        }
    }

    /// Checks `map(x·y) = map(x)·map(y)` for every pair.
    pub fn verify(&self, g: &Groupoid, h: &Groupoid) -> bool {
        let n = g.order();
        if h.order() != n || self.map.len() != n {
            return false;
        }
        (0..n).all(|x| (0..n).all(|y| self.map[g.mul(x, y)] == h.mul(self.map[x], self.map[y])))
    }
}

/// Per-element data preserved by every isomorphism.
fn element_invariants(g: &Groupoid) -> Vec<[u32; 6]> {
    let n = g.order();
    let mut inv = vec![[0u32; 6]; n];
    for x in 0..n {
        inv[x][0] = (g.mul(x, x) == x) as u32;
        for y in 0..n {
            let xy = g.mul(x, y);
            let yx = g.mul(y, x);
            inv[x][1] += (xy == y) as u32;
            inv[x][2] += (yx == y) as u32;
            inv[x][3] += (xy == yx) as u32;
            inv[x][4] += (xy == x) as u32;
            inv[xy][5] += 1;
        }
    }
    inv
}

struct Matcher<'a> {
    g: &'a Groupoid,
    h: &'a Groupoid,
    inv_g: Vec<[u32; 6]>,
    inv_h: Vec<[u32; 6]>,
    map: Vec<usize>,
    used: Vec<bool>,
    trail: Vec<usize>,
}

impl<'a> Matcher<'a> {
    /// Maps `x ↦ y` and closes under products. On failure the caller
    /// rewinds to the trail length it saw before the call.
    fn assign(&mut self, x: usize, y: usize) -> bool {
        if !self.bind(x, y) {
            return false;
        }
        let mut next = self.trail.len() - 1;
        while next < self.trail.len() {
            let a = self.trail[next];
            let fa = self.map[a];
            for k in 0..=next {
                let b = self.trail[k];
                let fb = self.map[b];
                for (p, q) in [
                    (self.g.mul(a, b), self.h.mul(fa, fb)),
                    (self.g.mul(b, a), self.h.mul(fb, fa)),
                ] {
                    if self.map[p] == UNSET {
                        if !self.bind(p, q) {
                            return false;
                        }
                    } else if self.map[p] != q {
                        return false;
                    }
                }
            }
            next += 1;
        }
        true
    }

    fn bind(&mut self, x: usize, y: usize) -> bool {
        if self.used[y] || self.inv_g[x] != self.inv_h[y] {
            return false;
        }
        self.map[x] = y;
        self.used[y] = true;
        self.trail.push(x);
        true
    }

    fn rewind(&mut self, len: usize) {
        while self.trail.len() > len {
            let x = self.trail.pop().unwrap();
            self.used[self.map[x]] = false;
            self.map[x] = UNSET;
        }
    }

    fn search(&mut self, from: usize) -> bool {
        let n = self.g.order();
        let Some(x) = (from..n).find(|&x| self.map[x] == UNSET) else {
            return true;
        };
        for y in 0..n {
            if self.used[y] {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(x, y) && self.search(x + 1) {
                return true;
            }
            self.rewind(mark);
        }
        false
    }
}

/// Finds the lexicographically first isomorphism `g → h`, if any.
pub fn find_isomorphism(g: &Groupoid, h: &Groupoid) -> Option<Isomorphism> {
    let n = g.order();
    if h.order() != n {
        return None;
    }
    let inv_g = element_invariants(g);
    let inv_h = element_invariants(h);
    let mut sorted_g = inv_g.clone();
    let mut sorted_h = inv_h.clone();
    sorted_g.sort_unstable();
    sorted_h.sort_unstable();
    if sorted_g != sorted_h {
        return None;
    }
    let mut m = Matcher {
        g,
        h,
        inv_g,
        inv_h,
        map: vec![UNSET; n],
        used: vec![false; n],
        trail: Vec::with_capacity(n),
    };
    if m.search(0) {
        Some(Isomorphism { map: m.map })
    } else {
        None
    }
}

/// Number of automorphisms of `g`.
pub fn automorphism_count(g: &Groupoid) -> u64 {
    fn count(m: &mut Matcher<'_>, from: usize) -> u64 {
        let n = m.g.order();
        let Some(x) = (from..n).find(|&x| m.map[x] == UNSET) else {
            return 1;
        };
        let mut total = 0;
        for y in 0..n {
            if m.used[y] {
                continue;
            }
            let mark = m.trail.len();
            if m.assign(x, y) {
                total += count(m, x + 1);
            }
            m.rewind(mark);
        }
        total
    }
    let n = g.order();
    let inv = element_invariants(g);
    let mut m = Matcher {
        g,
        h: g,
        inv_g: inv.clone(),
        inv_h: inv,
        map: vec![UNSET; n],
        used: vec![false; n],
        trail: Vec::with_capacity(n),
    };
    count(&mut m, 0)
}

pub fn is_isomorphic(g: &Groupoid, h: &Groupoid) -> bool {
    find_isomorphism(g, h).is_some()
}

#[derive(Clone)]
struct Labeling {
    labels: Vec<usize>,
    pos: Vec<usize>,
    shell: usize,
    seq: Vec<u16>,
    below_best: bool,
}

impl Labeling {
    fn push(&mut self, x: usize) {
        self.pos[x] = self.labels.len();
        self.labels.push(x);
    }
}

struct Canonizer<'a> {
    g: &'a Groupoid,
    best: Option<(Vec<u16>, Vec<usize>)>,
}

impl Canonizer<'_> {
    /// Records the label of `x·y`; false when the prefix exceeds the best.
    fn emit(&self, st: &mut Labeling, x: usize, y: usize) -> bool {
        let v = self.g.mul(x, y);
        if st.pos[v] == UNSET {
            st.push(v);
        }
        let label = st.pos[v] as u16;
        let idx = st.seq.len();
        st.seq.push(label);
        if !st.below_best {
            if let Some((best, _)) = &self.best {
                match label.cmp(&best[idx]) {
                    std::cmp::Ordering::Greater => return false,
                    std::cmp::Ordering::Less => st.below_best = true,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        true
    }

    fn explore(&mut self, mut st: Labeling) {
        let n = self.g.order();
        loop {
            if st.shell == st.labels.len() {
                if st.labels.len() == n {
                    if self.best.is_none() || st.below_best {
                        self.best = Some((st.seq, st.pos));
                    }
                    return;
                }
                for x in 0..n {
                    if st.pos[x] == UNSET {
                        // an earlier sibling may have lowered the best
                        if let Some((best, _)) = &self.best {
                            match st.seq.as_slice().cmp(&best[..st.seq.len()]) {
                                std::cmp::Ordering::Greater => return,
                                std::cmp::Ordering::Less => st.below_best = true,
                                std::cmp::Ordering::Equal => st.below_best = false,
                            }
                        }
                        let mut child = st.clone();
                        child.push(x);
                        self.explore(child);
                    }
                }
                return;
            }
            let s = st.shell;
            let z = st.labels[s];
            for i in 0..=s {
                let x = st.labels[i];
                if !self.emit(&mut st, x, z) {
                    return;
                }
            }
            for j in 0..s {
                let y = st.labels[j];
                if !self.emit(&mut st, z, y) {
                    return;
                }
            }
            st.shell += 1;
        }
    }
}

/// Relabeling map (element ↦ canonical index) used by [`canonical_form`].
pub fn canonical_labeling(g: &Groupoid) -> Vec<usize> {
    let n = g.order();
    let mut c = Canonizer { g, best: None };
    c.explore(Labeling {
        labels: Vec::with_capacity(n),
        pos: vec![UNSET; n],
        shell: 0,
        seq: Vec::with_capacity(n * n),
        below_best: false,
    });
    c.best.expect("at least one labeling").1
}

/// Canonical representative of the isomorphism class of `g`.
///
/// Labelings are produced by repeatedly choosing an unlabeled generator and
/// closing under products, numbering new elements in order of discovery; the
/// table read in shell order (cells with `max(r, c) = s` for `s = 0, 1, ...`)
/// is minimized over all such labelings. The family of labelings is carried
/// to itself by any isomorphism, so the minimum depends only on the class.
/// Names are dropped.
pub fn canonical_form(g: &Groupoid) -> Groupoid {
    g.relabel(&canonical_labeling(g)).without_names()
}
