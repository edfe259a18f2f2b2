//! Affine quadratical quasigroups of a given order, one per isomorphism
//! class.
//!
//! An affine quadratical quasigroup is a finite abelian group `A` with an
//! automorphism `φ` satisfying `2φ² - 2φ + 1 = 0`, that is a module over
//! `Z[t]/(2t² - 2t + 1)`, and two of them are isomorphic exactly when the
//! modules are. The module splits over the primes dividing `|A|` (all odd,
//! since 2 must be invertible). The discriminant of `2t² - 2t + 1` is `-4`,
//! so at `p ≡ 1 (mod 4)` the polynomial has two simple roots `r ≠ s` and the
//! `p`-part is `M_r ⊕ M_s` with `φ` acting as `r` and `s` on arbitrary
//! abelian `p`-groups; at `p ≡ 3 (mod 4)` it stays irreducible and the
//! `p`-part is a sum of copies of `Z_{p^e}²` with `φ` the companion matrix.
//! Classes therefore correspond to pairs of partitions, or to single
//! partitions of half the exponent.

use std::collections::BTreeSet;

use super::enumerate::{labeled_count, EnumerationResult};
use crate::construct::affine::{build_unchecked, AffineSpec};
use crate::error::{Error, Result};
use crate::groupoid::{canonical_form, Groupoid};
use crate::properties::require_quadratical;

pub const MAX_AFFINE_ORDER: usize = 100;

fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = vec![];
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Partitions of `n` as non-increasing part lists.
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = vec![];
    go(n, n, &mut vec![], &mut out);
    out
}

/// Roots of `2t² - 2t + 1` modulo `m`.
fn roots(m: usize) -> Vec<usize> {
    (0..m).filter(|&t| (2 * t * t + 1 + 2 * m - 2 * t) % m == 0).collect()
}

fn inverse_mod(a: usize, m: usize) -> usize {
    (1..m).find(|&x| a * x % m == 1).unwrap_or(0)
}

/// One block of the decomposition: cyclic factors and the matrix of `φ`
/// on them.
type Block = (Vec<usize>, Vec<Vec<i64>>);

fn prime_part_blocks(p: usize, e: u32) -> Vec<Vec<Block>> {
    let pow = |k: u32| p.pow(k);
    if p % 4 == 3 {
        if e % 2 == 1 {
            return vec![];
        }
        return partitions(e / 2)
            .into_iter()
            .map(|parts| {
                parts
                    .into_iter()
                    .map(|k| {
                        let m = pow(k);
                        let half = inverse_mod(2, m) as i64;
                        (vec![m, m], vec![vec![0, -half], vec![1, 1]])
                    })
                    .collect()
            })
            .collect();
    }
    // p ≡ 1 (mod 4): pick the roots that reduce to r < s modulo p
    let base = roots(p);
    debug_assert_eq!(base.len(), 2);
    let lift = |root_mod_p: usize, k: u32| -> i64 {
        roots(pow(k))
            .into_iter()
            .find(|r| r % p == root_mod_p)
            .expect("simple roots lift") as i64
    };
    let mut out = vec![];
    for a in (0..=e).rev() {
        for left in partitions(a) {
            for right in partitions(e - a) {
                let mut blocks = vec![];
                for &k in &left {
                    blocks.push((vec![pow(k)], vec![vec![lift(base[0], k)]]));
                }
                for &k in &right {
                    blocks.push((vec![pow(k)], vec![vec![lift(base[1], k)]]));
                }
                out.push(blocks);
            }
        }
    }
    out
}

fn combine(blocks: &[Block]) -> AffineSpec {
    let factors: Vec<usize> = blocks.iter().flat_map(|(f, _)| f.iter().copied()).collect();
    let m = factors.len();
    let mut phi = vec![vec![0; m]; m];
    let mut at = 0;
    for (f, mat) in blocks {
        for i in 0..f.len() {
            for j in 0..f.len() {
                phi[at + i][at + j] = mat[i][j];
            }
        }
        at += f.len();
    }
    AffineSpec::new(factors, phi)
}

/// One spec per isomorphism class of affine quadratical quasigroups of
/// order `n`.
pub fn affine_specs(n: usize) -> Result<Vec<AffineSpec>> {
    if n == 0 || n > MAX_AFFINE_ORDER {
        return Err(Error::Precondition(format!("order must be in 1..={MAX_AFFINE_ORDER}")));
    }
    if n % 2 == 0 {
        return Err(Error::Precondition("even orders have no affine quadratical quasigroups".into()));
    }
    if n == 1 {
        return Ok(vec![AffineSpec::cyclic(1, 0)]);
    }
    let mut combos: Vec<Vec<Block>> = vec![vec![]];
    for (p, e) in factorize(n) {
        let options = prime_part_blocks(p, e);
        combos = combos
            .iter()
            .flat_map(|prefix| {
                options.iter().map(move |o| {
                    let mut c = prefix.clone();
                    c.extend(o.iter().cloned());
                    c
                })
            })
            .collect();
    }
    Ok(combos.iter().map(|c| combine(c)).collect())
}

/// Number of isomorphism classes of affine quadratical quasigroups of
/// order `n`; zero for even `n`.
pub fn affine_class_count(n: usize) -> Result<usize> {
    if n % 2 == 0 && n > 0 && n <= MAX_AFFINE_ORDER {
        return Ok(0);
    }
    affine_specs(n).map(|s| s.len())
}

/// Builds every class, verifies it and returns canonical forms. Fails if two
/// specs turn out isomorphic.
pub fn classify_affine(n: usize) -> Result<EnumerationResult> {
    let specs = affine_specs(n)?;
    let mut found = BTreeSet::new();
    for spec in &specs {
        spec.validate()?;
        let g = build_unchecked(spec);
        require_quadratical(&g)?;
        found.insert(canonical_form(&g).table());
    }
    if found.len() != specs.len() {
        return Err(Error::StructureViolation(format!(
            "{} affine specs of order {n} give only {} classes",
            specs.len(),
            found.len()
        )));
    }
    let representatives: Vec<Groupoid> = found
        .into_iter()
        .map(|t| Groupoid::from_table(n, t).expect("canonical tables are valid"))
        .collect();
    let raw_count = (n <= 30).then(|| labeled_count(&representatives));
    Ok(EnumerationResult {
        order: n,
        representatives,
        raw_count,
        complete: true,
    })
}
