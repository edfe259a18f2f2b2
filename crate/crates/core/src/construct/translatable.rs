//! Tables built by shifting a first row: row `q` is row `q-1` moved `k`
//! places to the right, so with 0-based indices `T(q, j) = row[(j - q·k) mod n]`.

use crate::error::{Error, Result};
use crate::groupoid::Groupoid;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslatableSeed {
    k: usize,
    first_row: Vec<usize>,
}

impl TranslatableSeed {
    /// `first_row` holds 0-based entries.
    pub fn new(k: usize, first_row: Vec<usize>) -> Result<Self> {
        let n = first_row.len();
        if n == 0 {
            return Err(Error::InvalidSeed("empty first row".into()));
        }
        if !(1..=n).contains(&k) {
            return Err(Error::InvalidSeed(format!("shift {k} outside 1..={n}")));
        }
        if let Some(&bad) = first_row.iter().find(|&&v| v >= n) {
            return Err(Error::InvalidSeed(format!("entry {} outside 1..={n}", bad + 1)));
        }
        Ok(TranslatableSeed { k, first_row })
    }

    /// Entries numbered from 1, as tables are usually printed.
    pub fn from_one_based(k: usize, first_row: &[usize]) -> Result<Self> {
        let n = first_row.len();
        let row = first_row
            .iter()
            .map(|&v| {
                v.checked_sub(1)
                    .filter(|&v| v < n)
                    .ok_or_else(|| Error::InvalidSeed(format!("entry {v} outside 1..={n}")))
            })
            .collect::<Result<Vec<_>>>()?;
        TranslatableSeed::new(k, row)
    }

    pub fn order(&self) -> usize {
        self.first_row.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn first_row(&self) -> &[usize] {
        &self.first_row
    }
}

pub fn from_translatable(seed: &TranslatableSeed) -> Groupoid {
    let n = seed.order();
    let k = seed.k % n;
    Groupoid::from_fn(n, |q, j| seed.first_row[(j + n * n - q * k % n) % n])
        .expect("entries checked by the seed")
}

/// Whether `g`, in its current element order, satisfies the shift law for `k`.
pub fn is_k_translatable(g: &Groupoid, k: usize) -> bool {
    let n = g.order();
    (1..n).all(|q| (0..n).all(|j| g.mul(q, j) == g.mul(q - 1, (j + n - k % n) % n)))
}

/// The idempotent `k`-translatable table of order `n`, which is unique when
/// it exists. Idempotency pins `row[q(1-k) mod n] = q`; these positions
/// collide exactly when `gcd(k-1, n) > 1`.
pub fn forced_idempotent_translatable(n: usize, k: usize) -> Option<Groupoid> {
    if n == 0 || !(1..=n).contains(&k) {
        return None;
    }
    let step = (n + 1 - k % n) % n; // 1 - k mod n
    let mut row = vec![usize::MAX; n];
    for q in 0..n {
        let p = q * step % n;
        if row[p] != usize::MAX {
            return None;
        }
        row[p] = q;
    }
    Some(from_translatable(&TranslatableSeed::new(k, row).expect("valid by construction")))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// All idempotent k-translatable tables of order n, by trying every first row.
    fn brute_force(n: usize, k: usize) -> Vec<Groupoid> {
        let mut out = vec![];
        let total = n.pow(n as u32);
        for mut code in 0..total {
            let mut row = vec![0; n];
            for slot in row.iter_mut() {
                *slot = code % n;
                code /= n;
            }
            // diagonal entry (q, q) sits q·k places left of q in the first row
            if (0..n).all(|q| row[(q + n * n - q * k) % n] == q) {
                out.push(from_translatable(&TranslatableSeed::new(k, row).unwrap()));
            }
        }
        out
    }

    #[test]
    fn forced_table_is_the_only_one() {
        for n in 1..=7 {
            for k in 1..=n {
                let found = brute_force(n, k);
                match forced_idempotent_translatable(n, k) {
                    Some(g) => assert_eq!(found, vec![g], "n={n} k={k}"),
                    None => assert!(found.is_empty(), "n={n} k={k}"),
                }
            }
        }
    }

    #[test]
    fn order_five_shift_three() {
        let g = forced_idempotent_translatable(5, 3).unwrap();
        assert_eq!(g.row(0).collect::<Vec<_>>(), vec![0, 2, 4, 1, 3]);
        assert!(is_k_translatable(&g, 3));
        assert!(!is_k_translatable(&g, 2));
    }

    #[test]
    fn shift_law_holds_for_arbitrary_rows() {
        let seed = TranslatableSeed::from_one_based(4, &[1, 4, 2, 5, 3]).unwrap();
        let g = from_translatable(&seed);
        assert!(is_k_translatable(&g, 4));
        assert_eq!(g.row(1).collect::<Vec<_>>(), vec![3, 1, 4, 2, 0]);
    }

    #[test]
    fn rejects_bad_seeds() {
        assert!(TranslatableSeed::from_one_based(0, &[1]).is_err());
        assert!(TranslatableSeed::from_one_based(1, &[2]).is_err());
        assert!(TranslatableSeed::from_one_based(1, &[0]).is_err());
        assert_eq!(from_translatable(&TranslatableSeed::from_one_based(1, &[1]).unwrap()), Groupoid::trivial());
    }
}
