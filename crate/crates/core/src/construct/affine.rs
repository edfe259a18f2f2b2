//! Affine quadratical quasigroups `x·y = φ(x) + (1-φ)(y)` over a finite
//! abelian group, where `φ` is an automorphism with `2φ² - 2φ + 1 = 0`.

use crate::error::{Error, Result};
use crate::groupoid::Groupoid;
use crate::properties::require_quadratical;

/// A group `Z_d1 × ... × Z_dm` and an endomorphism given by its matrix:
/// the image of the `j`-th generator is column `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSpec {
    pub factors: Vec<usize>,
    pub phi: Vec<Vec<i64>>,
}

impl AffineSpec {
    pub fn new(factors: Vec<usize>, phi: Vec<Vec<i64>>) -> Self {
        AffineSpec { factors, phi }
    }

    /// `Z_n` with `φ(x) = a·x`.
    pub fn cyclic(n: usize, a: i64) -> Self {
        AffineSpec::new(vec![n], vec![vec![a]])
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product()
    }

    fn apply(&self, v: &[i64]) -> Vec<i64> {
        let m = self.factors.len();
        (0..m)
            .map(|i| {
                let s: i64 = (0..m).map(|j| self.phi[i][j] * v[j]).sum();
                s.rem_euclid(self.factors[i] as i64)
            })
            .collect()
    }

    fn decode(&self, mut x: usize) -> Vec<i64> {
        let mut v = vec![0; self.factors.len()];
        for (i, &d) in self.factors.iter().enumerate().rev() {
            v[i] = (x % d) as i64;
            x /= d;
        }
        v
    }

    fn encode(&self, v: &[i64]) -> usize {
        self.factors
            .iter()
            .zip(v)
            .fold(0, |acc, (&d, &c)| acc * d + c.rem_euclid(d as i64) as usize)
    }

    /// Checks shape, well-definedness, bijectivity and `2φ² - 2φ + 1 = 0`.
    pub fn validate(&self) -> Result<()> {
        let m = self.factors.len();
        let bad = |msg: String| Err(Error::InvalidAffine(msg));
        if m == 0 || self.factors.contains(&0) {
            return bad("group needs at least one nonzero factor".into());
        }
        if self.phi.len() != m || self.phi.iter().any(|r| r.len() != m) {
            return bad(format!("phi must be {m}×{m}"));
        }
        for i in 0..m {
            for j in 0..m {
                let (di, dj) = (self.factors[i] as i64, self.factors[j] as i64);
                if (self.phi[i][j] * dj).rem_euclid(di) != 0 {
                    return bad(format!("entry ({i},{j}) does not define a map Z{dj} → Z{di}"));
                }
            }
        }
        for j in 0..m {
            let mut e = vec![0; m];
            e[j] = 1;
            let p1 = self.apply(&e);
            let p2 = self.apply(&p1);
            let zero = (0..m).all(|i| (2 * p2[i] - 2 * p1[i] + e[i]).rem_euclid(self.factors[i] as i64) == 0);
            if !zero {
                return bad(format!("2φ² - 2φ + 1 is not zero on generator {}", j + 1));
            }
        }
        let n = self.order();
        let mut seen = vec![false; n];
        for x in 0..n {
            let y = self.encode(&self.apply(&self.decode(x)));
            if std::mem::replace(&mut seen[y], true) {
                return bad("phi is not invertible".into());
            }
        }
        Ok(())
    }
}

/// Builds the affine groupoid and confirms it is quadratical.
pub fn build_affine(spec: &AffineSpec) -> Result<Groupoid> {
    spec.validate()?;
    let g = build_unchecked(spec);
    require_quadratical(&g)?;
    Ok(g)
}

/// The affine table without validation or verification; for callers that
/// already know the spec is valid.
pub(crate) fn build_unchecked(spec: &AffineSpec) -> Groupoid {
    let n = spec.order();
    let images: Vec<Vec<i64>> = (0..n).map(|x| spec.apply(&spec.decode(x))).collect();
    Groupoid::from_fn(n, |x, y| {
        let yv = spec.decode(y);
        let sum: Vec<i64> = (0..yv.len()).map(|i| images[x][i] + yv[i] - images[y][i]).collect();
        spec.encode(&sum)
    })
    .expect("encoded values are in range")
}
