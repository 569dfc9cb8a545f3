use serde::{Deserialize, Serialize};

use crate::relations::RelationLattice;

/// Box `lo <= k <= hi` in offset space. A truncated series is complete on
/// its window: every term of the full series with offset in the box is present.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl Window {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Self {
        assert_eq!(lo.len(), hi.len(), "window bounds of different lengths");
        Self { lo, hi }
    }

    /// Box holding every `sum c_j l_j` with `|c_j| <= radius`, widened by `pad`.
    pub fn lattice_ball(l: &RelationLattice, radius: i64, pad: i64) -> Self {
        let reach: Vec<i64> = (0..l.n)
            .map(|i| radius * l.basis.iter().map(|b| b[i].abs()).sum::<i64>() + pad)
            .collect();
        Self {
            lo: reach.iter().map(|r| -r).collect(),
            hi: reach,
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn contains(&self, k: &[i64]) -> bool {
        k.iter().zip(&self.lo).zip(&self.hi).all(|((x, l), h)| l <= x && x <= h)
    }

    pub fn is_empty(&self) -> bool {
        self.lo.iter().zip(&self.hi).any(|(l, h)| l > h)
    }

    pub fn intersect(&self, other: &Window) -> Window {
        Window {
            lo: self.lo.iter().zip(&other.lo).map(|(a, b)| *a.max(b)).collect(),
            hi: self.hi.iter().zip(&other.hi).map(|(a, b)| *a.min(b)).collect(),
        }
    }

    /// Translate by `delta`.
    pub fn shift(&self, delta: &[i64]) -> Window {
        Window {
            lo: self.lo.iter().zip(delta).map(|(a, d)| a + d).collect(),
            hi: self.hi.iter().zip(delta).map(|(a, d)| a + d).collect(),
        }
    }

    /// Widen every side by `pad`.
    pub fn pad(&self, pad: i64) -> Window {
        Window {
            lo: self.lo.iter().map(|a| a - pad).collect(),
            hi: self.hi.iter().map(|a| a + pad).collect(),
        }
    }

    pub fn is_subset_of(&self, other: &Window) -> bool {
        self.is_empty() || (self.lo.iter().zip(&other.lo).all(|(a, b)| a >= b) && self.hi.iter().zip(&other.hi).all(|(a, b)| a <= b))
    }
}
