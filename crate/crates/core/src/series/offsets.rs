//! Integer solutions of `sum k_i a_i = u` inside a window.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;

use crate::geometry::LatticeConfig;
use crate::linalg::{left_inverse, to_z, ColumnHermite};
use crate::rational::{big_to_i64, ceil_i64, floor_i64, int, Rational};
use crate::relations::RelationLattice;

use super::window::Window;

/// Reusable solver: one Hermite decomposition per configuration.
#[derive(Debug, Clone)]
pub struct OffsetSolver {
    hermite: ColumnHermite,
    lattice: RelationLattice,
    /// Rows of `(B^T B)^{-1} B^T` for the lattice basis `B`.
    coords: Vec<Vec<Rational>>,
}

impl OffsetSolver {
    pub fn new(cfg: &LatticeConfig, lattice: &RelationLattice) -> Self {
        let a: Vec<Vec<i64>> = (0..=cfg.m)
            .map(|r| cfg.lifted.iter().map(|p| p[r]).collect())
            .collect();
        let basis: Vec<Vec<Rational>> = lattice
            .basis
            .iter()
            .map(|b| b.iter().map(|&x| int(x)).collect())
            .collect();
        Self {
            hermite: ColumnHermite::new(&to_z(&a), cfg.len()),
            lattice: lattice.clone(),
            coords: left_inverse(&basis),
        }
    }

    pub fn particular(&self, u: &[i64]) -> Option<Vec<i64>> {
        let b: Vec<BigInt> = u.iter().map(|&x| BigInt::from(x)).collect();
        self.hermite
            .solve(&b)
            .map(|k| k.iter().map(big_to_i64).collect())
    }

    /// All `k` in `window` with `sum k_i a_i = u`, lexicographically sorted.
    pub fn solve(&self, u: &[i64], window: &Window) -> Vec<Vec<i64>> {
        let Some(k0) = self.particular(u) else {
            return Vec::new();
        };
        if window.is_empty() {
            return Vec::new();
        }
        // Interval bounds on the lattice coordinates of k - k0 over the box.
        let ranges: Vec<(i64, i64)> = self
            .coords
            .iter()
            .map(|row| {
                let (mut lo, mut hi) = (Rational::zero(), Rational::zero());
                for (i, c) in row.iter().enumerate() {
                    let a = c * int(window.lo[i] - k0[i]);
                    let b = c * int(window.hi[i] - k0[i]);
                    if a < b {
                        lo += a;
                        hi += b;
                    } else {
                        lo += b;
                        hi += a;
                    }
                }
                (ceil_i64(&lo), floor_i64(&hi))
            })
            .collect();
        let mut out: Vec<Vec<i64>> = if self.lattice.rank == 0 {
            vec![k0.clone()]
        } else {
            ranges
                .iter()
                .map(|&(lo, hi)| lo..=hi)
                .multi_cartesian_product()
                .map(|c| {
                    let l = self.lattice.element(&c);
                    k0.iter().zip(&l).map(|(a, b)| a + b).collect()
                })
                .collect()
        };
        out.retain(|k| window.contains(k));
        out.sort();
        out
    }
}

pub fn solve_offsets(cfg: &LatticeConfig, u: &[i64], lattice: &RelationLattice, window: &Window) -> Vec<Vec<i64>> {
    OffsetSolver::new(cfg, lattice).solve(u, window)
}
