//! Relation lattices of lifted configurations and negative supports.

use std::collections::BTreeSet;
use std::ops::Deref;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::geometry::LatticeConfig;
use crate::linalg::{row_hnf, to_z, ColumnHermite};
use crate::rational::{big_to_i64, int, is_integer, Rational};

/// Default coefficient radius used when certifying minimal negative support.
pub const DEFAULT_SEARCH_BOUND: i64 = 50;

/// Integer basis of `L = { l : sum l_i a_i = 0 }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationLattice {
    pub n: usize,
    pub basis: Vec<Vec<i64>>,
    pub rank: usize,
}

impl RelationLattice {
    /// `sum c_j basis_j`.
    pub fn element(&self, coeffs: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.n];
        for (b, &c) in self.basis.iter().zip(coeffs) {
            for (o, &x) in out.iter_mut().zip(b) {
                *o += c * x;
            }
        }
        out
    }

    /// Whether `l` lies in the lattice.
    pub fn contains(&self, l: &[i64]) -> bool {
        if l.len() != self.n {
            return false;
        }
        if self.rank == 0 {
            return l.iter().all(|&x| x == 0);
        }
        let mut rows = self.basis.clone();
        rows.push(l.to_vec());
        row_hnf(&to_z(&rows), self.n).len() == self.rank
    }

    /// All coefficient vectors in `[-bound, bound]^rank`, lexicographically.
    fn coefficient_box(&self, bound: i64) -> impl Iterator<Item = Vec<i64>> + '_ {
        (0..self.rank)
            .map(|_| -bound..=bound)
            .multi_cartesian_product()
            .chain(std::iter::once(vec![]).filter(move |_| self.rank == 0))
    }
}

/// Rational exponent vector `v`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(pub Vec<Rational>);

impl Deref for ExponentVector {
    type Target = [Rational];
    fn deref(&self) -> &[Rational] {
        &self.0
    }
}

impl From<Vec<Rational>> for ExponentVector {
    fn from(v: Vec<Rational>) -> Self {
        Self(v)
    }
}

impl ExponentVector {
    pub fn zero(n: usize) -> Self {
        Self(vec![Rational::zero(); n])
    }

    pub fn shifted(&self, l: &[i64]) -> Self {
        Self(self.0.iter().zip(l).map(|(v, &x)| v + int(x)).collect())
    }
}

pub fn relation_lattice(cfg: &LatticeConfig) -> RelationLattice {
    let n = cfg.len();
    let rows = cfg.m + 1;
    let a: Vec<Vec<i64>> = (0..rows).map(|r| cfg.lifted.iter().map(|p| p[r]).collect()).collect();
    let ch = ColumnHermite::new(&to_z(&a), n);
    // Row HNF of the column-reversed kernel, reversed back: for rank one this
    // makes the last nonzero entry positive.
    let reversed: Vec<Vec<BigInt>> = ch
        .kernel()
        .into_iter()
        .map(|mut v| {
            v.reverse();
            v
        })
        .collect();
    let basis: Vec<Vec<i64>> = row_hnf(&reversed, n)
        .into_iter()
        .map(|mut v| {
            v.reverse();
            v.iter().map(big_to_i64).collect()
        })
        .collect();
    for l in &basis {
        debug_assert!(cfg.combine(l).iter().all(|&x| x == 0));
    }
    RelationLattice {
        n,
        rank: basis.len(),
        basis,
    }
}

/// Indices where `v` is a negative integer.
pub fn nsupp(v: &[Rational]) -> BTreeSet<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| x.is_negative() && is_integer(x))
        .map(|(i, _)| i)
        .collect()
}

/// No lattice translate in the coefficient box strictly shrinks `nsupp(v)`.
///
/// Certified only for coefficients in `[-bound, bound]^rank`.
pub fn has_minimal_negative_support(v: &[Rational], l: &RelationLattice, bound: i64) -> bool {
    let base = nsupp(v);
    if base.is_empty() {
        return true;
    }
    let ev = ExponentVector(v.to_vec());
    !l.coefficient_box(bound).any(|c| {
        let s = nsupp(&ev.shifted(&l.element(&c)));
        s.len() < base.len() && s.is_subset(&base)
    })
}

/// `{ l in L : nsupp(v + l) = nsupp(v) }` within the coefficient box,
/// ordered by coefficient vector.
pub fn lattice_slice_lv(v: &[Rational], l: &RelationLattice, bound: i64) -> Vec<Vec<i64>> {
    let base = nsupp(v);
    let ev = ExponentVector(v.to_vec());
    l.coefficient_box(bound)
        .map(|c| l.element(&c))
        .filter(|x| nsupp(&ev.shifted(x)) == base)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::lift_config;
    use crate::rational::rat;

    fn sparse5() -> LatticeConfig {
        let mut pts: Vec<Vec<i64>> = (0..5)
            .map(|i| {
                let mut e = vec![0; 5];
                e[i] = 1;
                e
            })
            .collect();
        pts.push(vec![9, 1, -5, -3, -2]);
        pts.push(vec![0; 5]);
        lift_config(&pts).unwrap()
    }

    fn sparse5_v() -> Vec<Rational> {
        vec![int(0), rat(-7, 9), rat(-1, 9), rat(-2, 3), rat(-4, 9), rat(-2, 9), rat(-7, 9)]
    }

    #[test]
    fn sparse5_lattice() {
        let l = relation_lattice(&sparse5());
        assert_eq!(l.rank, 1);
        assert_eq!(l.basis, vec![vec![9, 1, -5, -3, -2, -1, 1]]);
    }

    #[test]
    fn alpha_beta_lattice() {
        let cfg = LatticeConfig::alpha_beta(&[30, 1], &[15, 10, 6]).unwrap();
        let l = relation_lattice(&cfg);
        assert_eq!(l.basis, vec![vec![-1, -30, -1, 15, 10, 6, 1]]);
        assert!(l.contains(&[2, 60, 2, -30, -20, -12, -2]));
        assert!(!l.contains(&[1, 0, 0, 0, 0, 0, 0]));
    }

    #[test]
    fn independent_points_have_no_relations() {
        let cfg = lift_config(&[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
        let l = relation_lattice(&cfg);
        assert_eq!(l.rank, 0);
        assert!(l.basis.is_empty());
    }

    #[test]
    fn negative_support() {
        assert!(nsupp(&sparse5_v()).is_empty());
        let v = vec![int(-1), int(-1), int(0), int(0), int(0)];
        assert_eq!(nsupp(&v), BTreeSet::from([0, 1]));
        assert!(nsupp(&[int(0), int(0)]).is_empty());
    }

    #[test]
    fn minimality() {
        let cfg = LatticeConfig::alpha_beta(&[2], &[1, 1]).unwrap();
        let l = relation_lattice(&cfg);
        let v = vec![int(-1), int(-1), int(0), int(0), int(0)];
        assert!(has_minimal_negative_support(&v, &l, DEFAULT_SEARCH_BOUND));
        let l1 = relation_lattice(&sparse5());
        assert!(has_minimal_negative_support(&sparse5_v(), &l1, DEFAULT_SEARCH_BOUND));
        // subtracting gamma clears the only negative entry
        let w = vec![int(-1), int(0), int(1), int(1), int(1)];
        assert!(!has_minimal_negative_support(&w, &l, 5));
    }

    #[test]
    fn slices() {
        let l1 = relation_lattice(&sparse5());
        let lv = lattice_slice_lv(&sparse5_v(), &l1, 4);
        let expected: Vec<Vec<i64>> = (0..=4).map(|c| l1.element(&[c])).collect();
        assert_eq!(lv, expected);
        let zero = vec![int(0); 7];
        assert_eq!(lattice_slice_lv(&zero, &l1, 4), vec![vec![0; 7]]);
    }
}
