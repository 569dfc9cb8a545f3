//! The series `Phi_{v,u}`, `Psi_v` and the families `A_u = Phi_{v,-beta-u}`.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{cone_sections, LatticeConfig};
use crate::linalg::{rank, solve_square, to_q};
use crate::rational::{format_rational, int, is_integer, to_i64, Rational};
use crate::relations::{nsupp, ExponentVector, RelationLattice};

use super::bracket::bracket_vec;
use super::formal::{FormalSeries, Series};
use super::offsets::OffsetSolver;
use super::window::Window;

/// `{A_u}` indexed by lattice points `u` of the cone up to a degree bound.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionFamily<C> {
    pub beta: Vec<i64>,
    pub degree: u32,
    pub members: BTreeMap<Vec<i64>, Series<C>>,
}

fn integral_vector(x: &[Rational], what: &str) -> Result<Vec<i64>> {
    x.iter()
        .map(|r| {
            to_i64(r).ok_or_else(|| Error::Precondition(format!("{what} is not integral: {}", format_rational(r))))
        })
        .collect()
}

/// `Phi_{v,u} = sum_{sum k_i a_i = u} [v]_k lambda^(v+k)` over the window.
pub fn phi_series_with(solver: &OffsetSolver, v: &[Rational], u: &[i64], window: &Window) -> Result<FormalSeries> {
    let mut s = FormalSeries::new(v.to_vec(), window.clone());
    for k in solver.solve(u, window) {
        let c = bracket_vec(v, &k)?;
        s.insert(k, c);
    }
    Ok(s)
}

pub fn phi_series(
    v: &[Rational],
    u: &[i64],
    cfg: &LatticeConfig,
    lattice: &RelationLattice,
    window: &Window,
) -> Result<FormalSeries> {
    phi_series_with(&OffsetSolver::new(cfg, lattice), v, u, window)
}

/// `A_u = Phi_{v,-beta-u}` for every `u` in the cone of degree at most `d`,
/// where `beta = sum v_i a_i` must be integral and match `beta`.
pub fn a_family(
    v: &[Rational],
    beta: &[i64],
    cfg: &LatticeConfig,
    lattice: &RelationLattice,
    d: u32,
    window: &Window,
) -> Result<SolutionFamily<Rational>> {
    let computed = integral_vector(&cfg.combine_rational(v), "sum v_i a_i")?;
    if computed != beta {
        return Err(Error::Precondition(format!(
            "sum v_i a_i = {computed:?} does not match beta = {beta:?}"
        )));
    }
    let solver = OffsetSolver::new(cfg, lattice);
    let sections = cone_sections(cfg, d)?;
    let built = crate::par::map(&sections.members, |u| {
        let target: Vec<i64> = beta.iter().zip(u).map(|(b, x)| -b - x).collect();
        phi_series_with(&solver, v, &target, window).map(|s| (u.clone(), s))
    });
    Ok(SolutionFamily {
        beta: beta.to_vec(),
        degree: d,
        members: built.into_iter().collect::<Result<_>>()?,
    })
}

/// Lattice points of `L` inside the window.
pub fn lattice_points_in(solver: &OffsetSolver, n_rows: usize, window: &Window) -> Vec<Vec<i64>> {
    solver.solve(&vec![0; n_rows], window)
}

/// `Psi_v = sum_{l in L_v} [v]_l lambda^(v+l)` with `L_v` cut to the window.
///
/// Minimality of the negative support is checked against the lattice points
/// in the window.
pub fn psi_mns_series(
    v: &[Rational],
    cfg: &LatticeConfig,
    lattice: &RelationLattice,
    window: &Window,
) -> Result<FormalSeries> {
    let solver = OffsetSolver::new(cfg, lattice);
    let base = nsupp(v);
    let ev = ExponentVector(v.to_vec());
    let points = lattice_points_in(&solver, cfg.m + 1, window);
    let mut s = FormalSeries::new(v.to_vec(), window.clone());
    for l in points {
        let supp = nsupp(&ev.shifted(&l));
        if supp.len() < base.len() && supp.is_subset(&base) {
            return Err(Error::Precondition(format!(
                "negative support of v is not minimal: translate by {l:?} shrinks it"
            )));
        }
        if supp == base {
            let c = bracket_vec(v, &l)?;
            s.insert(l, c);
        }
    }
    Ok(s)
}

/// Solves `sum_{i in S} v_i a_i = -u0` on an `(m+1)`-subset `S` with
/// independent `a_i` and all `v_i` in `[-1, 0]`.
///
/// Without an explicit subset the first admissible one in lexicographic order wins.
pub fn construct_v(cfg: &LatticeConfig, u0: &[i64], subset: Option<&[usize]>) -> Result<ExponentVector> {
    let dim = cfg.m + 1;
    if u0.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: u0.len(),
        });
    }
    let try_subset = |s: &[usize]| -> Option<ExponentVector> {
        if s.len() != dim || s.iter().any(|&i| i >= cfg.len()) {
            return None;
        }
        let cols: Vec<Vec<i64>> = s.iter().map(|&i| cfg.lifted[i].clone()).collect();
        if rank(&to_q(&cols)) < dim {
            return None;
        }
        let m: Vec<Vec<Rational>> = (0..dim).map(|r| cols.iter().map(|c| int(c[r])).collect()).collect();
        let rhs: Vec<Rational> = u0.iter().map(|&x| int(-x)).collect();
        let x = solve_square(&m, &rhs)?;
        if x.iter().any(|xi| xi > &Rational::zero() || xi < &int(-1)) {
            return None;
        }
        let mut v = vec![Rational::zero(); cfg.len()];
        for (&i, xi) in s.iter().zip(x) {
            v[i] = xi;
        }
        Some(ExponentVector(v))
    };
    match subset {
        Some(s) => try_subset(s).ok_or(Error::NoAdmissibleSubset),
        None => (0..cfg.len())
            .combinations(dim)
            .find_map(|s| try_subset(&s))
            .ok_or(Error::NoAdmissibleSubset),
    }
}

/// Data of the shifted exponent used to build the algebraic family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftedExponent {
    /// `v'_i = v_i - 1` where `v_i < 0`, else `v_i`.
    pub v_prime: ExponentVector,
    /// `sum_{v_i < 0} a_i`.
    pub u1: Vec<i64>,
    /// `sum v'_i a_i`.
    pub beta: Vec<i64>,
}

pub fn shift_exponent(v: &[Rational], cfg: &LatticeConfig) -> Result<ShiftedExponent> {
    if v.len() != cfg.len() {
        return Err(Error::DimensionMismatch {
            expected: cfg.len(),
            found: v.len(),
        });
    }
    if let Some(bad) = v.iter().find(|x| x.is_positive() || x <= &&int(-1)) {
        return Err(Error::Precondition(format!(
            "entry {} lies outside (-1, 0]",
            format_rational(bad)
        )));
    }
    let v_prime: Vec<Rational> = v
        .iter()
        .map(|x| if x.is_negative() { x - Rational::one() } else { x.clone() })
        .collect();
    let weights: Vec<i64> = v.iter().map(|x| i64::from(x.is_negative())).collect();
    let u1 = cfg.combine(&weights);
    let beta = integral_vector(&cfg.combine_rational(&v_prime), "sum v'_i a_i")?;
    Ok(ShiftedExponent {
        v_prime: ExponentVector(v_prime),
        u1,
        beta,
    })
}

/// The family `A_u = Phi_{v', -beta-u}` built from the shifted exponent of `v`.
pub fn algebraic_family(
    v: &[Rational],
    cfg: &LatticeConfig,
    lattice: &RelationLattice,
    d: u32,
    window: &Window,
) -> Result<(ShiftedExponent, SolutionFamily<Rational>)> {
    let shift = shift_exponent(v, cfg)?;
    let fam = a_family(&shift.v_prime, &shift.beta, cfg, lattice, d, window)?;
    Ok((shift, fam))
}

/// `prod_{v_i < 0} v_i`.
pub fn negative_product(v: &[Rational]) -> Rational {
    v.iter()
        .filter(|x| x.is_negative())
        .fold(Rational::one(), |acc, x| acc * x)
}

/// Checks `v` is integral where the caller needs integer exponents.
pub fn require_integral(v: &[Rational]) -> Result<Vec<i64>> {
    if v.iter().all(is_integer) {
        integral_vector(v, "exponent")
    } else {
        Err(Error::Precondition("exponent vector is not integral".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::lift_config;
    use crate::rational::rat;
    use crate::relations::relation_lattice;

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
    fn trivial_family() {
        let cfg = LatticeConfig::alpha_beta(&[2], &[1, 1]).unwrap();
        let l = relation_lattice(&cfg);
        let w = Window::lattice_ball(&l, 3, 3);
        let fam = a_family(&vec![int(0); 5], &[0; 4], &cfg, &l, 2, &w).unwrap();
        for (u, s) in &fam.members {
            if u.iter().all(|&x| x == 0) {
                assert_eq!(s.terms.len(), 1);
                assert_eq!(s.coeff(&[0; 5]), Some(&int(1)));
            } else {
                assert!(s.is_zero(), "A_{u:?} should vanish");
            }
        }
        assert!(a_family(&vec![int(0); 5], &[1, 0, 0, 0], &cfg, &l, 1, &w).is_err());
    }

    #[test]
    fn construct_sparse5() {
        let cfg = sparse5();
        let v = construct_v(&cfg, &[2, 1, -1, 0, 0, 3], Some(&[1, 2, 3, 4, 5, 6])).unwrap();
        assert_eq!(v.0, sparse5_v());
        assert!(matches!(
            construct_v(&cfg, &[2, 1, -1, 0, 0, 3], Some(&[0, 1, 2, 3, 4, 6])),
            Err(Error::NoAdmissibleSubset)
        ));
    }

    #[test]
    fn construct_alpha_beta() {
        let cfg = LatticeConfig::alpha_beta(&[2], &[1, 1]).unwrap();
        let v = construct_v(&cfg, &[1, 0, 0, 2], None).unwrap();
        assert_eq!(v.0, vec![int(-1), int(-1), int(0), int(0), int(0)]);
    }

    #[test]
    fn shift_rule() {
        let cfg = sparse5();
        let s = shift_exponent(&sparse5_v(), &cfg).unwrap();
        let expected = vec![int(0), rat(-16, 9), rat(-10, 9), rat(-5, 3), rat(-13, 9), rat(-11, 9), rat(-16, 9)];
        assert_eq!(s.v_prime.0, expected);
        assert_eq!(s.u1, cfg.combine(&[0, 1, 1, 1, 1, 1, 1]));
        let u0: [i64; 6] = [2, 1, -1, 0, 0, 3];
        let sum: Vec<i64> = u0.iter().zip(&s.u1).map(|(a, b)| -a - b).collect();
        assert_eq!(s.beta, sum);
        let z = shift_exponent(&vec![int(0); 7], &cfg).unwrap();
        assert_eq!(z.u1, vec![0; 6]);
        assert_eq!(z.beta, vec![0; 6]);
        let ab = LatticeConfig::alpha_beta(&[2], &[1, 1]).unwrap();
        assert!(shift_exponent(&[int(-1), int(-1), int(0), int(0), int(0)], &ab).is_err());
    }

    #[test]
    fn psi_central_binomials() {
        let cfg = LatticeConfig::alpha_beta(&[2], &[1, 1]).unwrap();
        let l = relation_lattice(&cfg);
        let v = vec![int(-1), int(-1), int(0), int(0), int(0)];
        let s = psi_mns_series(&v, &cfg, &l, &Window::lattice_ball(&l, 4, 0)).unwrap();
        let unsigned: Vec<Rational> = (0..=4).map(|c| s.coeff(&l.element(&[c])).unwrap().abs()).collect();
        assert_eq!(unsigned, vec![int(1), int(2), int(6), int(20), int(70)]);
        assert_eq!(s.terms.len(), 5);
    }
}
