//! Quasisolutions `Psi^P_u`, their log-free components `Phi^Q_u`, the
//! combinations that solve the full system, and the closed form on
//! `Delta(alpha, beta)` configurations.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geometry::{cone_hrep, cone_sections, LatticeConfig};
use crate::rational::{factorial, int, Rational};
use crate::relations::{relation_lattice, RelationLattice};
use crate::series::{Coefficient, FormalSeries, OffsetSolver, Series, SolutionFamily, Window};

use super::logpoly::{LogPolynomial, SequenceP};
use super::mcoeff::{f_poly_in, m_coeff};

pub type LogSeries = Series<LogPolynomial>;

/// Whether the coefficient of `lambda^k` is forced to vanish: some index has
/// `rho_P(i) = 0` and `k_i < 0`.
pub fn forced_zero(p: &SequenceP, k: &[i64]) -> bool {
    p.rho().iter().zip(k).any(|(&r, &ki)| r == 0 && ki < 0)
}

fn zero_base(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

pub fn quasisolution_with(solver: &OffsetSolver, p: &SequenceP, u: &[i64], window: &Window) -> LogSeries {
    let n = p.n;
    let rho = p.rho();
    let mut s = LogSeries::new(zero_base(n), window.clone());
    for k in solver.solve(u, window) {
        if forced_zero(p, &k) {
            continue;
        }
        let c = (0..n).fold(LogPolynomial::constant(n, int(1)), |acc, i| {
            acc.mul(&f_poly_in(n, i, rho[i], k[i]))
        });
        s.insert(k, c);
    }
    s
}

/// `Psi^P_u` truncated to the window.
pub fn quasisolution(
    p: &SequenceP,
    u: &[i64],
    cfg: &LatticeConfig,
    lattice: &RelationLattice,
    window: &Window,
) -> LogSeries {
    quasisolution_with(&OffsetSolver::new(cfg, lattice), &p.canonical(), u, window)
}

pub fn phiq_series_with(solver: &OffsetSolver, q: &SequenceP, u: &[i64], window: &Window) -> FormalSeries {
    let rho = q.rho();
    let mut s = FormalSeries::new(zero_base(q.n), window.clone());
    for k in solver.solve(u, window) {
        if forced_zero(q, &k) {
            continue;
        }
        let c = rho
            .iter()
            .zip(&k)
            .fold(Rational::one(), |acc, (&r, &ki)| acc * m_coeff(ki, r));
        s.insert(k, c);
    }
    s
}

/// `Phi^Q_u = sum (prod_i M_{k_i, rho_Q(i)}) lambda^k`.
pub fn phiq_series(
    q: &SequenceP,
    u: &[i64],
    cfg: &LatticeConfig,
    lattice: &RelationLattice,
    window: &Window,
) -> FormalSeries {
    phiq_series_with(&OffsetSolver::new(cfg, lattice), q, u, window)
}

/// Rebuilds `Psi^P_u` as a sum over position subsets `J` of `P` of
/// `Phi^{P|J}_u` times the logs of the entries left out.
///
/// A multiplicity vector `rho` is hit by `prod_i C(rho_P(i), rho(i))` subsets
/// while the expansion of `Psi^P_u` carries `prod_i rho_P(i)!/(rho_P(i)-rho(i))!`,
/// so each subset is weighted by `prod_i rho_{P|J}(i)!`. The weight is 1 when
/// no index repeats inside `J`.
pub fn quasisolution_from_components(
    p: &SequenceP,
    u: &[i64],
    cfg: &LatticeConfig,
    lattice: &RelationLattice,
    window: &Window,
) -> LogSeries {
    let solver = OffsetSolver::new(cfg, lattice);
    let n = p.n;
    let mut cache: BTreeMap<SequenceP, FormalSeries> = BTreeMap::new();
    let mut out = LogSeries::new(zero_base(n), window.clone());
    for size in 0..=p.order() {
        for positions in (0..p.order()).combinations(size) {
            let q = p.subsequence(&positions).canonical();
            let phi = cache
                .entry(q.clone())
                .or_insert_with(|| phiq_series_with(&solver, &q, u, window));
            let weight = q
                .rho()
                .iter()
                .fold(Rational::one(), |acc, &r| acc * Rational::from_integer(factorial(r as u64)));
            let mut logs = vec![0u32; n];
            for (j, &pj) in p.p.iter().enumerate() {
                if !positions.contains(&j) {
                    logs[pj] += 1;
                }
            }
            for (k, c) in &phi.terms {
                let mut term = LogPolynomial::default();
                term.add_term(logs.clone(), c * &weight);
                out.insert(k.clone(), term);
            }
        }
    }
    out
}

/// `sum_{P in [N]^r} l^(1)_{p_1} ... l^(r)_{p_r} Psi^P_u`.
pub fn combine_solution_with(
    solver: &OffsetSolver,
    ls: &[Vec<i64>],
    u: &[i64],
    n: usize,
    window: &Window,
) -> LogSeries {
    // Quasisolutions depend only on the multiset of P, so gather weights first.
    let mut weights: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
    for p in (0..ls.len()).map(|_| 0..n).multi_cartesian_product() {
        let w = p.iter().zip(ls).fold(1i64, |acc, (&pj, l)| acc * l[pj]);
        if w != 0 {
            let mut key = p.clone();
            key.sort_unstable();
            *weights.entry(key).or_insert_with(Rational::zero) += int(w);
        }
    }
    if ls.is_empty() {
        weights.insert(Vec::new(), Rational::one());
    }
    let mut out = LogSeries::new(zero_base(n), window.clone());
    for (p, w) in weights {
        if w.is_zero() {
            continue;
        }
        let q = quasisolution_with(solver, &SequenceP::new(p, n), u, window);
        for (k, c) in q.terms {
            out.insert(k, c.scale(&w));
        }
    }
    out
}

pub fn combine_solution(
    ls: &[Vec<i64>],
    u: &[i64],
    cfg: &LatticeConfig,
    lattice: &RelationLattice,
    window: &Window,
) -> Result<LogSeries> {
    if let Some(bad) = ls.iter().find(|l| !lattice.contains(l)) {
        return Err(Error::Precondition(format!("{bad:?} is not a relation")));
    }
    Ok(combine_solution_with(&OffsetSolver::new(cfg, lattice), ls, u, cfg.len(), window))
}

/// `A_u = sum_P l^(1)_{p_1} ... l^(r)_{p_r} Psi^P_{-u}` for `u` in the cone up to degree `d`.
pub fn log_family(
    ls: &[Vec<i64>],
    cfg: &LatticeConfig,
    lattice: &RelationLattice,
    d: u32,
    window: &Window,
) -> Result<SolutionFamily<LogPolynomial>> {
    if let Some(bad) = ls.iter().find(|l| !lattice.contains(l)) {
        return Err(Error::Precondition(format!("{bad:?} is not a relation")));
    }
    let solver = OffsetSolver::new(cfg, lattice);
    let sections = cone_sections(cfg, d)?;
    let members = crate::par::map(&sections.members, |u| {
        let neg: Vec<i64> = u.iter().map(|x| -x).collect();
        (u.clone(), combine_solution_with(&solver, ls, &neg, cfg.len(), window))
    });
    Ok(SolutionFamily {
        beta: vec![0; cfg.m + 1],
        degree: d,
        members: members.into_iter().collect(),
    })
}

/// Closed form of `Psi^{(0,...,n)}_{-u}` on the `Delta(alpha, beta)`
/// configuration for `u` interior to the cone:
/// sum over `k_0..k_n < 0`, `k_{n+1}.. >= 0`, `sum k_i a_i = -u` of
/// `(-1)^{n+1-sum_{i<=n} k_i} prod_{i<=n} (-k_i-1)! / prod_{j>n} k_j!`.
pub fn closed_form_series(alpha: &[u64], beta: &[u64], u: &[i64], window: &Window) -> Result<FormalSeries> {
    let cfg = LatticeConfig::alpha_beta(alpha, beta)?;
    let n = alpha.len();
    let m = cfg.m;
    if m <= 2 * n {
        return Err(Error::Precondition(format!("needs m > 2n, got m = {m}, n = {n}")));
    }
    let cone = cone_hrep(&cfg)?;
    if u.len() != m + 1 || !cone.is_interior(u) {
        return Err(Error::Precondition(format!("{u:?} is not an interior lattice point of the cone")));
    }
    let lattice = relation_lattice(&cfg);
    let solver = OffsetSolver::new(&cfg, &lattice);
    let target: Vec<i64> = u.iter().map(|x| -x).collect();
    let mut s = FormalSeries::new(zero_base(cfg.len()), window.clone());
    for k in solver.solve(&target, window) {
        let (head, tail) = k.split_at(n + 1);
        if head.iter().any(|&x| x >= 0) || tail.iter().any(|&x| x < 0) {
            continue;
        }
        let exponent = n as i64 + 1 - head.iter().sum::<i64>();
        let num = head
            .iter()
            .fold(num_bigint::BigInt::one(), |acc, &x| acc * factorial((-x - 1) as u64));
        let den = tail
            .iter()
            .fold(num_bigint::BigInt::one(), |acc, &x| acc * factorial(x as u64));
        let sign = if exponent.rem_euclid(2) == 0 { int(1) } else { int(-1) };
        s.insert(k, sign * Rational::new(num, den));
    }
    Ok(s)
}
