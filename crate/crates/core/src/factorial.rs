//! Factorial ratios `u_k = prod (alpha_i k)! / prod (beta_j k)!`, three
//! independent integrality tests, the Dwork prime map and p-adic reports.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{cone_hrep, delta_alpha_beta, dilate, first_interior_lattice_point, LatticeConfig};
use crate::logseries::closed_form_series;
use crate::rational::{
    factorial, format_rational, int, is_p_integral, is_prime, prime_factors, primes_up_to, rat, to_i64, valuation,
    FactorialTable, Rational,
};
use crate::series::{FormalSeries, Window};

/// Balanced pair of positive integer lists with `sum alpha = sum beta`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RatioSpec {
    pub alpha: Vec<u64>,
    pub beta: Vec<u64>,
}

impl RatioSpec {
    pub fn new(alpha: Vec<u64>, beta: Vec<u64>) -> Result<Self> {
        let sa: u64 = alpha.iter().sum();
        let sb: u64 = beta.iter().sum();
        if sa != sb || alpha.is_empty() || beta.is_empty() || alpha.iter().chain(&beta).any(|&x| x == 0) {
            return Err(Error::Unbalanced { alpha: sa, beta: sb });
        }
        Ok(Self { alpha, beta })
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn m(&self) -> usize {
        self.alpha.len() + self.beta.len()
    }

    /// `m = 2n + 1`, the regime where integrality goes with algebraicity.
    pub fn algebraic_regime(&self) -> bool {
        self.m() == 2 * self.n() + 1
    }

    /// `beta` is a rearrangement of `alpha`, so every term is 1.
    pub fn is_trivial(&self) -> bool {
        let mut a = self.alpha.clone();
        let mut b = self.beta.clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }

    pub fn label(&self) -> String {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        format!("({};{})", join(&self.alpha), join(&self.beta))
    }
}

pub fn ratio_term(spec: &RatioSpec, k: u64) -> Rational {
    let num = spec.alpha.iter().fold(BigInt::one(), |acc, &a| acc * factorial(a * k));
    let den = spec.beta.iter().fold(BigInt::one(), |acc, &b| acc * factorial(b * k));
    Rational::new(num, den)
}

/// Verdict of the polytope criterion, with an interior point of `n Delta` when one exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub integral: bool,
    pub witness: Option<Vec<i64>>,
}

/// Integral for every `k` iff `n Delta(alpha, beta)` has no interior lattice point.
pub fn classify_integrality(spec: &RatioSpec) -> Result<Classification> {
    let delta = delta_alpha_beta(&spec.alpha, &spec.beta)?;
    let scaled = dilate(&delta, spec.n() as i64)?;
    let witness = first_interior_lattice_point(&scaled);
    Ok(Classification {
        integral: witness.is_none(),
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectCheck {
    pub integral: bool,
    pub first_failure: Option<u64>,
    pub checked_up_to: u64,
}

/// Checks `u_1, ..., u_K` with big-integer factorials.
pub fn direct_integrality(spec: &RatioSpec, k_max: u64) -> DirectCheck {
    let top = spec.alpha.iter().chain(&spec.beta).max().copied().unwrap_or(0) * k_max;
    let mut table = FactorialTable::new(top);
    for k in 1..=k_max {
        let num = spec.alpha.iter().fold(BigInt::one(), |acc, &a| acc * table.get(a * k));
        let den = spec.beta.iter().fold(BigInt::one(), |acc, &b| acc * table.get(b * k));
        if !(num % den).is_zero() {
            return DirectCheck {
                integral: false,
                first_failure: Some(k),
                checked_up_to: k_max,
            };
        }
    }
    DirectCheck {
        integral: true,
        first_failure: None,
        checked_up_to: k_max,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LandauCheck {
    pub holds: bool,
    /// First breakpoint in `(0, 1)` where the step function goes negative.
    pub failing_at: Option<String>,
}

/// `sum floor(alpha_i x) - sum floor(beta_j x) >= 0` on `[0, 1)`.
///
/// The function is constant between consecutive breakpoints `c / alpha_i`
/// and `c / beta_j` and right-continuous, so it suffices to evaluate there.
pub fn landau_check(spec: &RatioSpec) -> LandauCheck {
    let mut points = BTreeSet::new();
    for &d in spec.alpha.iter().chain(&spec.beta) {
        for c in 1..d {
            points.insert(rat(c as i64, d as i64));
        }
    }
    let step = |x: &Rational| -> BigInt {
        let part = |v: &[u64]| v.iter().map(|&a| (x * int(a as i64)).floor().to_integer()).sum::<BigInt>();
        part(&spec.alpha) - part(&spec.beta)
    };
    match points.iter().find(|x| step(x).is_negative()) {
        Some(x) => LandauCheck {
            holds: false,
            failing_at: Some(format_rational(x)),
        },
        None => LandauCheck {
            holds: true,
            failing_at: None,
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleVerdicts {
    pub polytope: bool,
    pub direct: bool,
    pub landau: bool,
}

impl OracleVerdicts {
    pub fn agree(&self) -> bool {
        self.polytope == self.direct && self.direct == self.landau
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioReport {
    pub spec: RatioSpec,
    pub integral: bool,
    pub witness: Option<Vec<i64>>,
    pub algebraic_regime: bool,
    pub trivial: bool,
    pub oracles: OracleVerdicts,
    pub direct_first_failure: Option<u64>,
    pub direct_bound: u64,
    pub landau_failing_at: Option<String>,
}

/// Runs the polytope criterion and both independent oracles on one spec.
pub fn ratio_report(spec: &RatioSpec, k_max: u64) -> Result<RatioReport> {
    let class = classify_integrality(spec)?;
    let direct = direct_integrality(spec, k_max);
    let landau = landau_check(spec);
    Ok(RatioReport {
        spec: spec.clone(),
        integral: class.integral,
        witness: class.witness,
        algebraic_regime: spec.algebraic_regime(),
        trivial: spec.is_trivial(),
        oracles: OracleVerdicts {
            polytope: class.integral,
            direct: direct.integral,
            landau: landau.holds,
        },
        direct_first_failure: direct.first_failure,
        direct_bound: k_max,
        landau_failing_at: landau.failing_at,
    })
}

/// Nonincreasing lists of positive integers of the given length summing to `total`.
fn partitions(total: u64, len: usize, max_part: u64) -> Vec<Vec<u64>> {
    if len == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (1..=max_part.min(total)).rev() {
        for mut rest in partitions(total - first, len - 1, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every balanced spec with `sum alpha <= max_sum`, `n <= max_n` and
/// `m - n <= max_extra`, with both lists taken as multisets.
pub fn enumerate_specs(max_sum: u64, max_n: usize, max_extra: usize) -> Vec<RatioSpec> {
    let mut out = Vec::new();
    for s in 1..=max_sum {
        for n in 1..=max_n {
            for alpha in partitions(s, n, s) {
                for k in 1..=max_extra {
                    for beta in partitions(s, k, s) {
                        out.push(RatioSpec {
                            alpha: alpha.clone(),
                            beta,
                        });
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Reports for every spec of [`enumerate_specs`], in sorted spec order.
pub fn sweep(max_sum: u64, max_n: usize, max_extra: usize, k_max: u64) -> Result<Vec<RatioReport>> {
    let specs = enumerate_specs(max_sum, max_n, max_extra);
    crate::par::map(&specs, |s| ratio_report(s, k_max)).into_iter().collect()
}

/// The unique `r'` in `(-1, 0]`, p-integral, with `p r' - r` integral.
pub fn dwork_map(r: &Rational, p: u64) -> Result<Rational> {
    if !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    if !is_p_integral(r, p) {
        return Err(Error::NotPIntegral {
            value: format_rational(r),
            p,
        });
    }
    if r.is_positive() || r <= &int(-1) {
        return Err(Error::Precondition(format!("{} lies outside (-1, 0]", format_rational(r))));
    }
    let b = r.denom().clone();
    let s = r.numer().clone();
    // t = s p^{-1} mod b, then moved into (-b, 0]
    let inv = BigInt::from(p).extended_gcd(&b).x.mod_floor(&b);
    let mut t = (s * inv).mod_floor(&b);
    if !t.is_zero() {
        t -= &b;
    }
    Ok(Rational::new(t, b))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DworkOrbit {
    pub p: u64,
    /// `v^(0) = v, v^(1), ...`
    pub elements: Vec<Vec<Rational>>,
    /// `-sum v^(k)_i a_i` when integral.
    pub points: Vec<Option<Vec<i64>>>,
    pub target_height: i64,
    pub ok: bool,
}

/// Iterates the Dwork map on `v` and checks that every `-sum v^(k)_i a_i`
/// is an interior lattice point of the cone with the same last coordinate as
/// the starting point.
pub fn dwork_orbit(v: &[Rational], cfg: &LatticeConfig, p: u64, iterations: usize) -> Result<DworkOrbit> {
    if v.len() != cfg.len() {
        return Err(Error::DimensionMismatch {
            expected: cfg.len(),
            found: v.len(),
        });
    }
    let cone = cone_hrep(cfg)?;
    let point_of = |w: &[Rational]| -> Option<Vec<i64>> {
        cfg.combine_rational(w).iter().map(|x| to_i64(&-x)).collect()
    };
    let start = point_of(v)
        .filter(|u| cone.is_interior(u))
        .ok_or_else(|| Error::Precondition("-sum v_i a_i is not an interior lattice point of the cone".into()))?;
    let target_height = *start.last().expect("nonempty point");
    let mut elements = vec![v.to_vec()];
    let mut points = vec![Some(start)];
    let mut ok = true;
    for _ in 0..iterations {
        let next: Vec<Rational> = elements
            .last()
            .unwrap()
            .iter()
            .map(|r| dwork_map(r, p))
            .collect::<Result<_>>()?;
        let u = point_of(&next);
        ok &= u
            .as_ref()
            .is_some_and(|u| cone.is_interior(u) && u.last() == Some(&target_height));
        elements.push(next);
        points.push(u);
    }
    Ok(DworkOrbit {
        p,
        elements,
        points,
        target_height,
        ok,
    })
}

pub fn dwork_orbit_check(v: &[Rational], cfg: &LatticeConfig, p: u64, iterations: usize) -> Result<bool> {
    Ok(dwork_orbit(v, cfg, p, iterations)?.ok)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OffendingTerm {
    pub offset: Vec<i64>,
    pub coefficient: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeValuation {
    /// Largest power of `p` found in a coefficient denominator.
    pub max_valuation: u32,
    /// First term, in offset order, attaining it when it is positive.
    pub offending: Option<OffendingTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PIntegralityReport {
    pub window: Window,
    pub terms_scanned: usize,
    pub primes: BTreeMap<u64, PrimeValuation>,
}

impl PIntegralityReport {
    pub fn is_clean(&self) -> bool {
        self.primes.values().all(|v| v.max_valuation == 0)
    }

    pub fn valuation(&self, p: u64) -> Option<u32> {
        self.primes.get(&p).map(|v| v.max_valuation)
    }
}

/// Primes up to `bound` that divide no denominator of `v`.
pub fn default_primes(v: &[Rational], bound: u64) -> Vec<u64> {
    primes_up_to(bound)
        .into_iter()
        .filter(|&p| v.iter().all(|r| is_p_integral(r, p)))
        .collect()
}

/// Largest p-adic denominator valuation over the coefficients in the window.
pub fn p_integrality_report(s: &FormalSeries, primes: &[u64], window: &Window) -> PIntegralityReport {
    let terms: Vec<(&Vec<i64>, &Rational)> = s.terms.iter().filter(|(k, _)| window.contains(k)).collect();
    let primes = primes
        .iter()
        .map(|&p| {
            let mut best = PrimeValuation {
                max_valuation: 0,
                offending: None,
            };
            for (k, c) in &terms {
                let v = valuation(c.denom(), p);
                if v > best.max_valuation {
                    best = PrimeValuation {
                        max_valuation: v,
                        offending: Some(OffendingTerm {
                            offset: (*k).clone(),
                            coefficient: format_rational(c),
                        }),
                    };
                }
            }
            (p, best)
        })
        .collect();
    PIntegralityReport {
        window: window.clone(),
        terms_scanned: terms.len(),
        primes,
    }
}

/// Integrality scan of the closed-form log-free series at `-u` for an
/// integral spec with `m > 2n`. Covers every prime up to 50 and every prime
/// that divides some denominator, so a clean report means integral
/// coefficients on the window.
pub fn closed_form_integrality_report(
    alpha: &[u64],
    beta: &[u64],
    u: &[i64],
    window: &Window,
) -> Result<PIntegralityReport> {
    let spec = RatioSpec::new(alpha.to_vec(), beta.to_vec())?;
    if let Some(w) = classify_integrality(&spec)?.witness {
        return Err(Error::Precondition(format!(
            "n Delta has the interior lattice point {w:?}"
        )));
    }
    let s = closed_form_series(alpha, beta, u, window)?;
    let mut primes: BTreeSet<u64> = primes_up_to(50).into_iter().collect();
    for c in s.terms.values() {
        if !c.denom().is_one() {
            primes.extend(prime_factors(c.denom()));
        }
    }
    let primes: Vec<u64> = primes.into_iter().collect();
    Ok(p_integrality_report(&s, &primes, window))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(a: &[u64], b: &[u64]) -> RatioSpec {
        RatioSpec::new(a.to_vec(), b.to_vec()).unwrap()
    }

    #[test]
    fn terms() {
        assert_eq!(ratio_term(&spec(&[2], &[1, 1]), 0), int(1));
        assert_eq!(ratio_term(&spec(&[2], &[1, 1]), 3), int(20));
        assert_eq!(ratio_term(&spec(&[1, 1], &[2]), 2), rat(1, 6));
        assert!(RatioSpec::new(vec![2], vec![1]).is_err());
        assert!(RatioSpec::new(vec![0, 2], vec![2]).is_err());
    }

    #[test]
    fn classifier_examples() {
        assert!(classify_integrality(&spec(&[2], &[1, 1])).unwrap().integral);
        assert!(classify_integrality(&spec(&[30, 1], &[15, 10, 6])).unwrap().integral);
        let c = classify_integrality(&spec(&[1, 1], &[2])).unwrap();
        assert!(!c.integral);
        let w = c.witness.unwrap();
        let scaled = dilate(&delta_alpha_beta(&[1, 1], &[2]).unwrap(), 2).unwrap();
        assert!(scaled.strictly_contains(&w));
    }

    #[test]
    fn direct_examples() {
        assert!(direct_integrality(&spec(&[2], &[1, 1]), 200).integral);
        let d = direct_integrality(&spec(&[1, 1], &[2]), 10);
        assert_eq!(d.first_failure, Some(1));
        assert!(direct_integrality(&spec(&[6, 1], &[3, 2, 2]), 100).integral);
    }

    #[test]
    fn landau_examples() {
        assert!(landau_check(&spec(&[2], &[1, 1])).holds);
        let l = landau_check(&spec(&[1, 1], &[2]));
        assert_eq!(l.failing_at.as_deref(), Some("1/2"));
        assert!(landau_check(&spec(&[30, 1], &[15, 10, 6])).holds);
    }

    #[test]
    fn report_flags() {
        let r = ratio_report(&spec(&[2], &[1, 1]), 50).unwrap();
        assert!(r.integral && r.algebraic_regime && r.oracles.agree());
        let r = ratio_report(&spec(&[4], &[2, 1, 1]), 50).unwrap();
        assert!(r.integral && !r.algebraic_regime);
    }

    #[test]
    fn spec_enumeration() {
        let specs = enumerate_specs(3, 2, 2);
        assert!(specs.contains(&spec(&[2], &[1, 1])));
        assert!(specs.contains(&spec(&[2, 1], &[3])));
        assert!(!specs.contains(&spec(&[1, 2], &[3])));
        assert!(specs.iter().all(|s| s.n() <= 2 && s.beta.len() <= 2));
        assert_eq!(partitions(4, 2, 4), vec![vec![3, 1], vec![2, 2]]);
    }

    #[test]
    fn dwork_examples() {
        for p in [2, 3, 5, 7] {
            assert_eq!(dwork_map(&int(0), p).unwrap(), int(0));
        }
        assert_eq!(dwork_map(&rat(-7, 9), 7).unwrap(), rat(-1, 9));
        assert!(dwork_map(&rat(-1, 2), 2).is_err());
        assert!(dwork_map(&rat(1, 3), 2).is_err());
        assert!(dwork_map(&int(-1), 2).is_err());
        // p r' - r integral
        let r = rat(-4, 9);
        let r2 = dwork_map(&r, 5).unwrap();
        assert!((r2.clone() * int(5) - r).is_integer());
    }

    #[test]
    fn orbit_rejects_zero() {
        let cfg = LatticeConfig::alpha_beta(&[2], &[1, 1]).unwrap();
        assert!(dwork_orbit_check(&vec![int(0); 5], &cfg, 2, 3).is_err());
    }

    #[test]
    fn closed_form_report_at_u0() {
        let cfg = LatticeConfig::alpha_beta(&[2], &[1, 1]).unwrap();
        let l = crate::relations::relation_lattice(&cfg);
        let w = Window::lattice_ball(&l, 8, 2);
        let r = closed_form_integrality_report(&[2], &[1, 1], &[1, 0, 0, 2], &w).unwrap();
        assert!(r.is_clean());
        assert!(r.terms_scanned > 0);
        assert!(closed_form_integrality_report(&[2], &[1, 1], &[0, 0, 0, 1], &w).is_err());
        assert!(closed_form_integrality_report(&[1, 1], &[2], &[1, 1, 0, 3], &w).is_err());
    }
}
