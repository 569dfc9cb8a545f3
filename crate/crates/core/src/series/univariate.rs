//! One-variable specializations and polynomial relations `P(t, y(t)) = 0`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

use super::formal::FormalSeries;

/// Coefficients `c_0, c_1, ...` of a power series in `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnivariateSeries {
    pub coeffs: Vec<Rational>,
}

impl UnivariateSeries {
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Collapses a series supported on one line `k_min + l gamma` to the
/// coefficients of `t^l`, each multiplied by `scale^l`.
pub fn specialize(s: &FormalSeries, gamma: &[i64], scale: &Rational) -> Result<UnivariateSeries> {
    let Some((first, _)) = s.terms.iter().next() else {
        return Ok(UnivariateSeries { coeffs: Vec::new() });
    };
    let pivot = gamma
        .iter()
        .position(|&g| g != 0)
        .ok_or_else(|| Error::Precondition("direction vector is zero".into()))?;
    let mut by_l: BTreeMap<i64, Rational> = BTreeMap::new();
    for (k, c) in &s.terms {
        let d: Vec<i64> = k.iter().zip(first).map(|(a, b)| a - b).collect();
        if d[pivot] % gamma[pivot] != 0 {
            return Err(Error::Precondition(format!("offset {k:?} is off the line")));
        }
        let l = d[pivot] / gamma[pivot];
        if d.iter().zip(gamma).any(|(x, g)| *x != l * g) {
            return Err(Error::Precondition(format!("offset {k:?} is off the line")));
        }
        by_l.insert(l, c.clone());
    }
    let lo = *by_l.keys().next().unwrap();
    let hi = *by_l.keys().last().unwrap();
    let mut coeffs = Vec::with_capacity((hi - lo + 1) as usize);
    let mut power = Rational::one();
    for l in lo..=hi {
        coeffs.push(by_l.get(&l).map_or_else(Rational::zero, |c| c * &power));
        power *= scale;
    }
    Ok(UnivariateSeries { coeffs })
}

/// `P(t, y) = sum c_{a,b} t^a y^b`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BivariatePoly {
    pub terms: BTreeMap<(u32, u32), Rational>,
}

impl BivariatePoly {
    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Rational)>) -> Self {
        let mut p = Self::default();
        for (e, c) in terms {
            *p.terms.entry(e).or_insert_with(Rational::zero) += c;
        }
        p.terms.retain(|_, c| !c.is_zero());
        p
    }

    fn y_degree(&self) -> u32 {
        self.terms.keys().map(|&(_, b)| b).max().unwrap_or(0)
    }
}

fn mul_trunc(a: &[Rational], b: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `P(t, y(t)) = 0 mod t^{K+1}`. Needs at least `K+1` coefficients of `y`.
pub fn verify_polynomial_relation(y: &UnivariateSeries, p: &BivariatePoly, k: usize) -> Result<bool> {
    let len = k + 1;
    if y.len() < len {
        return Err(Error::WindowExhausted(format!(
            "{} coefficients available, {len} needed",
            y.len()
        )));
    }
    let y: Vec<Rational> = y.coeffs[..len].to_vec();
    let mut powers = vec![{
        let mut one = vec![Rational::zero(); len];
        one[0] = Rational::one();
        one
    }];
    for _ in 0..p.y_degree() {
        let next = mul_trunc(powers.last().unwrap(), &y, len);
        powers.push(next);
    }
    let mut total = vec![Rational::zero(); len];
    for (&(a, b), c) in &p.terms {
        let a = a as usize;
        for i in a..len {
            total[i] += c * &powers[b as usize][i - a];
        }
    }
    Ok(total.iter().all(Zero::is_zero))
}
