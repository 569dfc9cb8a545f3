//! Truncated multivariate series `sum_k c_k lambda^(v + k)`.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::LatticeConfig;
use crate::rational::{format_rational, int, is_integer, to_i64, Rational};

use super::window::Window;

/// Coefficient ring for series terms.
pub trait Coefficient: Clone + PartialEq + Debug + Send + Sync {
    fn additive_zero() -> Self;
    fn vanishes(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    /// Coefficient of `lambda^w` in `lambda_j d/dlambda_j (c lambda^w)`, given `w_j`.
    fn theta(&self, j: usize, w_j: &Rational) -> Self;
    fn render(&self) -> String;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&int(-1)))
    }
}

impl Coefficient for Rational {
    fn additive_zero() -> Self {
        Zero::zero()
    }

    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn scale(&self, r: &Rational) -> Self {
        self * r
    }

    fn theta(&self, _j: usize, w_j: &Rational) -> Self {
        self * w_j
    }

    fn render(&self) -> String {
        format_rational(self)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series<C> {
    pub base: Vec<Rational>,
    pub terms: BTreeMap<Vec<i64>, C>,
    pub window: Window,
}

pub type FormalSeries = Series<Rational>;

impl<C: Coefficient> Series<C> {
    pub fn new(base: Vec<Rational>, window: Window) -> Self {
        assert_eq!(base.len(), window.dim(), "base and window dimensions differ");
        Self {
            base,
            terms: BTreeMap::new(),
            window,
        }
    }

    pub fn n(&self) -> usize {
        self.base.len()
    }

    /// Adds `c` to the coefficient at `k`, dropping the term if it cancels.
    pub fn insert(&mut self, k: Vec<i64>, c: C) {
        if c.vanishes() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(old) => {
                let s = old.add(&c);
                if s.vanishes() {
                    self.terms.remove(&k);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn coeff(&self, k: &[i64]) -> Option<&C> {
        self.terms.get(k)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = Self::new(self.base.clone(), self.window.clone());
        for (k, c) in &self.terms {
            out.insert(k.clone(), c.scale(r));
        }
        out
    }

    /// `self + r * other` on the common window; bases must agree.
    pub fn add_scaled(&self, other: &Self, r: &Rational) -> Result<Self> {
        if self.base != other.base {
            return Err(Error::Precondition("adding series with different bases".into()));
        }
        let mut out = self.restrict(&self.window.intersect(&other.window));
        for (k, c) in &other.terms {
            if out.window.contains(k) {
                out.insert(k.clone(), c.scale(r));
            }
        }
        Ok(out)
    }

    pub fn restrict(&self, window: &Window) -> Self {
        Self {
            base: self.base.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| window.contains(k))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
            window: window.clone(),
        }
    }

    /// Same series written over base `new_base`; the bases must differ by an integer vector.
    pub fn rebase(&self, new_base: &[Rational]) -> Result<Self> {
        let delta: Vec<i64> = self
            .base
            .iter()
            .zip(new_base)
            .map(|(a, b)| {
                let d = a - b;
                if is_integer(&d) {
                    Ok(to_i64(&d).expect("small shift"))
                } else {
                    Err(Error::Precondition("bases differ by a non-integral vector".into()))
                }
            })
            .collect::<Result<_>>()?;
        let shift = |k: &Vec<i64>| k.iter().zip(&delta).map(|(x, d)| x + d).collect::<Vec<_>>();
        Ok(Self {
            base: new_base.to_vec(),
            terms: self.terms.iter().map(|(k, c)| (shift(k), c.clone())).collect(),
            window: self.window.shift(&delta),
        })
    }

    /// `d/dlambda_j`, exact on the shifted window `W - e_j`.
    pub fn derivation(&self, j: usize) -> Self {
        let mut e = vec![0; self.n()];
        e[j] = -1;
        let mut out = Self::new(self.base.clone(), self.window.shift(&e));
        for (k, c) in &self.terms {
            let w = &self.base[j] + int(k[j]);
            let mut k2 = k.clone();
            k2[j] -= 1;
            out.insert(k2, c.theta(j, &w));
        }
        out
    }

    /// `prod_j d_j^{e_j}` for a nonnegative exponent vector.
    pub fn derivation_power(&self, e: &[i64]) -> Self {
        let mut s = self.clone();
        for (j, &p) in e.iter().enumerate() {
            for _ in 0..p {
                s = s.derivation(j);
            }
        }
        s
    }

    /// Row `r` of the Euler operators: `sum_j a_j[r] lambda_j d_j - param`.
    pub fn euler_row(&self, cfg: &LatticeConfig, r: usize, param: &Rational) -> Self {
        let mut out = Self::new(self.base.clone(), self.window.clone());
        for (k, c) in &self.terms {
            let mut acc = c.scale(&-param);
            for (j, a) in cfg.lifted.iter().enumerate() {
                if a[r] != 0 {
                    let w = &self.base[j] + int(k[j]);
                    acc = acc.add(&c.theta(j, &w).scale(&int(a[r])));
                }
            }
            out.insert(k.clone(), acc);
        }
        out
    }

    /// All Euler operators with parameter `param`, one series per coordinate.
    pub fn euler(&self, cfg: &LatticeConfig, param: &[Rational]) -> Vec<Self> {
        (0..=cfg.m).map(|r| self.euler_row(cfg, r, &param[r])).collect()
    }

    /// Box operator `d^{l+} - d^{l-}`, exact on the intersection of the shifted windows.
    pub fn apply_box(&self, l: &[i64]) -> Result<Self> {
        let plus: Vec<i64> = l.iter().map(|&x| x.max(0)).collect();
        let minus: Vec<i64> = l.iter().map(|&x| (-x).max(0)).collect();
        let a = self.derivation_power(&plus);
        let b = self.derivation_power(&minus);
        let w = a.window.intersect(&b.window);
        if w.is_empty() {
            return Err(Error::WindowExhausted(format!("box operator {l:?} leaves no valid window")));
        }
        a.restrict(&w).add_scaled(&b.restrict(&w), &int(-1))
    }

    /// Terms where the two series differ on their common window, after
    /// rebasing `other` onto this base.
    pub fn differences(&self, other: &Self) -> Result<Vec<(Vec<i64>, C)>> {
        let other = other.rebase(&self.base)?;
        let w = self.window.intersect(&other.window);
        let diff = self.restrict(&w).add_scaled(&other.restrict(&w), &int(-1))?;
        Ok(diff.terms.into_iter().collect())
    }

    pub fn agrees_with(&self, other: &Self) -> Result<bool> {
        Ok(self.differences(other)?.is_empty())
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        let mut out = Series::new(self.base.clone(), self.window.clone());
        for (k, c) in &self.terms {
            out.insert(k.clone(), f(c));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::lift_config;
    use crate::rational::rat;

    fn line() -> LatticeConfig {
        lift_config(&[vec![0], vec![1], vec![2]]).unwrap()
    }

    #[test]
    fn derivation_shifts_window() {
        let w = Window::new(vec![0, 0], vec![3, 3]);
        let mut s = FormalSeries::new(vec![rat(1, 2), int(0)], w);
        s.insert(vec![1, 2], int(4));
        let d = s.derivation(0);
        assert_eq!(d.window, Window::new(vec![-1, 0], vec![2, 3]));
        assert_eq!(d.coeff(&[0, 2]), Some(&int(6)));
        let d1 = s.derivation(1);
        assert_eq!(d1.coeff(&[1, 1]), Some(&int(8)));
    }

    #[test]
    fn insert_cancels() {
        let mut s = FormalSeries::new(vec![int(0)], Window::new(vec![0], vec![1]));
        s.insert(vec![1], int(2));
        s.insert(vec![1], int(-2));
        assert!(s.is_zero());
    }

    #[test]
    fn euler_on_single_term() {
        let cfg = line();
        let w = Window::new(vec![-2, -2, -2], vec![2, 2, 2]);
        let mut s = FormalSeries::new(vec![int(0); 3], w);
        s.insert(vec![1, 0, 1], int(5));
        // sum k_j a_j = (0 + 2, 1 + 1) = (2, 2)
        let out = s.euler(&cfg, &[int(2), int(2)]);
        assert!(out.iter().all(|x| x.is_zero()));
        let out = s.euler(&cfg, &[int(1), int(2)]);
        assert_eq!(out[0].coeff(&[1, 0, 1]), Some(&int(5)));
    }

    #[test]
    fn box_and_rebase() {
        let w = Window::new(vec![-3, -3, -3], vec![3, 3, 3]);
        // 2 l0 l2 + l1^2 is annihilated by d0 d2 - d1^2
        let mut s = FormalSeries::new(vec![int(0); 3], w);
        s.insert(vec![1, 0, 1], int(2));
        s.insert(vec![0, 2, 0], int(1));
        let b = s.apply_box(&[1, -2, 1]).unwrap();
        assert!(b.is_zero());
        let r = s.rebase(&[int(1), int(0), int(0)]).unwrap();
        assert_eq!(r.coeff(&[0, 0, 1]), Some(&int(2)));
        assert!(s.agrees_with(&r).unwrap());
        assert!(s.rebase(&[rat(1, 2), int(0), int(0)]).is_err());
    }

    #[test]
    fn box_needs_room() {
        let s = FormalSeries::new(vec![int(0); 2], Window::new(vec![0, 0], vec![1, 1]));
        assert!(matches!(s.apply_box(&[3, -3]), Err(Error::WindowExhausted(_))));
    }
}
