use std::collections::BTreeMap;

use num_traits::Zero;

use crate::rational::{format_rational, int, Rational};
use crate::series::Coefficient;

/// `sum_e c_e prod_i log^{e_i} lambda_i` with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LogPolynomial {
    pub terms: BTreeMap<Vec<u32>, Rational>,
}

impl LogPolynomial {
    pub fn constant(n: usize, c: Rational) -> Self {
        let mut p = Self::default();
        p.add_term(vec![0; n], c);
        p
    }

    /// `c * log^e lambda_i` in `n` symbols.
    pub fn monomial(n: usize, i: usize, e: u32, c: Rational) -> Self {
        let mut exps = vec![0; n];
        exps[i] = e;
        let mut p = Self::default();
        p.add_term(exps, c);
        p
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e = a.iter().zip(b).map(|(p, q)| p + q).collect();
                out.add_term(e, x * y);
            }
        }
        out
    }

    /// Highest power of `log lambda_i` present.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Constant part, the coefficient of the empty log monomial.
    pub fn constant_term(&self) -> Rational {
        self.terms
            .iter()
            .find(|(e, _)| e.iter().all(|&x| x == 0))
            .map_or_else(Rational::zero, |(_, c)| c.clone())
    }

    /// `d/d(log lambda_i)`.
    pub fn log_derivative(&self, i: usize) -> Self {
        let mut out = Self::default();
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                out.add_term(e2, c * int(e[i] as i64));
            }
        }
        out
    }
}

impl Coefficient for LogPolynomial {
    fn additive_zero() -> Self {
        Self::default()
    }

    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::default();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * r)).collect(),
        }
    }

    /// `lambda_j d_j (lambda^w log^e) = w_j lambda^w log^e + e_j lambda^w log^{e - e_j}`.
    fn theta(&self, j: usize, w_j: &Rational) -> Self {
        self.scale(w_j).add(&self.log_derivative(j))
    }

    fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(e, c)| {
                let logs: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0)
                    .map(|(i, &x)| if x == 1 { format!("L{i}") } else { format!("L{i}^{x}") })
                    .collect();
                if logs.is_empty() {
                    format_rational(c)
                } else {
                    format!("{}*{}", format_rational(c), logs.join("*"))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// A sequence `P = (p_1, ..., p_r)` of point indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SequenceP {
    pub p: Vec<usize>,
    pub n: usize,
}

impl SequenceP {
    pub fn new(p: Vec<usize>, n: usize) -> Self {
        assert!(p.iter().all(|&x| x < n), "sequence entry out of range");
        Self { p, n }
    }

    pub fn order(&self) -> usize {
        self.p.len()
    }

    /// `rho_P(i) = #{j : p_j = i}`.
    pub fn rho(&self) -> Vec<u32> {
        let mut r = vec![0; self.n];
        for &x in &self.p {
            r[x] += 1;
        }
        r
    }

    pub fn canonical(&self) -> Self {
        let mut p = self.p.clone();
        p.sort_unstable();
        Self { p, n: self.n }
    }

    /// Subsequence at the given positions.
    pub fn subsequence(&self, positions: &[usize]) -> Self {
        Self {
            p: positions.iter().map(|&j| self.p[j]).collect(),
            n: self.n,
        }
    }
}
