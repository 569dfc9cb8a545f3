//! The coefficients `M_{k,i}` and the functions `f^{(r)}_k(t) = t^k * poly(log t)`
//! with `f^{(r)}_0 = log^r t` and `d/dt f^{(r)}_k = f^{(r)}_{k-1}`.

use num_traits::{One, Zero};

use crate::rational::{factorial, int, rat, Rational};

use super::logpoly::LogPolynomial;

/// Complete homogeneous symmetric polynomial `h_i(1, 1/2, ..., 1/k)`.
fn complete_homogeneous(k: u64, i: usize) -> Rational {
    // h[d] over the variables seen so far
    let mut h = vec![Rational::zero(); i + 1];
    h[0] = Rational::one();
    for x in 1..=k {
        let xr = rat(1, x as i64);
        for d in 1..=i {
            let t = &h[d - 1] * &xr;
            h[d] += t;
        }
    }
    h[i].clone()
}

/// Elementary symmetric polynomial `e_i(1, 1/2, ..., 1/k)`.
fn elementary(k: u64, i: usize) -> Rational {
    let mut e = vec![Rational::zero(); i + 1];
    e[0] = Rational::one();
    for x in 1..=k {
        let xr = rat(1, x as i64);
        for d in (1..=i).rev() {
            let t = &e[d - 1] * &xr;
            e[d] += t;
        }
    }
    e[i].clone()
}

fn sign(n: i64) -> Rational {
    if n.rem_euclid(2) == 0 {
        int(1)
    } else {
        int(-1)
    }
}

pub fn m_coeff(k: i64, i: u32) -> Rational {
    let i = i as usize;
    match k {
        0 => {
            if i == 0 {
                int(1)
            } else {
                int(0)
            }
        }
        k if k > 0 => {
            sign(i as i64) * complete_homogeneous(k as u64, i) / Rational::from_integer(factorial(k as u64))
        }
        k => {
            let kk = (-k) as usize;
            if i == 0 || i > kk {
                return int(0);
            }
            sign(kk as i64 - i as i64)
                * Rational::from_integer(factorial(kk as u64 - 1))
                * elementary(kk as u64 - 1, i - 1)
        }
    }
}

/// `r (r-1) ... (r-i+1)`.
pub fn falling(r: u32, i: u32) -> Rational {
    (0..i).fold(int(1), |acc, j| acc * int(r as i64 - j as i64))
}

/// Coefficients of `f^{(r)}_k(t) / t^k` by power of `log t`: entry `j` is
/// the coefficient of `log^j t`.
pub fn f_coeffs(r: u32, k: i64) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); r as usize + 1];
    for i in 0..=r {
        out[(r - i) as usize] = m_coeff(k, i) * falling(r, i);
    }
    out
}

/// `f^{(r)}_k(t) / t^k` as a polynomial in the single symbol `log t`.
pub fn f_poly(r: u32, k: i64) -> LogPolynomial {
    f_poly_in(1, 0, r, k)
}

/// Same polynomial in the symbol `log lambda_i` among `n`.
pub fn f_poly_in(n: usize, i: usize, r: u32, k: i64) -> LogPolynomial {
    let mut p = LogPolynomial::default();
    for (j, c) in f_coeffs(r, k).into_iter().enumerate() {
        let mut e = vec![0; n];
        e[i] = j as u32;
        p.add_term(e, c);
    }
    p
}
