//! Exact scalars: arbitrary precision integers and rationals plus the small
//! number-theoretic helpers the rest of the crate leans on.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("not a rational number: {s:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Comma separated list of rationals, e.g. `"0,-7/9,-1/9"`.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(parse_rational)
        .collect()
}

pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// True for rationals in `Z_{<0}`.
pub fn is_negative_integer(r: &Rational) -> bool {
    is_integer(r) && r.is_negative()
}

pub fn to_i64(r: &Rational) -> Option<i64> {
    if is_integer(r) {
        r.numer().to_i64()
    } else {
        None
    }
}

pub fn floor_i64(r: &Rational) -> i64 {
    r.floor().to_integer().to_i64().expect("floor out of i64 range")
}

pub fn ceil_i64(r: &Rational) -> i64 {
    r.ceil().to_integer().to_i64().expect("ceil out of i64 range")
}

/// Exponent of `p` in `n`; `n` must be nonzero.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// A rational is p-integral when p does not divide its reduced denominator.
pub fn is_p_integral(r: &Rational, p: u64) -> bool {
    valuation(r.denom(), p) == 0
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime(k)).collect()
}

/// Prime factors of `n` by trial division, ascending and without repetition.
pub fn prime_factors(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = 2u64;
    while BigInt::from(d) * BigInt::from(d) <= n {
        let bd = BigInt::from(d);
        if (&n % &bd).is_zero() {
            out.push(d);
            while (&n % &bd).is_zero() {
                n /= &bd;
            }
        }
        d += 1;
    }
    if n > BigInt::one() {
        out.push(n.to_u64().expect("prime factor exceeds u64"));
    }
    out
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Table of `0!, 1!, ..., max!`, grown on demand.
#[derive(Debug, Clone)]
pub struct FactorialTable {
    table: Vec<BigInt>,
}

impl Default for FactorialTable {
    fn default() -> Self {
        Self::new(0)
    }
}

impl FactorialTable {
    pub fn new(max: u64) -> Self {
        let mut t = Self {
            table: vec![BigInt::one()],
        };
        t.reserve(max);
        t
    }

    pub fn reserve(&mut self, max: u64) {
        while (self.table.len() as u64) <= max {
            let k = self.table.len() as u64;
            let next = self.table.last().unwrap() * BigInt::from(k);
            self.table.push(next);
        }
    }

    pub fn get(&mut self, n: u64) -> &BigInt {
        self.reserve(n);
        &self.table[n as usize]
    }
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Lowest common multiple of the denominators of `values`.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Scales a rational vector to the primitive integer vector pointing the same way.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let l = denominator_lcm(v);
    let ints: Vec<BigInt> = v.iter().map(|r| (r * &l).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

pub fn big_to_i64(x: &BigInt) -> i64 {
    x.to_i64().expect("integer out of i64 range")
}

pub fn dot_i64(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
