//! Bracket symbols `[z]_k` and rising factorials.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, is_integer, to_i64, Rational};

/// `[z]_k`: `1` at `k = 0`, `1/((z+1)...(z+k))` for `k > 0`,
/// `z(z-1)...(z+k+1)` for `k < 0`.
///
/// Undefined when `z` is a negative integer and `k >= -z`.
pub fn bracket(z: &Rational, k: i64) -> Result<Rational> {
    if k > 0 && z.is_negative() && is_integer(z) && k >= -to_i64(z).expect("integer") {
        return Err(Error::UndefinedBracket {
            z: format_rational(z),
            k,
        });
    }
    Ok(if k == 0 {
        Rational::one()
    } else if k > 0 {
        (1..=k).fold(Rational::one(), |acc, i| acc * (z + int(i))).recip()
    } else {
        (0..-k).fold(Rational::one(), |acc, i| acc * (z - int(i)))
    })
}

/// Whether `[z]_k` vanishes: `z` a nonnegative integer and `k < -z`.
pub fn bracket_is_structural_zero(z: &Rational, k: i64) -> bool {
    is_integer(z) && !z.is_negative() && k < -to_i64(z).expect("integer")
}

/// Product of scalar brackets. A vanishing factor wins over an undefined one.
pub fn bracket_vec(v: &[Rational], k: &[i64]) -> Result<Rational> {
    if v.len() != k.len() {
        return Err(Error::DimensionMismatch {
            expected: v.len(),
            found: k.len(),
        });
    }
    if v.iter().zip(k).any(|(z, &ki)| bracket_is_structural_zero(z, ki)) {
        return Ok(Rational::zero());
    }
    v.iter()
        .zip(k)
        .try_fold(Rational::one(), |acc, (z, &ki)| Ok(acc * bracket(z, ki)?))
}

/// Rising factorial `(a)_k = a(a+1)...(a+k-1)`.
pub fn pochhammer(a: &Rational, k: u64) -> Rational {
    (0..k).fold(Rational::one(), |acc, i| acc * (a + int(i as i64)))
}
