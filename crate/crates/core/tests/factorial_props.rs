use hypalg_core::factorial::{
    classify_integrality, default_primes, direct_integrality, dwork_map, landau_check, p_integrality_report,
    ratio_term, RatioSpec,
};
use hypalg_core::geometry::LatticeConfig;
use hypalg_core::rational::{int, is_p_integral, primes_up_to, Rational};
use hypalg_core::relations::relation_lattice;
use hypalg_core::series::{construct_v, psi_mns_series, Window};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use proptest::prelude::*;

fn spec() -> impl Strategy<Value = RatioSpec> {
    (prop::collection::vec(1u64..=5, 1..=2), prop::collection::vec(1u64..=8, 1..=4)).prop_map(|(alpha, w)| {
        let total: u64 = alpha.iter().sum();
        let k = w.len().min(total as usize);
        let mut left = total;
        let mut beta = Vec::new();
        for (j, x) in w.iter().take(k - 1).enumerate() {
            let room = left - (k - 1 - j) as u64;
            let b = 1 + (x - 1) % room;
            beta.push(b);
            left -= b;
        }
        beta.push(left);
        RatioSpec::new(alpha, beta).unwrap()
    })
}

/// `(a k + 1)(a k + 2)...(a k + a)`.
fn block(a: u64, k: u64) -> BigInt {
    (1..=a).fold(BigInt::one(), |acc, j| acc * BigInt::from(a * k + j))
}

fn multiplicative_order(p: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let mut x = p % n;
    let mut k = 1;
    while x != 1 {
        x = x * p % n;
        k += 1;
    }
    k
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ratio_recurrence(s in spec(), k in 0u64..12) {
        let num = s.alpha.iter().fold(BigInt::one(), |acc, &a| acc * block(a, k));
        let den = s.beta.iter().fold(BigInt::one(), |acc, &b| acc * block(b, k));
        prop_assert_eq!(ratio_term(&s, k + 1), ratio_term(&s, k) * Rational::new(num, den));
    }

    #[test]
    fn oracles_agree(s in spec()) {
        let c = classify_integrality(&s).unwrap().integral;
        prop_assert_eq!(c, direct_integrality(&s, 120).integral, "{}", s.label());
        prop_assert_eq!(c, landau_check(&s).holds, "{}", s.label());
    }

    #[test]
    fn dwork_map_contract(num in 0i64..60, den in 1i64..60, p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])) {
        let r = -Rational::new(BigInt::from(num % den), BigInt::from(den));
        if !is_p_integral(&r, p) {
            prop_assert!(dwork_map(&r, p).is_err());
        } else {
            let r2 = dwork_map(&r, p).unwrap();
            prop_assert!(r2 > int(-1) && !r2.is_positive());
            prop_assert!(is_p_integral(&r2, p));
            prop_assert!((r2 * int(p as i64) - r).is_integer());
        }
    }

    /// The orbit of a p-integral value is periodic with period dividing the
    /// order of p modulo the denominator.
    #[test]
    fn dwork_orbit_period(num in 0i64..60, den in 1i64..60, p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])) {
        let den = if den % p as i64 == 0 { den + 1 } else { den };
        prop_assume!(den % p as i64 != 0);
        let r = -Rational::new(BigInt::from(num % den), BigInt::from(den));
        let d = r.denom().clone();
        let ord = multiplicative_order(p, u64::try_from(d).unwrap());
        let mut x = r.clone();
        for _ in 0..ord {
            x = dwork_map(&x, p).unwrap();
        }
        prop_assert_eq!(x, r);
    }
}

/// Integral specs with `m = 2n + 1` give a series whose coefficients are clean at every prime up to 50.
#[test]
fn algebraic_regime_series_are_integral() {
    let mut checked = 0;
    for (alpha, beta) in [(vec![2u64], vec![1u64, 1]), (vec![3], vec![2, 1]), (vec![6, 1], vec![3, 2, 2]), (vec![4, 2], vec![3, 1, 1, 1])] {
        let s = RatioSpec::new(alpha.clone(), beta.clone()).unwrap();
        if !s.algebraic_regime() || !classify_integrality(&s).unwrap().integral {
            continue;
        }
        let cfg = LatticeConfig::alpha_beta(&alpha, &beta).unwrap();
        let l = relation_lattice(&cfg);
        let mut u0 = vec![1; alpha.len()];
        u0.extend(vec![0; beta.len()]);
        u0.push(alpha.len() as i64 + 1);
        let v = construct_v(&cfg, &u0, None).unwrap();
        let w = Window::lattice_ball(&l, 40, 0);
        let psi = psi_mns_series(&v, &cfg, &l, &w).unwrap();
        assert_eq!(psi.terms.len(), 41);
        let report = p_integrality_report(&psi, &primes_up_to(50), &w);
        assert!(report.is_clean(), "{}", s.label());
        checked += 1;
    }
    assert!(checked >= 3);
}

#[test]
fn default_primes_skip_denominators() {
    let v = vec![int(0), Rational::new(BigInt::from(-7), BigInt::from(9)), Rational::new(BigInt::from(-1), BigInt::from(10))];
    let ps = default_primes(&v, 20);
    assert_eq!(ps, vec![7, 11, 13, 17, 19]);
    assert!(ps.iter().all(|p| 90u64.gcd(p) == 1));
}
