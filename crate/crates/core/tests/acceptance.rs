//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion.

use std::time::{Duration, Instant};

use hypalg_core::factorial::{dwork_orbit, p_integrality_report, sweep};
use hypalg_core::geometry::{dilate, interior_lattice_points, lift_config, LatticeConfig};
use hypalg_core::logseries::{
    closed_form_series, combine_solution, f_poly, quasisolution, quasisolution_from_components, LogPolynomial,
    SequenceP,
};
use hypalg_core::rational::{int, rat, Rational};
use hypalg_core::relations::{relation_lattice, RelationLattice};
use hypalg_core::series::{
    algebraic_family, construct_v, negative_product, psi_mns_series, specialize, verify_k_family,
    verify_polynomial_relation, BivariatePoly, Coefficient, FormalSeries, Series, VerificationReport, Window,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

type Check = std::result::Result<(), String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(cond: bool, msg: impl Into<String>) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ctx<T, E: std::fmt::Display>(r: std::result::Result<T, E>, what: &str) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

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

const SPARSE5_U0: [i64; 6] = [2, 1, -1, 0, 0, 3];

fn sparse5_v() -> Vec<Rational> {
    vec![int(0), rat(-7, 9), rat(-1, 9), rat(-2, 3), rat(-4, 9), rat(-2, 9), rat(-7, 9)]
}

/// Rising factorial computed from scratch.
fn rising(a: &Rational, k: i64) -> Rational {
    (0..k).fold(Rational::one(), |acc, j| acc * (a + int(j)))
}

fn fact(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `u0 = (1, ..., 1, 0, ..., 0, n + 1)` for the `Delta(alpha, beta)` configuration.
fn alpha_beta_u0(alpha: &[u64], beta: &[u64]) -> Vec<i64> {
    let n = alpha.len();
    let mut u = vec![1; n];
    u.extend(vec![0; beta.len()]);
    u.push(n as i64 + 1);
    u
}

fn system_report<C: Coefficient>(
    s: &Series<C>,
    cfg: &LatticeConfig,
    l: &RelationLattice,
    euler_param: &[i64],
) -> std::result::Result<VerificationReport, String> {
    let mut r = VerificationReport::default();
    ctx(r.expect_boxes("", s, l), "box operator")?;
    r.expect_euler("", s, cfg, euler_param);
    Ok(r)
}

fn report_check(r: &VerificationReport, what: &str) -> Check {
    ensure(
        r.pass && r.checks > 0 && r.valid_window.as_ref().is_some_and(|w| !w.is_empty()),
        format!("{what}: {} residuals, first {:?}", r.residuals.len(), r.residuals.first()),
    )
}

fn criterion1() -> Check {
    let cfg = sparse5();
    let l = relation_lattice(&cfg);
    ensure(
        l.basis == vec![vec![9, 1, -5, -3, -2, -1, 1]],
        format!("relation lattice {:?}", l.basis),
    )?;
    let base = ctx(cfg.polytope(), "hull")?;
    let two = interior_lattice_points(&ctx(dilate(&base, 2), "dilate")?);
    ensure(two.is_empty(), format!("2 Delta interior points {two:?}"))?;
    let three = interior_lattice_points(&ctx(dilate(&base, 3), "dilate")?);
    ensure(three.contains(&vec![2, 1, -1, 0, 0]), "3 Delta misses (2,1,-1,0,0)")?;
    let v = ctx(construct_v(&cfg, &SPARSE5_U0, Some(&[1, 2, 3, 4, 5, 6])), "construct_v")?;
    ensure(v.0 == sparse5_v(), format!("v = {:?}", v.0))?;
    let first = ctx(construct_v(&cfg, &SPARSE5_U0, None), "construct_v")?;
    ensure(cfg.combine_rational(&first) == cfg.combine_rational(&v), "lexicographic choice misses -u0")?;

    let window = Window::lattice_ball(&l, 30, 0);
    let psi = ctx(psi_mns_series(&v, &cfg, &l, &window), "psi")?;
    let gamma = &l.basis[0];
    for c in 0..=30i64 {
        let k: Vec<i64> = gamma.iter().map(|g| g * c).collect();
        let got = psi.coeff(&k).ok_or(format!("missing term l = {c}"))?;
        if c <= 10 {
            let sign = if c % 2 == 0 { int(1) } else { int(-1) };
            let expected = sign * rising(&rat(1, 9), 5 * c) * rising(&rat(2, 3), 3 * c) * rising(&rat(4, 9), 2 * c)
                / (rising(&int(1), 9 * c) * rising(&rat(2, 9), c));
            ensure(got == &expected, format!("coefficient at l = {c}"))?;
        }
        let mut d = got.denom().clone();
        while (&d % 3u32).is_zero() {
            d /= 3u32;
        }
        ensure(d.is_one(), format!("denominator at l = {c} has a prime other than 3"))?;
    }
    ensure(psi.terms.len() == 31, format!("{} terms", psi.terms.len()))?;
    let rep = p_integrality_report(&psi, &[2, 5, 7, 11, 13], &window);
    ensure(rep.is_clean(), format!("p-integrality {:?}", rep.primes))?;
    ensure(rep.valuation(3).is_none(), "3 was not requested")?;
    Ok(())
}

fn criterion2() -> Check {
    let cfg = sparse5();
    let l = relation_lattice(&cfg);
    let psi = ctx(psi_mns_series(&sparse5_v(), &cfg, &l, &Window::lattice_ball(&l, 12, 0)), "psi")?;
    let neg: Vec<i64> = SPARSE5_U0.iter().map(|x| -x).collect();
    report_check(&system_report(&psi, &cfg, &l, &neg)?, "sparse configuration")?;

    for (alpha, beta, radius) in [(vec![2u64], vec![1u64, 1], 20), (vec![30, 1], vec![15, 10, 6], 10)] {
        let cfg = ctx(LatticeConfig::alpha_beta(&alpha, &beta), "config")?;
        let l = relation_lattice(&cfg);
        let u0 = alpha_beta_u0(&alpha, &beta);
        let v = ctx(construct_v(&cfg, &u0, None), "construct_v")?;
        let psi = ctx(psi_mns_series(&v, &cfg, &l, &Window::lattice_ball(&l, radius, 0)), "psi")?;
        ensure(psi.terms.len() as i64 == radius + 1, format!("{alpha:?}: {} terms", psi.terms.len()))?;
        let neg: Vec<i64> = u0.iter().map(|x| -x).collect();
        report_check(&system_report(&psi, &cfg, &l, &neg)?, &format!("{alpha:?};{beta:?}"))?;
    }
    Ok(())
}

fn criterion3() -> Check {
    let cfg = ctx(LatticeConfig::alpha_beta(&[2], &[1, 1]), "config")?;
    let l = relation_lattice(&cfg);
    let v = ctx(construct_v(&cfg, &[1, 0, 0, 2], None), "construct_v")?;
    let psi = ctx(psi_mns_series(&v, &cfg, &l, &Window::lattice_ball(&l, 50, 0)), "psi")?;
    // (-1)^(1 + sum alpha) undoes the alternating sign.
    let y = ctx(specialize(&psi, &l.basis[0], &int(-1)), "specialize")?;
    ensure(y.len() == 51, format!("{} coefficients", y.len()))?;
    for k in 0..=50u64 {
        let c = Rational::from_integer(fact(2 * k) / (fact(k) * fact(k)));
        ensure(y.coeffs[k as usize] == c, format!("coefficient {k}"))?;
    }
    let p = BivariatePoly::from_terms([((0, 2), int(1)), ((1, 2), int(-4)), ((0, 0), int(-1))]);
    ensure(ctx(verify_polynomial_relation(&y, &p, 50), "relation")?, "y^2 (1 - 4t) - 1 is nonzero")
}

fn criterion4() -> Check {
    let reports = ctx(sweep(10, 2, 4, 120), "sweep")?;
    ensure(!reports.is_empty(), "no specs")?;
    let bad: Vec<String> = reports
        .iter()
        .filter(|r| !r.oracles.agree())
        .map(|r| format!("{}: {:?}", r.spec.label(), r.oracles))
        .collect();
    println!("    swept {} specs, {} integral", reports.len(), reports.iter().filter(|r| r.integral).count());
    ensure(bad.is_empty(), format!("disagreements: {}", bad.join("; ")))
}

fn criterion5() -> Check {
    let cfg = sparse5();
    let l = relation_lattice(&cfg);
    let v = sparse5_v();
    let window = Window::lattice_ball(&l, 8, 2);
    let (shift, fam) = ctx(algebraic_family(&v, &cfg, &l, 3, &window), "family")?;
    let rep = ctx(verify_k_family(&fam, &cfg, &l), "verify")?;
    report_check(&rep, "family")?;
    let a_u0 = fam.members.get(&SPARSE5_U0[..]).ok_or("u0 missing from family")?;
    ensure(!a_u0.is_zero(), "A_u0 vanishes")?;
    let psi = ctx(psi_mns_series(&v, &cfg, &l, &Window::lattice_ball(&l, 8, 0)), "psi")?;
    let rhs = a_u0.scale(&negative_product(&v));
    let mut eq = VerificationReport::default();
    ctx(eq.expect_equal("identity", &psi, &rhs), "rebase")?;
    report_check(&eq, "psi = prod v_i * A_u0")?;
    ensure(shift.beta.iter().zip(&shift.u1).zip(&SPARSE5_U0).all(|((b, u1), u0)| *b == -u1 - u0), "shifted exponent")?;
    println!("    family of {} members, {} checks", fam.members.len(), rep.checks);
    Ok(())
}

fn criterion6() -> Check {
    for r in 0..=3 {
        for k in -6..=6 {
            ensure(f_poly(r, k).theta(0, &int(k)) == f_poly(r, k - 1), format!("derivative r={r} k={k}"))?;
        }
    }
    let alpha = [2u64];
    let beta = [1u64, 1];
    let cfg = ctx(LatticeConfig::alpha_beta(&alpha, &beta), "config")?;
    let l = relation_lattice(&cfg);
    let n = cfg.len();
    let window = Window::lattice_ball(&l, 5, 2);
    let u0 = alpha_beta_u0(&alpha, &beta);
    let neg_u0: Vec<i64> = u0.iter().map(|x| -x).collect();
    let other = vec![-1, 0, 0, -2];
    for u in [&neg_u0, &other] {
        for r in 0..=2usize {
            for p in itertools::Itertools::multi_cartesian_product((0..r).map(|_| 0..n)) {
                let p = SequenceP::new(p, n);
                let direct = quasisolution(&p, u, &cfg, &l, &window);
                let rebuilt = quasisolution_from_components(&p, u, &cfg, &l, &window);
                ensure(direct == rebuilt, format!("reconstruction P={:?} u={u:?}", p.p))?;
            }
        }
    }
    let gamma = l.basis[0].clone();
    // With a single relation every term at -u0 has two negative entries, so
    // the order-one combination is checked at -a_0 instead.
    let minus_a0 = vec![0, 0, 0, -1];
    for (ls, u) in [(vec![gamma.clone()], &minus_a0), (vec![gamma.clone(), gamma.clone()], &neg_u0)] {
        let s = ctx(combine_solution(&ls, u, &cfg, &l, &window), "combine")?;
        ensure(!s.is_zero(), format!("combination r={} vanishes", ls.len()))?;
        report_check(&system_report(&s, &cfg, &l, u)?, &format!("combination r={}", ls.len()))?;
    }
    let closed = ctx(closed_form_series(&alpha, &beta, &u0, &window), "closed form")?;
    let p0 = SequenceP::new(vec![0, 1], n);
    let q = quasisolution(&p0, &neg_u0, &cfg, &l, &window);
    let as_log: Series<LogPolynomial> = closed.map_coefficients(|c| LogPolynomial::constant(n, c.clone()));
    ensure(q == as_log, "closed form differs from the quasisolution")?;
    let on_ray: FormalSeries = closed.clone();
    for c in 0..=5i64 {
        let k: Vec<i64> = vec![-c - 1, -2 * c - 1, c, c, c];
        let got = on_ray.coeff(&k).ok_or(format!("missing l = {c}"))?;
        let central = Rational::from_integer(fact(2 * c as u64) / (fact(c as u64) * fact(c as u64)));
        ensure(got.abs() == central, format!("closed form at l = {c}"))?;
    }
    let z = quasisolution(&SequenceP::new(vec![2, 3], n), &neg_u0, &cfg, &l, &window);
    ensure(z.is_zero(), format!("P=(2,3) leaves {} terms", z.terms.len()))
}

fn criterion7() -> Check {
    let cfg = sparse5();
    let v = sparse5_v();
    for p in [2, 5, 7, 11, 13] {
        let orbit = ctx(dwork_orbit(&v, &cfg, p, 10), "orbit")?;
        ensure(orbit.target_height == 3, format!("height {}", orbit.target_height))?;
        ensure(orbit.elements.len() == 11, "orbit length")?;
        ensure(orbit.ok, format!("orbit fails for p = {p}: {:?}", orbit.points))?;
        for e in &orbit.elements {
            ensure(e.iter().all(|x| !x.is_positive() && x > &int(-1)), "element outside (-1, 0]")?;
        }
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("sparse configuration reproduction", criterion1, Duration::from_secs(5)),
        ("system membership", criterion2, Duration::from_secs(15)),
        ("algebraicity witness", criterion3, Duration::from_secs(1)),
        ("integrality classifier sweep", criterion4, Duration::from_secs(60)),
        ("algebraic family scaffolding", criterion5, Duration::from_secs(10)),
        ("logarithmic machinery", criterion6, Duration::from_secs(30)),
        ("dwork orbit", criterion7, Duration::from_secs(1)),
    ];
    let mut failed = Vec::new();
    for (i, (name, f, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let verdict = match (&outcome, elapsed <= *budget) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => format!("FAIL (over budget {budget:?})"),
            (Err(e), _) => format!("FAIL ({e})"),
        };
        println!("criterion {}: {verdict} - {name} [{:.3}s]", i + 1, elapsed.as_secs_f64());
        if !verdict.starts_with("PASS") {
            failed.push(i + 1);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
