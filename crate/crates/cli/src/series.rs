//! `hypalg series`: the series with minimal negative support and its checks.

use anyhow::{bail, Context, Result};
use clap::Args;
use serde::Serialize;

use hypalg_core::factorial::{default_primes, p_integrality_report, ratio_term, PIntegralityReport};
use hypalg_core::json::{ConfigJson, SeriesJson};
use hypalg_core::rational::{format_rational, int, to_i64, Rational};
use hypalg_core::relations::relation_lattice;
use hypalg_core::series::{
    algebraic_family, construct_v, negative_product, psi_mns_series, specialize, verify_k_family,
    VerificationReport, Window,
};

use crate::input::{head_exponent, minimal_interior_point, parse_list, parse_rationals, Source};
use crate::render::{p_table, vector, verdict, verification_line, Report};

#[derive(Args, Debug)]
pub struct SeriesArgs {
    #[command(flatten)]
    pub source: Source,
    /// Exponent vector v, comma separated rationals such as -7/9.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["u0", "subset"])]
    pub v: Option<String>,
    /// Interior point u0; v is solved from sum v_i a_i = -u0.
    #[arg(long, allow_hyphen_values = true)]
    pub u0: Option<String>,
    /// Generator indices used to solve for v (m + 1 of them).
    #[arg(long)]
    pub subset: Option<String>,
    /// Lattice-ball radius of the truncation window.
    #[arg(long, default_value_t = 10)]
    pub window: i64,
    /// Build the algebraic family up to this degree and check it.
    #[arg(long)]
    pub degree: Option<u32>,
    /// Primes for the integrality table [default: primes up to 50 coprime to v].
    #[arg(long)]
    pub primes: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct Parameters {
    pub source: String,
    pub window_radius: i64,
    pub window: Window,
    pub degree: Option<u32>,
    pub primes: Vec<u64>,
}

#[derive(Debug, Serialize)]
pub struct Specialization {
    pub direction: Vec<i64>,
    pub scale: String,
    pub coefficients: Vec<String>,
    /// Whether the coefficients equal the factorial ratio terms.
    pub matches_ratio: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct Family {
    pub degree: u32,
    pub window: Window,
    pub v_prime: Vec<String>,
    pub beta: Vec<i64>,
    pub u1: Vec<i64>,
    pub members: Vec<Vec<i64>>,
    pub verification: VerificationReport,
    /// `Psi_v = prod_{v_i<0} v_i * A_{u0}` on the common window.
    pub identity: Option<VerificationReport>,
}

#[derive(Debug, Serialize)]
pub struct SeriesReport {
    pub command: &'static str,
    pub parameters: Parameters,
    pub config: ConfigJson,
    pub lattice_basis: Vec<Vec<i64>>,
    pub v: Vec<String>,
    pub u0: Vec<i64>,
    pub series: SeriesJson,
    pub verification: VerificationReport,
    pub p_integrality: PIntegralityReport,
    pub p_integral: bool,
    pub specialization: Option<Specialization>,
    pub family: Option<Family>,
    pub pass: bool,
}

pub fn run(args: &SeriesArgs) -> Result<SeriesReport> {
    if args.window < 0 {
        bail!("--window must be nonnegative");
    }
    let loaded = args.source.load_config()?;
    let cfg = &loaded.cfg;
    let l = relation_lattice(cfg);
    let v: Vec<Rational> = if let Some(text) = &args.v {
        let v = parse_rationals(text, "--v")?;
        if v.len() != cfg.len() {
            bail!("--v has {} entries, the configuration has {} points", v.len(), cfg.len());
        }
        v
    } else if let (None, None, Some(spec)) = (&args.u0, &args.subset, &loaded.spec) {
        head_exponent(spec)
    } else {
        let u0 = match &args.u0 {
            Some(text) => parse_list::<i64>(text, "--u0")?,
            None => minimal_interior_point(cfg)?,
        };
        let subset = args.subset.as_deref().map(|s| parse_list::<usize>(s, "--subset")).transpose()?;
        construct_v(cfg, &u0, subset.as_deref())
            .with_context(|| format!("cannot solve for v at u0 = {u0:?}"))?
            .0
    };
    finish(args, loaded.label.clone(), cfg, &l, v, loaded.spec.as_ref())
}

fn finish(
    args: &SeriesArgs,
    label: String,
    cfg: &hypalg_core::geometry::LatticeConfig,
    l: &hypalg_core::relations::RelationLattice,
    v: Vec<Rational>,
    spec: Option<&hypalg_core::factorial::RatioSpec>,
) -> Result<SeriesReport> {
    let u0: Vec<i64> = cfg
        .combine_rational(&v)
        .iter()
        .map(|x| to_i64(&-x))
        .collect::<Option<_>>()
        .context("sum v_i a_i is not integral")?;
    let window = Window::lattice_ball(l, args.window, 0);
    let psi = psi_mns_series(&v, cfg, l, &window)?;
    let neg: Vec<i64> = u0.iter().map(|x| -x).collect();
    let mut verification = VerificationReport::default();
    verification.expect_boxes("", &psi, l)?;
    verification.expect_euler("", &psi, cfg, &neg);

    let primes = match &args.primes {
        Some(text) => parse_list::<u64>(text, "--primes")?,
        None => default_primes(&v, 50),
    };
    let p_integrality = p_integrality_report(&psi, &primes, &window);

    let specialization = if l.rank == 1 && !psi.is_zero() {
        let standard = spec.filter(|s| head_exponent(s) == v);
        let scale = match spec {
            Some(s) if (1 + s.alpha.iter().sum::<u64>()) % 2 == 1 => int(-1),
            _ => int(1),
        };
        let y = specialize(&psi, &l.basis[0], &scale)?;
        let matches_ratio = standard.map(|s| y.coeffs.iter().enumerate().all(|(k, c)| *c == ratio_term(s, k as u64)));
        Some(Specialization {
            direction: l.basis[0].clone(),
            scale: format_rational(&scale),
            coefficients: y.coeffs.iter().map(format_rational).collect(),
            matches_ratio,
        })
    } else {
        None
    };

    let family = match args.degree {
        Some(d) => {
            let fwin = Window::lattice_ball(l, args.window, 2);
            let (shift, fam) = algebraic_family(&v, cfg, l, d, &fwin).context("algebraic family")?;
            let verification = verify_k_family(&fam, cfg, l)?;
            let identity = match fam.members.get(&u0) {
                Some(a) => {
                    let mut r = VerificationReport::default();
                    r.expect_equal("identity", &psi, &a.scale(&negative_product(&v)))?;
                    Some(r)
                }
                None => None,
            };
            Some(Family {
                degree: d,
                window: fwin,
                v_prime: shift.v_prime.0.iter().map(format_rational).collect(),
                beta: shift.beta,
                u1: shift.u1,
                members: fam.members.keys().cloned().collect(),
                verification,
                identity,
            })
        }
        None => None,
    };

    let pass = verification.pass
        && specialization.as_ref().is_none_or(|s| s.matches_ratio != Some(false))
        && family
            .as_ref()
            .is_none_or(|f| f.verification.pass && f.identity.as_ref().is_none_or(|r| r.pass));
    Ok(SeriesReport {
        command: "series",
        parameters: Parameters {
            source: label,
            window_radius: args.window,
            window,
            degree: args.degree,
            primes,
        },
        config: ConfigJson::from(cfg),
        lattice_basis: l.basis.clone(),
        v: v.iter().map(format_rational).collect(),
        u0,
        series: SeriesJson::from(&psi),
        verification,
        p_integral: p_integrality.is_clean(),
        p_integrality,
        specialization,
        family,
        pass,
    })
}

impl Report for SeriesReport {
    fn pass(&self) -> bool {
        self.pass
    }

    fn markdown(&self) -> String {
        let mut out = format!("# Series for {}\n\n", self.parameters.source);
        out.push_str(&format!("- v = {}\n- u0 = {}\n", vector(&self.v), vector(&self.u0)));
        out.push_str(&format!("- relation lattice basis: {}\n", self.lattice_basis.iter().map(|b| vector(b)).collect::<Vec<_>>().join(", ")));
        out.push_str(&format!("- window radius {}, {} terms\n\n", self.parameters.window_radius, self.series.terms.len()));
        out.push_str("## Terms\n\n");
        for t in self.series.terms.iter().take(12) {
            out.push_str(&format!("- {} at {}\n", t.coeff, vector(&t.k)));
        }
        if self.series.terms.len() > 12 {
            out.push_str(&format!("- ... {} more\n", self.series.terms.len() - 12));
        }
        out.push_str("\n## Checks\n\n");
        out.push_str(&verification_line("box and Euler operators", &self.verification));
        if let Some(s) = &self.specialization {
            out.push_str(&format!("- specialization along {} with scale {}: {}\n", vector(&s.direction), s.scale, vector(&s.coefficients[..s.coefficients.len().min(8)])));
            if let Some(m) = s.matches_ratio {
                out.push_str(&format!("- matches factorial ratio terms: {}\n", verdict(m)));
            }
        }
        if let Some(f) = &self.family {
            out.push_str(&format!("- family up to degree {} ({} members), v' = {}\n", f.degree, f.members.len(), vector(&f.v_prime)));
            out.push_str(&verification_line("family", &f.verification));
            match &f.identity {
                Some(r) => out.push_str(&verification_line("Psi_v = prod v_i * A_u0", r)),
                None => out.push_str("- u0 is outside the family degree range\n"),
            }
        }
        out.push_str(&format!("\n## p-integrality ({})\n\n", if self.p_integral { "clean" } else { "denominators found" }));
        out.push_str(&p_table(&self.p_integrality));
        out.push_str(&format!("\nOverall: {}\n", verdict(self.pass)));
        out
    }
}
