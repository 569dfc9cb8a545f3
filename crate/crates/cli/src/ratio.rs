//! `hypalg ratio check` and `hypalg ratio sweep`: integrality of factorial ratios.

use anyhow::{bail, Result};
use clap::Args;
use serde::Serialize;

use hypalg_core::factorial::{p_integrality_report, ratio_report, sweep, PIntegralityReport, RatioReport};
use hypalg_core::geometry::LatticeConfig;
use hypalg_core::rational::{format_rational, primes_up_to};
use hypalg_core::relations::relation_lattice;
use hypalg_core::series::{psi_mns_series, Window};

use crate::input::{head_exponent, parse_list, Source};
use crate::render::{p_table, table, verdict, Report};

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// `--input` holds `{"alpha": [..], "beta": [..]}`.
    #[command(flatten)]
    pub source: Source,
    /// Terms checked by the direct divisibility oracle.
    #[arg(long, default_value_t = 120)]
    pub kmax: u64,
    /// Terms of the series scanned for denominators.
    #[arg(long, default_value_t = 30)]
    pub window: i64,
    /// Primes for the integrality table [default: primes up to 50].
    #[arg(long)]
    pub primes: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct CheckParameters {
    pub spec: String,
    pub kmax: u64,
    pub window_radius: i64,
    pub primes: Vec<u64>,
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub command: &'static str,
    pub parameters: CheckParameters,
    pub report: RatioReport,
    /// First terms of the ratio, starting at k = 0.
    pub terms: Vec<String>,
    pub p_integrality: PIntegralityReport,
    pub pass: bool,
}

pub fn check(args: &CheckArgs) -> Result<CheckReport> {
    if args.window < 0 {
        bail!("--window must be nonnegative");
    }
    let spec = args.source.load_spec()?;
    let report = ratio_report(&spec, args.kmax)?;
    let primes = match &args.primes {
        Some(text) => parse_list::<u64>(text, "--primes")?,
        None => primes_up_to(50),
    };
    let cfg = LatticeConfig::alpha_beta(&spec.alpha, &spec.beta)?;
    let l = relation_lattice(&cfg);
    let window = Window::lattice_ball(&l, args.window, 0);
    let psi = psi_mns_series(&head_exponent(&spec), &cfg, &l, &window)?;
    let p_integrality = p_integrality_report(&psi, &primes, &window);
    let terms = (0..=args.window.min(10) as u64)
        .map(|k| format_rational(&hypalg_core::factorial::ratio_term(&spec, k)))
        .collect();
    Ok(CheckReport {
        command: "ratio check",
        parameters: CheckParameters {
            spec: spec.label(),
            kmax: args.kmax,
            window_radius: args.window,
            primes,
        },
        pass: report.oracles.agree(),
        report,
        terms,
        p_integrality,
    })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl Report for CheckReport {
    fn pass(&self) -> bool {
        self.pass
    }

    fn markdown(&self) -> String {
        let r = &self.report;
        let mut out = format!("# Factorial ratio {}\n\n", self.parameters.spec);
        out.push_str(&format!("- integral: {}\n", yes(r.integral)));
        match &r.witness {
            Some(w) => out.push_str(&format!("- interior lattice point of n * Delta: {w:?}\n")),
            None => out.push_str("- n * Delta has no interior lattice point\n"),
        }
        out.push_str(&format!("- m = 2n + 1 (algebraic regime): {}\n", yes(r.algebraic_regime)));
        out.push_str(&format!("- trivial: {}\n", yes(r.trivial)));
        out.push_str(&format!("- first terms: {}\n\n## Oracles\n\n", self.terms.join(", ")));
        let rows = vec![
            vec!["polytope".into(), yes(r.oracles.polytope).into(), "-".into()],
            vec![
                format!("direct, k <= {}", r.direct_bound),
                yes(r.oracles.direct).into(),
                r.direct_first_failure.map_or("-".into(), |k| format!("fails at k = {k}")),
            ],
            vec![
                "step function".into(),
                yes(r.oracles.landau).into(),
                r.landau_failing_at.clone().map_or("-".into(), |x| format!("negative at {x}")),
            ],
        ];
        out.push_str(&table(&["oracle", "integral", "detail"], &rows));
        out.push_str(&format!("\nOracles agree: {}\n\n## p-integrality of the series\n\n", verdict(self.pass)));
        out.push_str(&p_table(&self.p_integrality));
        out
    }
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Largest sum of alpha.
    #[arg(long, default_value_t = 10)]
    pub max_sum: u64,
    /// Largest length of alpha.
    #[arg(long, default_value_t = 2)]
    pub max_n: usize,
    /// Largest length of beta.
    #[arg(long, default_value_t = 4)]
    pub max_extra: usize,
    /// Terms checked by the direct divisibility oracle.
    #[arg(long, default_value_t = 120)]
    pub kmax: u64,
}

#[derive(Debug, Serialize)]
pub struct SweepParameters {
    pub max_sum: u64,
    pub max_n: usize,
    pub max_extra: usize,
    pub kmax: u64,
}

#[derive(Debug, Serialize)]
pub struct SweepReport {
    pub command: &'static str,
    pub parameters: SweepParameters,
    pub specs: usize,
    pub integral: usize,
    pub integral_algebraic_regime: usize,
    pub disagreements: Vec<String>,
    pub reports: Vec<RatioReport>,
    pub pass: bool,
}

pub fn sweep_cmd(args: &SweepArgs) -> Result<SweepReport> {
    let reports = sweep(args.max_sum, args.max_n, args.max_extra, args.kmax)?;
    let disagreements: Vec<String> = reports.iter().filter(|r| !r.oracles.agree()).map(|r| r.spec.label()).collect();
    Ok(SweepReport {
        command: "ratio sweep",
        parameters: SweepParameters {
            max_sum: args.max_sum,
            max_n: args.max_n,
            max_extra: args.max_extra,
            kmax: args.kmax,
        },
        specs: reports.len(),
        integral: reports.iter().filter(|r| r.integral).count(),
        integral_algebraic_regime: reports.iter().filter(|r| r.integral && r.algebraic_regime).count(),
        pass: disagreements.is_empty(),
        disagreements,
        reports,
    })
}

impl Report for SweepReport {
    fn pass(&self) -> bool {
        self.pass
    }

    fn markdown(&self) -> String {
        let p = &self.parameters;
        let mut out = format!(
            "# Integrality sweep\n\nsum alpha <= {}, n <= {}, length of beta <= {}, direct oracle up to k = {}.\n\n",
            p.max_sum, p.max_n, p.max_extra, p.kmax
        );
        out.push_str(&format!(
            "{} ratios, {} integral, {} integral with m = 2n + 1. Oracles agree: {}.\n\n",
            self.specs,
            self.integral,
            self.integral_algebraic_regime,
            verdict(self.pass)
        ));
        if !self.disagreements.is_empty() {
            out.push_str(&format!("Disagreements: {}\n\n", self.disagreements.join(", ")));
        }
        let rows: Vec<Vec<String>> = self
            .reports
            .iter()
            .filter(|r| r.integral && !r.trivial)
            .map(|r| vec![r.spec.label(), yes(r.algebraic_regime).into()])
            .collect();
        out.push_str("## Nontrivial integral ratios\n\n");
        out.push_str(&table(&["ratio", "m = 2n + 1"], &rows));
        out
    }
}
