//! `hypalg logsolve`: logarithmic quasisolutions and their combinations.

use anyhow::{bail, Result};
use clap::Args;
use serde::Serialize;

use hypalg_core::factorial::{closed_form_integrality_report, PIntegralityReport};
use hypalg_core::json::{ConfigJson, LogSeriesJson, SeriesJson};
use hypalg_core::logseries::{
    closed_form_series, combine_solution, quasisolution, quasisolution_from_components, LogPolynomial, SequenceP,
};
use hypalg_core::relations::relation_lattice;
use hypalg_core::series::{Series, VerificationReport, Window};

use crate::input::{head_sum, is_interior, parse_list, Source};
use crate::render::{p_table, vector, verdict, verification_line, Report};

#[derive(Args, Debug)]
pub struct LogsolveArgs {
    #[command(flatten)]
    pub source: Source,
    /// Index sequence P, comma separated [default: 0,...,n for a ratio].
    #[arg(long = "p")]
    pub p: Option<String>,
    /// Target u of sum k_i a_i = u [default: minus the head sum for a ratio].
    #[arg(long, allow_hyphen_values = true)]
    pub u: Option<String>,
    /// Number of relation vectors in the combined solution.
    #[arg(long, default_value_t = 2)]
    pub order: usize,
    /// Lattice-ball radius of the truncation window (padded by 2).
    #[arg(long, default_value_t = 5)]
    pub window: i64,
}

#[derive(Debug, Serialize)]
pub struct Parameters {
    pub source: String,
    pub p: Vec<usize>,
    pub u: Vec<i64>,
    pub order: usize,
    pub window_radius: i64,
    pub window: Window,
}

#[derive(Debug, Serialize)]
pub struct Combination {
    pub relations: Vec<Vec<i64>>,
    pub terms: usize,
    pub nonzero: bool,
    pub verification: VerificationReport,
}

#[derive(Debug, Serialize)]
pub struct ClosedForm {
    pub p: Vec<usize>,
    pub terms: usize,
    pub series: SeriesJson,
    /// Whether the closed form equals the log-free quasisolution.
    pub equals_quasisolution: bool,
    /// Integrality scan, present when the ratio is integral.
    pub integrality: Option<PIntegralityReport>,
    pub note: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct LogsolveReport {
    pub command: &'static str,
    pub parameters: Parameters,
    pub config: ConfigJson,
    pub lattice_basis: Vec<Vec<i64>>,
    pub quasisolution: LogSeriesJson,
    pub terms: usize,
    pub zero: bool,
    pub log_free: bool,
    /// Rebuilding from subsequence components reproduces the quasisolution.
    pub decomposition_matches: bool,
    pub combination: Option<Combination>,
    pub closed_form: Option<ClosedForm>,
    pub pass: bool,
}

pub fn run(args: &LogsolveArgs) -> Result<LogsolveReport> {
    if args.window < 0 {
        bail!("--window must be nonnegative");
    }
    let loaded = args.source.load_config()?;
    let cfg = &loaded.cfg;
    let n = cfg.len();
    let l = relation_lattice(cfg);
    let p: Vec<usize> = match (&args.p, &loaded.spec) {
        (Some(text), _) => parse_list(text, "--p")?,
        (None, Some(spec)) => (0..=spec.n()).collect(),
        (None, None) => Vec::new(),
    };
    if let Some(bad) = p.iter().find(|&&i| i >= n) {
        bail!("--p entry {bad} is out of range for {n} points");
    }
    let u: Vec<i64> = match (&args.u, &loaded.spec) {
        (Some(text), _) => parse_list(text, "--u")?,
        (None, Some(spec)) => head_sum(spec).iter().map(|x| -x).collect(),
        (None, None) => bail!("--u is required with --input"),
    };
    if u.len() != cfg.m + 1 {
        bail!("--u has {} entries, expected {}", u.len(), cfg.m + 1);
    }
    let window = Window::lattice_ball(&l, args.window, 2);
    let seq = SequenceP::new(p.clone(), n);
    let q = quasisolution(&seq, &u, cfg, &l, &window);
    let rebuilt = quasisolution_from_components(&seq, &u, cfg, &l, &window);
    let log_free = q.terms.values().all(|c| c.terms.keys().all(|e| e.iter().all(|&x| x == 0)));

    let combination = if l.rank > 0 {
        let ls: Vec<Vec<i64>> = (0..args.order).map(|j| l.basis[j % l.rank].clone()).collect();
        let s = combine_solution(&ls, &u, cfg, &l, &window)?;
        let mut verification = VerificationReport::default();
        verification.expect_boxes("", &s, &l)?;
        verification.expect_euler("", &s, cfg, &u);
        Some(Combination {
            relations: ls,
            terms: s.terms.len(),
            nonzero: !s.is_zero(),
            verification,
        })
    } else {
        None
    };

    let closed_form = match &loaded.spec {
        Some(spec) if cfg.m > 2 * spec.n() => {
            let neg: Vec<i64> = u.iter().map(|x| -x).collect();
            if is_interior(cfg, &neg)? {
                let closed = closed_form_series(&spec.alpha, &spec.beta, &neg, &window)?;
                let p0: Vec<usize> = (0..=spec.n()).collect();
                let direct = quasisolution(&SequenceP::new(p0.clone(), n), &u, cfg, &l, &window);
                let as_log: Series<LogPolynomial> = closed.map_coefficients(|c| LogPolynomial::constant(n, c.clone()));
                let (integrality, note) = match closed_form_integrality_report(&spec.alpha, &spec.beta, &neg, &window) {
                    Ok(r) => (Some(r), None),
                    Err(e) => (None, Some(e.to_string())),
                };
                Some(ClosedForm {
                    p: p0,
                    terms: closed.terms.len(),
                    series: SeriesJson::from(&closed),
                    equals_quasisolution: direct == as_log,
                    integrality,
                    note,
                })
            } else {
                None
            }
        }
        _ => None,
    };

    let pass = q == rebuilt
        && combination.as_ref().is_none_or(|c| c.verification.pass)
        && closed_form.as_ref().is_none_or(|c| c.equals_quasisolution);
    Ok(LogsolveReport {
        command: "logsolve",
        parameters: Parameters {
            source: loaded.label,
            p,
            u,
            order: args.order,
            window_radius: args.window,
            window,
        },
        config: ConfigJson::from(cfg),
        lattice_basis: l.basis.clone(),
        quasisolution: LogSeriesJson::from(&q),
        terms: q.terms.len(),
        zero: q.is_zero(),
        log_free,
        decomposition_matches: q == rebuilt,
        combination,
        closed_form,
        pass,
    })
}

impl Report for LogsolveReport {
    fn pass(&self) -> bool {
        self.pass
    }

    fn markdown(&self) -> String {
        let pr = &self.parameters;
        let mut out = format!("# Quasisolution for {}\n\n", pr.source);
        out.push_str(&format!("- P = {}, u = {}\n", vector(&pr.p), vector(&pr.u)));
        out.push_str(&format!("- window radius {}, {} terms\n", pr.window_radius, self.terms));
        out.push_str(&format!("- zero on the window: {}\n", if self.zero { "yes" } else { "no" }));
        out.push_str(&format!("- log-free: {}\n", if self.log_free { "yes" } else { "no" }));
        out.push_str(&format!("- subsequence decomposition: {}\n", verdict(self.decomposition_matches)));
        if let Some(c) = &self.combination {
            out.push_str(&format!("- combination of {} relations, {} terms, nonzero: {}\n", c.relations.len(), c.terms, c.nonzero));
            out.push_str(&verification_line("combination box and Euler operators", &c.verification));
        }
        if let Some(c) = &self.closed_form {
            out.push_str(&format!(
                "- closed form at P = {} ({} terms) equals the quasisolution: {}\n",
                vector(&c.p),
                c.terms,
                verdict(c.equals_quasisolution)
            ));
            if let Some(r) = &c.integrality {
                out.push_str("\n## Closed-form integrality\n\n");
                out.push_str(&p_table(r));
            }
            if let Some(n) = &c.note {
                out.push_str(&format!("- integrality scan skipped: {n}\n"));
            }
        }
        out.push_str(&format!("\nOverall: {}\n", verdict(self.pass)));
        out
    }
}
