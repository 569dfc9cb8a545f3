//! Shared argument groups and loaders.

use std::fmt::Display;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::Args;
use hypalg_core::factorial::RatioSpec;
use hypalg_core::geometry::{cone_hrep, dilate, first_interior_lattice_point, LatticeConfig};
use hypalg_core::json::{parse_config, parse_ratio_spec};
use hypalg_core::rational::{int, Rational};

/// Either a JSON configuration file or a factorial ratio given by `--alpha/--beta`.
#[derive(Args, Debug, Clone)]
pub struct Source {
    /// JSON file `{"m": .., "points": [[..], ..]}`.
    #[arg(long, conflicts_with_all = ["alpha", "beta"])]
    pub input: Option<PathBuf>,
    /// Numerator parameters, comma separated (e.g. 30,1).
    #[arg(long, requires = "beta")]
    pub alpha: Option<String>,
    /// Denominator parameters, comma separated (e.g. 15,10,6).
    #[arg(long, requires = "alpha")]
    pub beta: Option<String>,
}

pub struct Loaded {
    pub label: String,
    pub cfg: LatticeConfig,
    pub spec: Option<RatioSpec>,
}

pub fn parse_list<T>(text: &str, what: &str) -> Result<Vec<T>>
where
    T: FromStr,
    T::Err: Display,
{
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .enumerate()
        .map(|(i, s)| {
            s.trim()
                .parse::<T>()
                .map_err(|e| anyhow::anyhow!("{what}: entry {i} ({:?}): {e}", s.trim()))
        })
        .collect()
}

pub fn parse_rationals(text: &str, what: &str) -> Result<Vec<Rational>> {
    hypalg_core::rational::parse_rational_list(text).with_context(|| format!("{what}: cannot parse {text:?}"))
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn spec_from_lists(alpha: &str, beta: &str) -> Result<RatioSpec> {
    let alpha = parse_list::<u64>(alpha, "--alpha")?;
    let beta = parse_list::<u64>(beta, "--beta")?;
    Ok(RatioSpec::new(alpha, beta)?)
}

impl Source {
    /// Loads a lattice configuration.
    pub fn load_config(&self) -> Result<Loaded> {
        match (&self.input, &self.alpha, &self.beta) {
            (Some(path), _, _) => {
                let cfg = parse_config(&read(path)?).with_context(|| format!("invalid configuration in {}", path.display()))?;
                Ok(Loaded {
                    label: path.display().to_string(),
                    cfg,
                    spec: None,
                })
            }
            (None, Some(a), Some(b)) => {
                let spec = spec_from_lists(a, b)?;
                let cfg = LatticeConfig::alpha_beta(&spec.alpha, &spec.beta)?;
                Ok(Loaded {
                    label: spec.label(),
                    cfg,
                    spec: Some(spec),
                })
            }
            _ => bail!("give either --input FILE or both --alpha and --beta"),
        }
    }

    /// Loads a factorial ratio; `--input` then holds `{"alpha": [..], "beta": [..]}`.
    pub fn load_spec(&self) -> Result<RatioSpec> {
        match (&self.input, &self.alpha, &self.beta) {
            (Some(path), _, _) => {
                parse_ratio_spec(&read(path)?).with_context(|| format!("invalid ratio in {}", path.display()))
            }
            (None, Some(a), Some(b)) => spec_from_lists(a, b),
            _ => bail!("give either --input FILE or both --alpha and --beta"),
        }
    }
}

/// `(1, ..., 1, 0, ..., 0, n + 1)`: the head sum `a_0 + ... + a_n` of a ratio configuration.
pub fn head_sum(spec: &RatioSpec) -> Vec<i64> {
    let mut u = vec![1; spec.n()];
    u.extend(vec![0; spec.beta.len()]);
    u.push(spec.n() as i64 + 1);
    u
}

/// `-1` on the head indices `0..=n`, `0` elsewhere; solves `sum v_i a_i = -head_sum`.
pub fn head_exponent(spec: &RatioSpec) -> Vec<Rational> {
    (0..spec.m() + 2).map(|i| if i <= spec.n() { int(-1) } else { int(0) }).collect()
}

/// Interior lattice point of the cone of least degree, first in the
/// polytope's enumeration order at that degree.
pub fn minimal_interior_point(cfg: &LatticeConfig) -> Result<Vec<i64>> {
    let base = cfg.polytope()?;
    for t in 1..=cfg.m as i64 + 1 {
        if let Some(mut x) = first_interior_lattice_point(&dilate(&base, t)?) {
            x.push(t);
            return Ok(x);
        }
    }
    bail!("no interior lattice point up to degree {}", cfg.m + 1)
}

pub fn is_interior(cfg: &LatticeConfig, u: &[i64]) -> Result<bool> {
    Ok(u.len() == cfg.m + 1 && cone_hrep(cfg)?.is_interior(u))
}
