//! `hypalg polytope`: facets and interior points of dilations.

use anyhow::Result;
use clap::Args;
use serde::Serialize;

use hypalg_core::geometry::{dilate, interior_lattice_points};
use hypalg_core::json::{ConfigJson, PolytopeJson};

use crate::input::Source;
use crate::render::{table, vector, Report};

#[derive(Args, Debug)]
pub struct PolytopeArgs {
    #[command(flatten)]
    pub source: Source,
    /// Largest dilation factor examined [default: dimension + 1].
    #[arg(long)]
    pub degree: Option<u32>,
    /// Interior points listed per dilation.
    #[arg(long, default_value_t = 20)]
    pub list: usize,
}

#[derive(Debug, Serialize)]
pub struct Parameters {
    pub source: String,
    pub degree: u32,
    pub list: usize,
}

#[derive(Debug, Serialize)]
pub struct Dilation {
    pub k: i64,
    pub interior_count: usize,
    pub interior_points: Vec<Vec<i64>>,
    pub truncated: bool,
}

#[derive(Debug, Serialize)]
pub struct PolytopeReport {
    pub command: &'static str,
    pub parameters: Parameters,
    pub config: ConfigJson,
    pub dim: usize,
    pub polytope: PolytopeJson,
    pub dilations: Vec<Dilation>,
    pub first_interior_dilation: Option<i64>,
    pub pass: bool,
}

pub fn run(args: &PolytopeArgs) -> Result<PolytopeReport> {
    let loaded = args.source.load_config()?;
    let cfg = &loaded.cfg;
    let p = cfg.polytope()?;
    let degree = args.degree.unwrap_or(cfg.m as u32 + 1);
    let mut dilations = Vec::new();
    for k in 1..=degree as i64 {
        let pts = interior_lattice_points(&dilate(&p, k)?);
        dilations.push(Dilation {
            k,
            interior_count: pts.len(),
            truncated: pts.len() > args.list,
            interior_points: pts.into_iter().take(args.list).collect(),
        });
    }
    let first = dilations.iter().find(|d| d.interior_count > 0).map(|d| d.k);
    Ok(PolytopeReport {
        command: "polytope",
        parameters: Parameters {
            source: loaded.label,
            degree,
            list: args.list,
        },
        config: ConfigJson::from(cfg),
        dim: p.dim,
        polytope: PolytopeJson::from(&p),
        dilations,
        first_interior_dilation: first,
        pass: true,
    })
}

impl Report for PolytopeReport {
    fn pass(&self) -> bool {
        self.pass
    }

    fn markdown(&self) -> String {
        let mut out = format!("# Polytope of {}\n\nDimension {}.\n\n## Facets\n\n", self.parameters.source, self.dim);
        let rows: Vec<Vec<String>> = self
            .polytope
            .facets
            .iter()
            .map(|f| vec![vector(&f.normal), f.offset.to_string()])
            .collect();
        out.push_str(&table(&["normal", "offset (normal . x <= offset)"], &rows));
        out.push_str("\n## Vertices\n\n");
        for v in &self.polytope.vertices {
            out.push_str(&format!("- {}\n", vector(v)));
        }
        out.push_str("\n## Interior lattice points of k * P\n\n");
        let rows: Vec<Vec<String>> = self
            .dilations
            .iter()
            .map(|d| {
                let mut pts: Vec<String> = d.interior_points.iter().map(|p| vector(p)).collect();
                if d.truncated {
                    pts.push("...".into());
                }
                vec![d.k.to_string(), d.interior_count.to_string(), pts.join(" ")]
            })
            .collect();
        out.push_str(&table(&["k", "count", "points"], &rows));
        match self.first_interior_dilation {
            Some(k) => out.push_str(&format!("\nFirst dilation with an interior point: {k}.\n")),
            None => out.push_str(&format!("\nNo interior point up to k = {}.\n", self.parameters.degree)),
        }
        out
    }
}
