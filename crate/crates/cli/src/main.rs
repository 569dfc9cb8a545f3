//! `hypalg`: command-line front end for hypalg-core.
//!
//! Exit codes: 0 when every requested check passes, 1 when a check fails,
//! 2 on bad input.

mod input;
mod logsolve;
mod polytope;
mod ratio;
mod render;
mod series;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use render::Report;

#[derive(Parser, Debug)]
#[command(name = "hypalg", version, about = "Exact computations with A-hypergeometric series and factorial ratios")]
struct Cli {
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Render the report as markdown instead of JSON.
    #[arg(long, global = true)]
    markdown: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Facets of the configuration polytope and interior points of its dilations.
    Polytope(polytope::PolytopeArgs),
    /// The series with minimal negative support, checked against the system.
    Series(series::SeriesArgs),
    /// Logarithmic quasisolutions, their combinations and the closed form.
    Logsolve(logsolve::LogsolveArgs),
    /// Integrality of factorial ratios.
    #[command(subcommand)]
    Ratio(RatioCommand),
    /// Same as `ratio sweep`.
    Sweep(ratio::SweepArgs),
}

#[derive(Subcommand, Debug)]
enum RatioCommand {
    /// Classify one ratio and cross-check the oracles.
    Check(ratio::CheckArgs),
    /// Classify every ratio in a parameter box.
    Sweep(ratio::SweepArgs),
}

struct Rendered {
    text: String,
    pass: bool,
}

fn render<R: Report>(r: &R, markdown: bool) -> Rendered {
    Rendered {
        text: if markdown {
            r.markdown()
        } else {
            hypalg_core::json::to_pretty(r)
        },
        pass: r.pass(),
    }
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("HYPALG_THREADS") {
        let n: usize = v.trim().parse().with_context(|| format!("HYPALG_THREADS={v:?} is not a number"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("cannot configure the thread pool")?;
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<Rendered> {
    configure_threads()?;
    let md = cli.markdown;
    Ok(match &cli.command {
        Command::Polytope(a) => render(&polytope::run(a)?, md),
        Command::Series(a) => render(&series::run(a)?, md),
        Command::Logsolve(a) => render(&logsolve::run(a)?, md),
        Command::Ratio(RatioCommand::Check(a)) => render(&ratio::check(a)?, md),
        Command::Ratio(RatioCommand::Sweep(a)) | Command::Sweep(a) => render(&ratio::sweep_cmd(a)?, md),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let rendered = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &rendered.text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", rendered.text),
    }
    if rendered.pass {
        ExitCode::SUCCESS
    } else {
        eprintln!("verification failed");
        ExitCode::from(1)
    }
}
