use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use scrollsec_cli::{parse_point, run_atlas, run_classify, run_oracle_check, run_sample, AtlasBounds, RunConfig, DEFAULT_Q};
use scrollsec_core::{Error, ScrollSpec};

#[derive(Parser)]
#[command(name = "scrollsec", version, about = "Secant loci and simple projections of rational normal scrolls")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the secant locus of one point.
    Classify {
        #[command(flatten)]
        common: Common,
        /// Homogeneous coordinates, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Stratum census over seeded random points.
    Sample {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 200)]
        n: usize,
    },
    /// Enumerate and verify the scroll types with non-normal Del Pezzo projections.
    Atlas {
        #[arg(long, default_value_t = DEFAULT_Q)]
        q: u64,
        #[arg(long = "dmax", default_value_t = 2)]
        d_max: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Verification points per entry, on each side of the locus.
        #[arg(long, default_value_t = 50)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        max_deg: u32,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        max_h: i32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the fast path with brute force over a small field.
    OracleCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 25)]
        n: usize,
    },
}

#[derive(Args)]
struct Common {
    /// Scroll type, e.g. "S(1,2)+cone(0)".
    #[arg(long)]
    scroll: ScrollSpec,
    #[arg(long, default_value_t = DEFAULT_Q)]
    q: u64,
    #[arg(long = "dmax", default_value_t = 2)]
    d_max: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn config(&self, n: usize) -> RunConfig {
        RunConfig { scroll: Some(self.scroll.clone()), q: self.q, d_max: self.d_max, seed: self.seed, n, ..RunConfig::default() }
    }
}

fn emit<T: Serialize>(value: &T, out: Option<&PathBuf>) -> anyhow::Result<()> {
    let mut json = serde_json::to_string_pretty(value)?;
    json.push('\n');
    match out {
        Some(path) => std::fs::write(path, json).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{json}"),
    }
    Ok(())
}

#[derive(Serialize)]
struct Unclassifiable<'a> {
    schema: u32,
    error: &'static str,
    s: i64,
    rank: usize,
    reason: &'a str,
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let status = |ok: bool, code: u8| if ok { ExitCode::SUCCESS } else { ExitCode::from(code) };
    match cli.command {
        Command::Classify { common, point } => {
            let mut config = common.config(1);
            config.point = Some(parse_point(&point)?);
            match run_classify(&config) {
                Ok(report) => {
                    emit(&report, common.out.as_ref())?;
                    Ok(status(report.agreement, 3))
                }
                Err(Error::UnclassifiableSignature { s, rank, reason }) => {
                    let body = Unclassifiable { schema: scrollsec_cli::SCHEMA, error: "UnclassifiableSignature", s, rank, reason: &reason };
                    emit(&body, common.out.as_ref())?;
                    Ok(ExitCode::from(2))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Sample { common, n } => {
            let census = run_sample(&common.config(n))?;
            emit(&census, common.out.as_ref())?;
            Ok(status(census.ok(), 3))
        }
        Command::Atlas { q, d_max, seed, n, max_deg, max_n, max_h, out } => {
            let config = RunConfig { q, d_max, seed, n, bounds: AtlasBounds { max_deg, max_n, max_h }, ..RunConfig::default() };
            let report = run_atlas(&config)?;
            emit(&report, out.as_ref())?;
            Ok(status(report.ok(), 3))
        }
        Command::OracleCheck { common, n } => {
            let report = run_oracle_check(&common.config(n))?;
            emit(&report, common.out.as_ref())?;
            Ok(status(report.ok(), 3))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
