//! Command-line front end: run verification checks for one configuration
//! and emit deterministic reports.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use hh_engine::algebra::Algebra;
use hh_engine::expected::ParityReading;
use hh_engine::field::Field;
use hh_engine::quiver::Family;
use hh_engine::run::{run, Check, JobConfig};
use std::path::PathBuf;
use std::sync::Arc;

#[derive(Parser)]
#[command(
    name = "hh",
    about = "Exact verification of bimodule resolutions and Hochschild cohomology rings \
             for the two bound quiver algebra families",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// algebra family: e7 or e8
    #[arg(long)]
    family: String,
    /// number of quiver blocks (s >= 1)
    #[arg(long, default_value_t = 1)]
    s: usize,
    /// field characteristic: 0 (rationals) or a prime
    #[arg(long = "char", default_value_t = 2)]
    characteristic: u64,
    /// verification depth (defaults to a per-check window)
    #[arg(long = "max-deg")]
    max_degree: Option<usize>,
    /// output format: json, csv or md
    #[arg(long, default_value = "md")]
    format: String,
    /// write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// resolution cache directory (also honors HH_CACHE_DIR)
    #[arg(long = "cache-dir")]
    cache_dir: Option<PathBuf>,
    /// parity reading for the expected tables: ell, ell-plus-m or both
    #[arg(long = "parity-reading", default_value = "both")]
    parity_reading: String,
    /// force sequential execution
    #[arg(long)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Build the algebra and print a summary (optionally the full JSON)
    Build {
        #[command(flatten)]
        common: CommonArgs,
        /// write the algebra description as JSON instead of a report
        #[arg(long)]
        dump: bool,
    },
    /// Build the resolution; verify exactness, minimality and the term formulas
    Resolve {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Per-degree dimension tables against the published values
    Dims {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// One-sided resolutions of the simple modules and their period claims
    Syzygies {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Automorphism orders, the twisted syzygy isomorphism, minimal period
    Period {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Generators, cup products and the presentation tables
    Products {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Everything, in dependency order
    Verify {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Validate a resolution cache file against a freshly built algebra
    Cache {
        #[command(flatten)]
        common: CommonArgs,
        /// cache file to validate
        #[arg(long)]
        path: PathBuf,
    },
}

fn parse_common(c: &CommonArgs) -> Result<(Family, JobConfig)> {
    let family =
        Family::parse(&c.family).ok_or_else(|| anyhow!("unknown family {:?}", c.family))?;
    let parity = match c.parity_reading.as_str() {
        "both" => None,
        other => Some(
            ParityReading::parse(other)
                .ok_or_else(|| anyhow!("unknown parity reading {other:?}"))?,
        ),
    };
    if c.sequential {
        hh_engine::exec::set_sequential(true);
    }
    let cache_dir = c
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os("HH_CACHE_DIR").map(PathBuf::from));
    Ok((
        family,
        JobConfig {
            family,
            s: c.s,
            characteristic: c.characteristic,
            max_degree: c.max_degree,
            checks: Vec::new(),
            parity,
            cache_dir,
        },
    ))
}

fn emit(common: &CommonArgs, report: &hh_engine::report::VerificationReport) -> Result<()> {
    let body = match common.format.as_str() {
        "json" => report.to_json(),
        "csv" => report.to_csv(),
        "md" => report.to_markdown(),
        other => bail!("unknown format {other:?} (expected json, csv or md)"),
    };
    match &common.out {
        Some(path) => std::fs::write(path, body).with_context(|| format!("writing {path:?}"))?,
        None => print!("{body}"),
    }
    for (name, secs) in &report.timings {
        eprintln!("timing: {name} {secs:.3}s");
    }
    Ok(())
}

fn run_checks(common: &CommonArgs, checks: Vec<Check>) -> Result<i32> {
    let (_family, mut config) = parse_common(common)?;
    config.checks = checks;
    let report = run(&config).map_err(|e| anyhow!("{e}"))?;
    emit(common, &report)?;
    Ok(if report.mismatch_count() == 0 { 0 } else { 1 })
}

fn main() {
    let cli = Cli::parse();
    let code = match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    };
    std::process::exit(code);
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Build { common, dump } => {
            let (family, config) = parse_common(&common)?;
            let field = Field::new(config.characteristic).map_err(|e| anyhow!("{e}"))?;
            let algebra = Algebra::build(family, config.s, field).map_err(|e| anyhow!("{e}"))?;
            if dump {
                let json = serde_json::to_string_pretty(&algebra.to_json())?;
                match &common.out {
                    Some(path) => std::fs::write(path, json)?,
                    None => println!("{json}"),
                }
                return Ok(0);
            }
            let mut config = config;
            config.checks = vec![Check::Build];
            let report = run(&config).map_err(|e| anyhow!("{e}"))?;
            emit(&common, &report)?;
            Ok(if report.mismatch_count() == 0 { 0 } else { 1 })
        }
        Command::Resolve { common } => run_checks(&common, vec![Check::Build, Check::Terms]),
        Command::Dims { common } => run_checks(&common, vec![Check::Dims]),
        Command::Syzygies { common } => run_checks(&common, vec![Check::Syzygies]),
        Command::Period { common } => run_checks(&common, vec![Check::Period]),
        Command::Products { common } => run_checks(&common, vec![Check::Products]),
        Command::Verify { common } => run_checks(&common, Check::all()),
        Command::Cache { common, path } => {
            let (family, config) = parse_common(&common)?;
            let field = Field::new(config.characteristic).map_err(|e| anyhow!("{e}"))?;
            let algebra =
                Arc::new(Algebra::build(family, config.s, field).map_err(|e| anyhow!("{e}"))?);
            match hh_engine::cache::load(algebra, &path) {
                Ok(res) => {
                    println!(
                        "cache ok: {} degrees, d.d = 0 and minimality revalidated",
                        res.max_degree()
                    );
                    Ok(0)
                }
                Err(e) => {
                    println!("cache rejected: {e}");
                    Ok(1)
                }
            }
        }
    }
}
