//! Command-line front end: TOML config in, CSV traces and JSON reports out,
//! with a checksum manifest per run.

pub mod commands;
pub mod config;
pub mod game;
pub mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::commands::Context;
use crate::config::{Config, Overrides};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "smale-lab", version, about = "Payoff-based strategies in repeated Prisoner's Dilemmas")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    #[arg(long, global = true)]
    pub horizon: Option<u64>,
    #[arg(long, global = true)]
    pub replications: Option<usize>,
    #[arg(long, global = true)]
    pub delta: Option<f64>,
    #[arg(long, global = true)]
    pub eta: Option<f64>,
    #[arg(long = "tail-n", global = true)]
    pub tail_n: Option<u64>,
}

#[derive(Debug, Subcommand, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Check the game and graph conditions.
    Validate,
    /// One seeded run.
    Simulate,
    /// Independent runs from a master seed.
    Replicate,
    /// Certify every band of the payoff-based players.
    Certify,
    /// Tail frequencies against the closed-form bounds.
    Bounds,
    /// Projected Euler path of the limit dynamics.
    Dynamics,
    /// Unilateral deviations against all-good play.
    NashGap,
}

/// Parse `args` (program name first), run, and return the exit code.
pub fn run_cli<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    if let Some(n) = std::env::var("SMALE_LAB_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // fails only if a pool already exists, e.g. in tests
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let cfg = match load(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            return EXIT_CONFIG;
        }
    };
    let cx = Context {
        cfg: &cfg,
        out: &cli.out,
    };
    let result = match cli.command {
        Command::Validate => commands::validate(&cx),
        Command::Simulate => commands::simulate(&cx),
        Command::Replicate => commands::replicate_cmd(&cx),
        Command::Certify => commands::certify(&cx),
        Command::Bounds => commands::bounds(&cx),
        Command::Dynamics => commands::dynamics(&cx),
        Command::NashGap => commands::nash_gap_cmd(&cx),
    };
    match result {
        Ok(o) if o.ok => EXIT_OK,
        Ok(_) => EXIT_FAILED,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_CONFIG
        }
    }
}

fn load(cli: &Cli) -> anyhow::Result<Config> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| anyhow::anyhow!("--config is required"))?;
    let (cfg, base) = Config::load(path)?;
    let overrides = Overrides {
        seed: cli.seed,
        horizon: cli.horizon,
        replications: cli.replications,
        delta: cli.delta,
        eta: cli.eta,
        tail_n: cli.tail_n,
    };
    let cfg = cfg.resolve(&overrides, &base)?;
    if cli.command != Command::Validate && cli.command != Command::Certify {
        cfg.seed()?;
    }
    Ok(cfg)
}
