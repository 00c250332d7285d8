//! `geolab`: solve positions, build reductions, run verification campaigns
//! and play interactively.

mod config;
mod input;
mod play;
mod reduce;
mod solve;
mod verify;

use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use geolab_core::{Player, Variant};
use geolab_reductions::ReductionKind;

use crate::config::Config;

#[derive(Parser)]
#[command(name = "geolab", version, about = "Generalized Geography toolkit")]
struct Cli {
    /// JSON config file (node_budget, workers, seed, table_cap).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Node budget for exact search.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Worker threads for campaigns (0 = one per core).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Seed for random play. GEOLAB_SEED overrides the config file.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Transposition table capacity in entries.
    #[arg(long, global = true)]
    table_cap: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve a position. Exit 0 when solved, 2 when the budget runs out, 1 on bad input.
    Solve {
        position: PathBuf,
        /// Reinterpret the position under another variant, e.g. UIF.
        #[arg(long)]
        variant: Option<Variant>,
        /// Print the principal variation.
        #[arg(long)]
        pv: bool,
        /// Score reaching VERTEX with PLAYER to move as a draw, e.g. v5:L.
        #[arg(long, value_name = "VERTEX:PLAYER")]
        draw_on: Option<String>,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Build a reduction artifact from a QDIMACS formula or a position JSON.
    Reduce {
        kind: ReductionKind,
        input: PathBuf,
        /// Artifact JSON path (default: input path with .<kind>.json).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write Graphviz DOT here.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Run a campaign spec. Exit 0 iff every campaign passes.
    Verify {
        #[arg(required_unless_present = "goldens", conflicts_with = "goldens")]
        spec: Option<PathBuf>,
        /// Run the bundled golden campaigns.
        #[arg(long)]
        goldens: bool,
        /// Write the reports as JSON here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Play against the computer on stdin/stdout.
    Play {
        position: PathBuf,
        /// Which player you are.
        #[arg(long, default_value = "L")]
        human: Player,
        #[arg(long, value_enum, default_value_t = Ai::Search)]
        ai: Ai,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Ai {
    Search,
    Matching,
    Random,
}

fn run(cli: Cli) -> Result<u8, String> {
    let mut cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    cfg.apply_env(std::env::var("GEOLAB_SEED").ok().as_deref())?;
    cfg.apply_flags(cli.budget, cli.workers, cli.seed, cli.table_cap);
    cfg.validate()?;
    match cli.cmd {
        Cmd::Solve { position, variant, pv, draw_on, json } => {
            solve::run(&solve::SolveArgs { position, variant, pv, draw_on, json }, &cfg)
        }
        Cmd::Reduce { kind, input, out, dot } => reduce::run(kind, &input, out, dot.as_deref()),
        Cmd::Verify { spec, goldens: _, report } => verify::run(spec.as_deref(), report.as_deref(), &cfg),
        Cmd::Play { position, human, ai } => {
            let p = input::read_position(&position)?;
            play::run(p, human, ai, &cfg, io::stdin().lock(), io::stdout().lock())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
