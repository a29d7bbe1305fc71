//! `funcobs`: exact functional-observer existence checks from the command line.
//!
//! Exit codes: 0 when every requested property holds, 1 when one fails,
//! 2 on usage or input errors.

mod batch;
mod check;
mod render;
mod simulate;
mod witness;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use funcobs::SystemFile;

#[derive(Parser)]
#[command(name = "funcobs", version, about = "Decide functional, strong and strong-star functional detectability exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Specialization {
    /// State estimation, E = I and F = 0
    Hautus,
    /// Input estimation, E = 0 and F = I
    Leftinv,
    /// Fixed-order observer conditions
    Darouach,
}

#[derive(clap::Args, Clone, Debug, Default)]
pub struct Selection {
    /// Functional detectability (known-input reduction)
    #[arg(long)]
    functional: bool,
    /// Strong functional detectability
    #[arg(long)]
    strong: bool,
    /// Strong-star functional detectability
    #[arg(long)]
    strong_star: bool,
    /// All three of the above (the default when nothing is selected)
    #[arg(long)]
    all: bool,
    /// Also run a specialized test
    #[arg(long, value_enum)]
    specialize: Vec<Specialization>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide the selected properties and print their certificates
    Check {
        system: PathBuf,
        #[command(flatten)]
        selection: Selection,
        /// Write the structured report (JSON) here
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the full certificates, not just the summary
        #[arg(long, short)]
        verbose: bool,
    },
    /// Solve [M N] P = [E F] over the rational functions and classify the solution
    Witness {
        system: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate plant and observer; exit 0 iff the estimation error decayed
    Simulate(simulate::SimulateArgs),
    /// Check many system files and compare against their expected verdicts
    Batch {
        /// Files or directories (directories contribute their *.json files)
        paths: Vec<PathBuf>,
        /// Worker threads
        #[arg(long, short, default_value_t = 1)]
        jobs: usize,
        /// Write one report per system into this directory
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

pub fn load_system(path: &Path) -> anyhow::Result<SystemFile> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    SystemFile::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn write_file(path: &Path, contents: &str) -> anyhow::Result<()> {
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Check {
            system,
            selection,
            out,
            verbose,
        } => check::run(&system, &selection, out.as_deref(), verbose),
        Command::Witness { system, out } => witness::run(&system, out.as_deref()),
        Command::Simulate(args) => simulate::run(&args),
        Command::Batch { paths, jobs, out_dir } => batch::run(&paths, jobs, out_dir.as_deref()),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
