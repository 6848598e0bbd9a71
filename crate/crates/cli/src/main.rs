mod commands;
mod config;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::{Failure, Output};
use crate::config::{GlobalArgs, RunConfig};

/// Fredholm, Drazin and subspace-geometry analysis of operators on
/// finitely generated modules over finite-dimensional C*-algebras.
#[derive(Parser, Debug)]
#[command(name = "cstar", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fredholm, Drazin and B-Fredholm reports of an operator file, plus the
    /// closed-sum geometry of its kernel and image.
    Analyze { path: PathBuf },
    /// Run a seeded randomized property suite.
    Verify {
        /// exact-sequence, perturbation-chain, product-chain, drazin-axioms,
        /// commuting-drazin, dual, browder, bouldin, closed-sum,
        /// banach-perturbation or banach-product
        suite: String,
    },
    /// Decay table for a truncated operator family.
    Probe {
        /// multiplier, left-multiplier or nonclosed-square
        family: String,
        /// Comma-separated truncation sizes
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
    },
    /// Drazin inverse, adjoint duality and, with a commuting partner, the
    /// intersection criterion and shared Browder decomposition.
    Drazin {
        path: PathBuf,
        #[arg(long)]
        with: Option<PathBuf>,
    },
    /// Dixmier angle and closed-sum report for two submodule files.
    Geometry { m: PathBuf, n: PathBuf },
    /// Generalized inverse of the realization, with optional finite rank
    /// perturbation and left factor.
    Banach {
        path: PathBuf,
        #[arg(long)]
        perturb: Option<PathBuf>,
        #[arg(long)]
        left: Option<PathBuf>,
    },
}

fn run(cli: &Cli, cfg: &RunConfig) -> Result<Output, Failure> {
    match &cli.command {
        Command::Analyze { path } => commands::analyze(path, cfg),
        Command::Verify { suite } => commands::verify(suite, cfg),
        Command::Probe { family, sizes } => commands::probe(family, sizes, cfg),
        Command::Drazin { path, with } => commands::drazin(path, with.as_deref(), cfg),
        Command::Geometry { m, n } => commands::geometry(m, n, cfg),
        Command::Banach { path, perturb, left } => commands::banach(path, perturb.as_deref(), left.as_deref(), cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match RunConfig::from_args(&cli.global) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    cstar_core::set_tolerances(cfg.tolerances);
    match run(&cli, &cfg) {
        Ok(out) => {
            if let Err(e) = cfg.emit(&out.text) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Data(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Violation(e)) => {
            eprintln!("violation: {e}");
            ExitCode::from(1)
        }
    }
}
