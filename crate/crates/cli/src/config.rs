use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use cstar_core::Tolerances;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Flags shared by every subcommand.
#[derive(Args, Clone, Debug)]
pub struct GlobalArgs {
    /// Seed for randomized instances and sampling.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,

    /// Number of instances for `verify` (defaults to the suite's size).
    #[arg(long = "n", global = true)]
    pub instances: Option<usize>,

    /// Random samples per instance for the closed-sum bound.
    #[arg(long, global = true, default_value_t = cstar_core::geometry::DEFAULT_SAMPLES)]
    pub samples: usize,

    /// Relative singular value threshold for rank decisions.
    #[arg(long, global = true)]
    pub tol_rank: Option<f64>,

    /// Principal angle (radians) below which subspaces are identified.
    #[arg(long, global = true)]
    pub tol_angle: Option<f64>,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

/// Everything that determines the output of a run. Identical configurations
/// produce identical bytes.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub instances: Option<usize>,
    pub samples: usize,
    pub tolerances: Tolerances,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn from_args(args: &GlobalArgs) -> Result<Self, String> {
        let mut tolerances = Tolerances::default();
        if let Some(t) = args.tol_rank {
            check_positive("--tol-rank", t)?;
            tolerances.rank_tol = t;
        }
        if let Some(t) = args.tol_angle {
            check_positive("--tol-angle", t)?;
            tolerances.angle_tol = t;
        }
        Ok(RunConfig {
            seed: args.seed,
            instances: args.instances,
            samples: args.samples,
            tolerances,
            out: args.out.clone(),
            format: args.format,
        })
    }

    pub fn emit(&self, text: &str) -> io::Result<()> {
        match &self.out {
            Some(path) => fs::write(path, text),
            None => io::stdout().lock().write_all(text.as_bytes()),
        }
    }
}

fn check_positive(flag: &str, t: f64) -> Result<(), String> {
    if t.is_finite() && t > 0.0 {
        Ok(())
    } else {
        Err(format!("{flag} must be a positive number, got {t}"))
    }
}
