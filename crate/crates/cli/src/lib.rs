//! Command-line front end for the `blaschke-lab-core` experiments.
//!
//! Every command prints a short summary. With `--out FILE` it also writes a
//! data table (CSV by default) and `FILE.meta.json` with the effective
//! configuration, defaults and truncation parameters.

use std::fmt;
use std::path::PathBuf;

use anyhow::Result;
use clap::{Parser, Subcommand};

pub mod commands;
pub mod descriptor;
pub mod output;
pub mod params;

pub use output::Output;
pub use params::Params;

#[derive(Debug, Parser)]
#[command(
    name = "blaschke-lab",
    version,
    about = "Blaschke products, model spaces and weighted Bergman norms"
)]
pub struct Cli {
    /// JSON config file with the same keys as the long flags; flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a zero sequence.
    #[command(after_help = "CSV columns: n,re,im,modulus,gap,phase  (gap = 1 - |a_n|)")]
    Generate(Params),
    /// Blaschke condition, separation and beta-summability of a sequence.
    #[command(after_help = "CSV columns: quantity,value,detail")]
    Diagnose(Params),
    /// Partial weighted area integrals of B', a model function or the Ahern integrand.
    #[command(after_help = "CSV columns: r_k,partial,cumulative  (one row per annulus)")]
    Norm(Params),
    /// Lemma integral along |a| = 1 - 2^-k and its predicted regime.
    #[command(
        after_help = "CSV columns: k,modulus,value,extrapolation_error,regime,comparison,ratio"
    )]
    Lemma(Params),
    /// Region label and applicable theorems at (alpha, p).
    #[command(after_help = "CSV columns: alpha,p,regions,theorems,betas")]
    Region(Params),
    /// Region labels on a grid, with the boundary curves.
    #[command(after_help = "CSV columns: alpha,p,label,p_2_3,p_1_half,p_1_alpha,p_4_3,p_2_alpha")]
    RegionGrid(Params),
    /// Check a theorem's conclusion against the numerics.
    #[command(after_help = "CSV columns: theorem,alpha,p,item,status,detail")]
    Verify(Params),
    /// Gram matrix of the first basis functions of the model space.
    #[command(after_help = "CSV columns: i,j,re,im,deviation  (deviation = |G_ij - delta_ij|)")]
    BasisCheck(Params),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Generate(_) => "generate",
            Command::Diagnose(_) => "diagnose",
            Command::Norm(_) => "norm",
            Command::Lemma(_) => "lemma",
            Command::Region(_) => "region",
            Command::RegionGrid(_) => "region-grid",
            Command::Verify(_) => "verify",
            Command::BasisCheck(_) => "basis-check",
        }
    }

    pub fn params(&self) -> &Params {
        match self {
            Command::Generate(p)
            | Command::Diagnose(p)
            | Command::Norm(p)
            | Command::Lemma(p)
            | Command::Region(p)
            | Command::RegionGrid(p)
            | Command::Verify(p)
            | Command::BasisCheck(p) => p,
        }
    }
}

/// A malformed or missing parameter; the binary exits with status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(e: anyhow::Error) -> anyhow::Error {
    UsageError(format!("{e:#}")).into()
}

/// Runs one command: merges the config file under the flags, computes, and
/// writes `--out` files.
pub fn run(cli: &Cli) -> Result<Output> {
    let params = match &cli.config {
        Some(path) => Params::from_file(path)
            .map_err(usage)?
            .overlaid(cli.command.params()),
        None => cli.command.params().clone(),
    };
    let output = match cli.command {
        Command::Generate(_) => commands::generate(&params),
        Command::Diagnose(_) => commands::diagnose(&params),
        Command::Norm(_) => commands::norm(&params),
        Command::Lemma(_) => commands::lemma(&params),
        Command::Region(_) => commands::region(&params),
        Command::RegionGrid(_) => commands::region_grid_cmd(&params),
        Command::Verify(_) => commands::verify_cmd(&params),
        Command::BasisCheck(_) => commands::basis_check(&params),
    }?;
    if let Some(out) = &params.out {
        output::write_files(out, cli.command.name(), &params, &output)?;
    }
    Ok(output)
}
