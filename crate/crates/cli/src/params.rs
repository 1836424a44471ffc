use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::usage;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    /// `re im` per line; `generate` only.
    Txt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    /// `B'` of the truncated product.
    Bprime,
    /// The Ahern criterion integrand `((1-|B|)/(1-|z|))^p (1-|z|)^alpha`.
    Ahern,
    /// `f'` of a random model-space function.
    Model,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// Orthonormal basis.
    G,
    /// Riesz basis.
    H,
}

/// Parameters shared by all commands. A JSON config file uses the same keys
/// as the long flags; flags given on the command line win.
#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Params {
    /// Weight exponent alpha > -1.
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    /// Integrability exponent p > 0.
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    /// Theorem id: T1..T10 or AV.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem: Option<String>,
    /// Sequence law, e.g. geometric:c=1,r=0.5,N=30 or power:gamma=1.2,N=400,phases=spread.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seq: Option<String>,
    /// Number of zeros; overrides N= in --seq.
    #[arg(long = "N")]
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Radii 1 - 2^-k for k in k1..k2.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rmax_levels: Option<String>,
    /// Seed for random model functions.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Data file; metadata goes to <out>.meta.json.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    /// Coefficients per random model function.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<usize>,
    /// Number of random model functions.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Basis>,
    /// Number of basis functions.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    /// Summability exponent for diagnose.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<Target>,
    /// Levels k of |a| = 1 - 2^-k for lemma, as k1..k2.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_levels: Option<String>,
    /// alpha range lo..hi for region-grid.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_range: Option<String>,
    /// p range lo..hi for region-grid.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_range: Option<String>,
    /// Grid spacing for region-grid.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step: Option<f64>,
}

macro_rules! overlay {
    ($base:ident, $top:ident, $($field:ident),*) => {
        $( if $top.$field.is_some() { $base.$field = $top.$field.clone(); } )*
    };
}

impl Params {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    /// `self` with every field set in `top` replaced.
    pub fn overlaid(mut self, top: &Params) -> Params {
        overlay!(
            self,
            top,
            alpha,
            p,
            theorem,
            seq,
            n,
            rmax_levels,
            seed,
            out,
            format,
            coefficients,
            samples,
            basis,
            count,
            beta,
            target,
            a_levels,
            alpha_range,
            p_range,
            step
        );
        self
    }

    pub fn require_alpha(&self) -> Result<f64> {
        self.alpha
            .ok_or_else(|| usage(anyhow!("--alpha is required")))
    }

    pub fn require_p(&self) -> Result<f64> {
        self.p.ok_or_else(|| usage(anyhow!("--p is required")))
    }

    pub fn require_seq(&self) -> Result<&str> {
        self.seq
            .as_deref()
            .ok_or_else(|| usage(anyhow!("--seq is required")))
    }
}

/// Parses `k1..k2` (or `k1..=k2`) into an inclusive level range.
pub fn parse_levels(text: &str) -> Result<(u32, u32)> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| anyhow!("expected levels as k1..k2, got '{text}'"))?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: u32 = lo
        .trim()
        .parse()
        .with_context(|| format!("invalid level '{lo}'"))?;
    let hi: u32 = hi
        .trim()
        .parse()
        .with_context(|| format!("invalid level '{hi}'"))?;
    if lo == 0 || hi < lo {
        bail!("levels must satisfy 1 <= k1 <= k2, got {lo}..{hi}");
    }
    Ok((lo, hi))
}

/// Parses `lo..hi` into a real range.
pub fn parse_range(text: &str) -> Result<(f64, f64)> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| anyhow!("expected a range lo..hi, got '{text}'"))?;
    let lo: f64 = lo
        .trim()
        .parse()
        .with_context(|| format!("invalid bound '{lo}'"))?;
    let hi: f64 = hi
        .trim()
        .parse()
        .with_context(|| format!("invalid bound '{hi}'"))?;
    Ok((lo, hi))
}
