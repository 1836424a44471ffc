//! Blaschke zero sequences: generators, summability verdicts and separation constants.
//!
//! Every zero is stored in polar form together with its exact boundary gap
//! `1 - |a_n|`, which keeps pseudohyperbolic distances between zeros accurate
//! even when the gaps are far below machine epsilon relative to one.

use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::geometry::{DiskPoint, StolzDomain};
use crate::numeric::CompensatedSum;

/// Golden ratio, used by the `Spread` phase rule.
const GOLDEN: f64 = 1.618_033_988_749_895;

/// How generated zeros are placed in angle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseRule {
    /// All zeros on the positive real axis.
    #[default]
    Radial,
    /// Zero `n` at angle `2 pi frac(phi n)`, `phi` the golden ratio.
    Spread,
}

impl PhaseRule {
    pub fn phase(self, n: usize) -> f64 {
        match self {
            PhaseRule::Radial => 0.0,
            PhaseRule::Spread => std::f64::consts::TAU * (GOLDEN * n as f64).fract(),
        }
    }
}

/// Generator descriptor of a zero sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "lowercase")]
pub enum SequenceLaw {
    /// `1 - |a_n| = (n + 1)^(-gamma)`.
    Power { gamma: f64, phases: PhaseRule },
    /// `1 - |a_n| = c r^n`.
    Geometric { c: f64, r: f64, phases: PhaseRule },
    /// Moduli of `base`, phases pushed inside a Stolz angle.
    Stolz {
        domain: StolzDomain,
        base: Box<SequenceLaw>,
    },
    /// The listed zeros are all the zeros (finite Blaschke product).
    Finite,
    /// A prefix of some sequence whose continuation is unknown.
    Explicit,
}

impl SequenceLaw {
    /// Closed-form gap `1 - |a_n|` for 1-based index `n`.
    fn gap(&self, n: usize) -> Option<f64> {
        match self {
            SequenceLaw::Power { gamma, .. } => Some(((n + 1) as f64).powf(-gamma)),
            SequenceLaw::Geometric { c, r, .. } => Some(c * r.powi(n as i32)),
            SequenceLaw::Stolz { base, .. } => base.gap(n),
            SequenceLaw::Finite | SequenceLaw::Explicit => None,
        }
    }

    /// Upper bound for `sum_{n > count} (1 - |a_n|)^beta` over the infinite law.
    ///
    /// `Some(inf)` means the tail diverges; `None` means the law does not determine it.
    fn tail_power_sum(&self, count: usize, beta: f64) -> Option<f64> {
        match self {
            SequenceLaw::Power { gamma, .. } => {
                let s = gamma * beta;
                if s <= 1.0 {
                    Some(f64::INFINITY)
                } else {
                    // indices m >= count + 2, bounded by the integral from count + 1
                    Some(((count + 1) as f64).powf(1.0 - s) / (s - 1.0))
                }
            }
            SequenceLaw::Geometric { c, r, .. } => {
                let rb = r.powf(beta);
                Some(c.powf(beta) * rb.powi(count as i32 + 1) / (1.0 - rb))
            }
            SequenceLaw::Stolz { base, .. } => base.tail_power_sum(count, beta),
            SequenceLaw::Finite | SequenceLaw::Explicit => None,
        }
    }

    fn beta_rule(&self, beta: f64) -> Option<(Convergence, String)> {
        match self {
            SequenceLaw::Power { gamma, .. } => {
                let s = gamma * beta;
                Some(if s > 1.0 {
                    (
                        Convergence::Converges,
                        format!("p-series, gamma*beta = {s} > 1"),
                    )
                } else {
                    (
                        Convergence::Diverges,
                        format!("p-series, gamma*beta = {s} <= 1"),
                    )
                })
            }
            SequenceLaw::Geometric { r, .. } => Some((
                Convergence::Converges,
                format!("geometric series, ratio r^beta = {}", r.powf(beta)),
            )),
            SequenceLaw::Stolz { base, .. } => base.beta_rule(beta),
            SequenceLaw::Finite => Some((Convergence::Converges, "finite zero set".to_string())),
            SequenceLaw::Explicit => None,
        }
    }
}

impl fmt::Display for SequenceLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceLaw::Power { gamma, phases } => write!(f, "power(gamma={gamma}, {phases:?})"),
            SequenceLaw::Geometric { c, r, phases } => {
                write!(f, "geometric(c={c}, r={r}, {phases:?})")
            }
            SequenceLaw::Stolz { domain, base } => write!(
                f,
                "stolz(vertex={}, eta={}, base={base})",
                domain.vertex(),
                domain.aperture()
            ),
            SequenceLaw::Finite => write!(f, "finite"),
            SequenceLaw::Explicit => write!(f, "explicit"),
        }
    }
}

/// A finite list of Blaschke zeros with the law that generated it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroSequence {
    gaps: Vec<f64>,
    phases: Vec<f64>,
    points: Vec<DiskPoint>,
    law: SequenceLaw,
}

impl ZeroSequence {
    fn from_polar(gaps: Vec<f64>, phases: Vec<f64>, law: SequenceLaw) -> Result<Self> {
        if gaps.is_empty() {
            return Err(LabError::domain("a zero sequence needs at least one point"));
        }
        let points = gaps
            .iter()
            .zip(&phases)
            .map(|(&g, &t)| {
                if !(g > 0.0 && g < 1.0) {
                    return Err(LabError::domain(format!(
                        "zero modulus {} must lie in (0, 1)",
                        1.0 - g
                    )));
                }
                DiskPoint::polar(1.0 - g, t)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ZeroSequence {
            gaps,
            phases,
            points,
            law,
        })
    }

    fn from_points(points: Vec<DiskPoint>, law: SequenceLaw) -> Result<Self> {
        let gaps = points.iter().map(|p| 1.0 - p.modulus()).collect();
        let phases = points.iter().map(|p| p.im().atan2(p.re())).collect();
        let seq = Self::from_polar(gaps, phases, law)?;
        Ok(ZeroSequence { points, ..seq })
    }

    /// Zeros of a finite Blaschke product.
    pub fn finite(points: Vec<DiskPoint>) -> Result<Self> {
        Self::from_points(points, SequenceLaw::Finite)
    }

    /// Prefix of a sequence with unknown continuation.
    pub fn explicit(points: Vec<DiskPoint>) -> Result<Self> {
        Self::from_points(points, SequenceLaw::Explicit)
    }

    pub fn points(&self) -> &[DiskPoint] {
        &self.points
    }

    /// Boundary gaps `1 - |a_n|`.
    pub fn gaps(&self) -> &[f64] {
        &self.gaps
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn law(&self) -> &SequenceLaw {
        &self.law
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The first `count` zeros, keeping the law.
    pub fn prefix(&self, count: usize) -> Result<Self> {
        if count == 0 || count > self.len() {
            return Err(LabError::IndexOutOfRange {
                index: count,
                max: self.len(),
            });
        }
        let law = match self.law {
            SequenceLaw::Finite => SequenceLaw::Explicit,
            ref other => other.clone(),
        };
        Ok(ZeroSequence {
            gaps: self.gaps[..count].to_vec(),
            phases: self.phases[..count].to_vec(),
            points: self.points[..count].to_vec(),
            law,
        })
    }

    /// The sequence rotated by `theta` about the origin.
    pub fn rotated(&self, theta: f64) -> Self {
        ZeroSequence {
            gaps: self.gaps.clone(),
            phases: self.phases.iter().map(|t| t + theta).collect(),
            points: self.points.iter().map(|p| p.rotate(theta)).collect(),
            law: match &self.law {
                SequenceLaw::Stolz { domain, base } => SequenceLaw::Stolz {
                    domain: StolzDomain::new(
                        domain.vertex() * Complex64::from_polar(1.0, theta),
                        domain.aperture(),
                    )
                    .expect("rotation keeps the vertex unimodular"),
                    base: base.clone(),
                },
                other => other.clone(),
            },
        }
    }

    /// Upper bound for `sum_{n > count} (1 - |a_n|)^beta`, zeros beyond the stored ones included.
    pub fn tail_power_sum(&self, count: usize, beta: f64) -> Option<f64> {
        match self.law {
            SequenceLaw::Finite => Some(
                self.gaps
                    .iter()
                    .skip(count)
                    .map(|g| g.powf(beta))
                    .collect::<CompensatedSum>()
                    .value(),
            ),
            _ => self.law.tail_power_sum(count, beta),
        }
    }

    /// Parses the sequence-file format: one `re im` pair per line.
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse_points(text: &str) -> Result<Vec<DiskPoint>> {
        text.lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
            .map(|(i, line)| {
                let mut fields = line.split_whitespace();
                let mut next = |name: &str| -> Result<f64> {
                    fields
                        .next()
                        .ok_or_else(|| LabError::Parse(format!("line {}: missing {name}", i + 1)))?
                        .parse::<f64>()
                        .map_err(|e| LabError::Parse(format!("line {}: {e}", i + 1)))
                };
                let re = next("real part")?;
                let im = next("imaginary part")?;
                DiskPoint::new(re, im)
            })
            .collect()
    }

    /// Writes the points in the sequence-file format.
    pub fn to_text(&self) -> String {
        self.points
            .iter()
            .map(|p| format!("{:e} {:e}\n", p.re(), p.im()))
            .collect()
    }
}

/// Zeros with `1 - |a_n| = n^(-gamma)` for `n = 2..=count+1`.
pub fn gen_power(gamma: f64, count: usize, phases: PhaseRule) -> Result<ZeroSequence> {
    if !(gamma.is_finite() && gamma > 1.0) {
        return Err(LabError::NotBlaschke(format!(
            "power law needs gamma > 1, got {gamma}"
        )));
    }
    if count == 0 {
        return Err(LabError::domain("N must be at least 1"));
    }
    let law = SequenceLaw::Power { gamma, phases };
    let gaps = (1..=count).map(|n| law.gap(n).unwrap()).collect();
    let angles = (1..=count).map(|n| phases.phase(n)).collect();
    ZeroSequence::from_polar(gaps, angles, law)
}

/// Zeros with `1 - |a_n| = c r^n` for `n = 1..=count`.
pub fn gen_geometric(c: f64, r: f64, count: usize, phases: PhaseRule) -> Result<ZeroSequence> {
    if !(c > 0.0 && c <= 1.0) {
        return Err(LabError::domain(format!(
            "geometric scale c = {c} must lie in (0, 1]"
        )));
    }
    if !(r > 0.0 && r < 1.0) {
        return Err(LabError::domain(format!(
            "geometric ratio r = {r} must lie in (0, 1)"
        )));
    }
    if count == 0 {
        return Err(LabError::domain("N must be at least 1"));
    }
    let law = SequenceLaw::Geometric { c, r, phases };
    let gaps = (1..=count).map(|n| law.gap(n).unwrap()).collect();
    let angles = (1..=count).map(|n| phases.phase(n)).collect();
    ZeroSequence::from_polar(gaps, angles, law)
}

/// Moves the zeros of `base` into `domain`, keeping their moduli.
///
/// Zero `n` sits at the vertex direction offset by the largest admissible angle,
/// alternating in sign, shrunk until the membership predicate accepts it.
pub fn gen_stolz(domain: &StolzDomain, base: &ZeroSequence) -> Result<ZeroSequence> {
    if base.gaps.windows(2).any(|w| w[1] >= w[0]) {
        return Err(LabError::domain(
            "Stolz placement needs strictly increasing moduli",
        ));
    }
    let vertex_angle = domain.vertex().im.atan2(domain.vertex().re);
    let mut phases = Vec::with_capacity(base.len());
    for (n, &gap) in base.gaps.iter().enumerate() {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let mut offset = domain.max_angle(1.0 - gap);
        loop {
            let phase = vertex_angle + sign * offset;
            if domain.contains(DiskPoint::polar(1.0 - gap, phase)?) {
                phases.push(phase);
                break;
            }
            offset = if offset > 1e-300 {
                offset * (1.0 - 1e-6)
            } else {
                0.0
            };
        }
    }
    let law = SequenceLaw::Stolz {
        domain: *domain,
        base: Box::new(base.law.clone()),
    };
    ZeroSequence::from_polar(base.gaps.clone(), phases, law)
}

/// Summability classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Convergence {
    Converges,
    Diverges,
    Unknown,
}

impl fmt::Display for Convergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convergence::Converges => "Converges",
            Convergence::Diverges => "Diverges",
            Convergence::Unknown => "Unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceVerdict {
    pub classification: Convergence,
    pub partial_sum: f64,
    pub analytic_rule: Option<String>,
}

/// `sum (1 - |a_n|)^beta` over the stored zeros, classified by the law's closed form.
pub fn beta_sum(seq: &ZeroSequence, beta: f64) -> Result<ConvergenceVerdict> {
    if !(beta.is_finite() && beta > 0.0) {
        return Err(LabError::domain("beta must be positive"));
    }
    let partial_sum = seq
        .gaps
        .iter()
        .map(|g| g.powf(beta))
        .collect::<CompensatedSum>()
        .value();
    let (classification, analytic_rule) = match seq.law.beta_rule(beta) {
        Some((c, rule)) => (c, Some(rule)),
        None => (Convergence::Unknown, None),
    };
    Ok(ConvergenceVerdict {
        classification,
        partial_sum,
        analytic_rule,
    })
}

/// The Blaschke sum `sum (1 - |a_n|)`.
pub fn blaschke_sum(seq: &ZeroSequence) -> ConvergenceVerdict {
    beta_sum(seq, 1.0).expect("beta = 1 is valid")
}

/// Pseudohyperbolic distance between zeros `i` and `j`, computed from gaps and phases.
pub(crate) fn zero_distance(seq: &ZeroSequence, i: usize, j: usize) -> f64 {
    let (g1, g2) = (seq.gaps[i], seq.gaps[j]);
    let r1r2 = (1.0 - g1) * (1.0 - g2);
    let s = ((seq.phases[i] - seq.phases[j]) / 2.0).sin();
    let cross = 4.0 * r1r2 * s * s;
    let num = (g2 - g1) * (g2 - g1) + cross;
    let near = g1 + g2 - g1 * g2;
    let den = near * near + cross;
    (num / den).sqrt()
}

/// Minimal pairwise pseudohyperbolic distance, by exhaustive scan.
pub fn separation_constant(seq: &ZeroSequence) -> Result<f64> {
    let n = seq.len();
    if n < 2 {
        return Err(LabError::domain(
            "separation constant needs at least two zeros",
        ));
    }
    Ok((0..n)
        .into_par_iter()
        .map(|i| {
            ((i + 1)..n)
                .map(|j| zero_distance(seq, i, j))
                .fold(f64::INFINITY, f64::min)
        })
        .reduce(|| f64::INFINITY, f64::min))
}

/// `inf_n prod_{m != n} rho(a_m, a_n)` over the stored zeros.
///
/// This is the truncated constant; it bounds the constant of the full
/// infinite sequence from above. Products are accumulated as sums of logarithms.
pub fn uniform_separation_constant(seq: &ZeroSequence) -> f64 {
    let n = seq.len();
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut log_prod = CompensatedSum::new();
            for j in (0..n).filter(|&j| j != i) {
                let d = zero_distance(seq, i, j);
                if d == 0.0 {
                    return 0.0;
                }
                log_prod.add(d.ln());
            }
            log_prod.value().exp()
        })
        .reduce(|| 1.0, f64::min)
}
