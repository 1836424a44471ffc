use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::catalog::{required_beta, theorem_scope, Direction, HypothesisClass, TheoremId};
use crate::blaschke::TruncatedBlaschke;
use crate::error::{LabError, Result};
use crate::modelspace::{random_coefficients, BasisKind, ModelFunction, RIESZ_SEPARATION_FLOOR};
use crate::numeric::linear_fit;
use crate::quadrature::{
    ahern_integral, area_norm, boundary_angular, circle_mean, classify_growth, dyadic_radius,
    Growth, GrowthVerdict, WINDOW,
};
use crate::sequences::{
    beta_sum, blaschke_sum, separation_constant, uniform_separation_constant, Convergence,
    ConvergenceVerdict, SequenceLaw, ZeroSequence,
};

/// Allowed excess of the fitted circle-mean exponent over the Stolz bound.
pub const CIRCLE_MEAN_SLACK: f64 = 0.1;

pub const TRUNCATION_CAVEAT: &str = "verdicts come from partial integrals over |z| <= 1 - 2^-k \
with finitely many zeros and coefficients; they are not statements about the full integrals";

pub const VIOLATION_CAVEAT: &str = "a violation candidate is a numerical flag, never a \
counterexample: truncation and quadrature error can produce it";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Partial integrals are sampled at `r = 1 - 2^{-k}` for `k` in `first_level..=last_level`.
    pub first_level: u32,
    pub last_level: u32,
    /// Coefficients per random model function.
    pub coefficients: usize,
    /// Number of random model functions.
    pub samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0x5EED_B1A5,
            first_level: 4,
            last_level: 10,
            coefficients: 8,
            samples: 3,
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.first_level == 0 || self.last_level > 40 {
            return Err(LabError::domain("r_max levels must lie in 1..=40"));
        }
        if self.last_level < self.first_level + WINDOW as u32 - 1 {
            return Err(LabError::domain(format!(
                "need at least {WINDOW} r_max levels, got {}..{}",
                self.first_level, self.last_level
            )));
        }
        if self.coefficients == 0 || self.samples == 0 {
            return Err(LabError::domain(
                "coefficient and sample counts must be positive",
            ));
        }
        Ok(())
    }

    fn levels(&self) -> std::ops::RangeInclusive<u32> {
        self.first_level..=self.last_level
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Consistency {
    Consistent,
    #[serde(rename = "Violation-candidate")]
    ViolationCandidate,
    Inconclusive,
}

impl fmt::Display for Consistency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Consistency::Consistent => "Consistent",
            Consistency::ViolationCandidate => "Violation-candidate",
            Consistency::Inconclusive => "Inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub passed: bool,
    pub evidence: String,
}

/// Fitted growth exponent of `M_p(r; f')` against the bound `3/2 - 1/(2p)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleMeanCheck {
    pub fitted_exponent: f64,
    pub bound: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: TheoremId,
    pub alpha: f64,
    pub p: f64,
    pub sequence: String,
    pub zeros: usize,
    pub required_beta: Option<f64>,
    pub hypotheses: Vec<HypothesisCheck>,
    pub summability: Option<ConvergenceVerdict>,
    /// One verdict per integral examined: the Ahern integral for T1/T2, one
    /// area norm of `f'` per random model function otherwise.
    pub growth: Vec<GrowthVerdict>,
    pub circle_mean: Option<CircleMeanCheck>,
    pub consistency: Consistency,
    pub caveats: Vec<String>,
    pub seed: u64,
    pub config: VerifyConfig,
}

impl VerificationReport {
    pub const CSV_HEADER: [&'static str; 6] = ["theorem", "alpha", "p", "item", "status", "detail"];

    /// One row per hypothesis, conclusion and verdict.
    pub fn csv_records(&self) -> Vec<[String; 6]> {
        let row = |item: String, status: String, detail: String| {
            [
                self.theorem.to_string(),
                format!("{}", self.alpha),
                format!("{}", self.p),
                item,
                status,
                detail,
            ]
        };
        let mut rows = Vec::new();
        for h in &self.hypotheses {
            rows.push(row(
                format!("hypothesis:{}", h.name),
                if h.passed { "pass" } else { "fail" }.to_string(),
                h.evidence.clone(),
            ));
        }
        if let Some(s) = &self.summability {
            rows.push(row(
                format!(
                    "summability:beta={}",
                    self.required_beta.unwrap_or(f64::NAN)
                ),
                s.classification.to_string(),
                format!("partial_sum={}", s.partial_sum),
            ));
        }
        for (i, g) in self.growth.iter().enumerate() {
            rows.push(row(
                format!("growth:{i}"),
                g.classification.to_string(),
                format!(
                    "fitted_exponent={} partial_slope={} last_partial={}",
                    g.fitted_exponent,
                    g.partial_slope,
                    g.window.last().map_or(f64::NAN, |w| w.1)
                ),
            ));
        }
        if let Some(c) = &self.circle_mean {
            rows.push(row(
                "circle_mean_exponent".to_string(),
                if c.passed { "pass" } else { "fail" }.to_string(),
                format!("fitted={} bound={}", c.fitted_exponent, c.bound),
            ));
        }
        rows.push(row(
            "consistency".to_string(),
            self.consistency.to_string(),
            String::new(),
        ));
        rows
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "theorem     : {} at (alpha, p) = ({}, {})",
            self.theorem, self.alpha, self.p
        )?;
        writeln!(f, "sequence    : {} ({} zeros)", self.sequence, self.zeros)?;
        if let Some(b) = self.required_beta {
            writeln!(f, "beta        : {b}")?;
        }
        for h in &self.hypotheses {
            let mark = if h.passed { "pass" } else { "FAIL" };
            writeln!(f, "hypothesis  : [{mark}] {}: {}", h.name, h.evidence)?;
        }
        if let Some(s) = &self.summability {
            writeln!(
                f,
                "summability : {} (partial sum {:.6e})",
                s.classification, s.partial_sum
            )?;
        }
        for g in &self.growth {
            writeln!(
                f,
                "growth      : {} (increment slope {:.4}, partial slope {:.4})",
                g.classification, g.fitted_exponent, g.partial_slope
            )?;
        }
        if let Some(c) = &self.circle_mean {
            writeln!(
                f,
                "circle mean : exponent {:.4} vs bound {:.4} + {CIRCLE_MEAN_SLACK}",
                c.fitted_exponent, c.bound
            )?;
        }
        writeln!(f, "verdict     : {}", self.consistency)?;
        for c in &self.caveats {
            writeln!(f, "caveat      : {c}")?;
        }
        writeln!(f, "seed        : {}", self.seed)
    }
}

fn hypothesis_checks(
    id: TheoremId,
    seq: &ZeroSequence,
    beta: Option<f64>,
) -> Result<(Vec<HypothesisCheck>, Option<ConvergenceVerdict>)> {
    let spec = id.spec();
    let mut checks = Vec::new();
    let blaschke = blaschke_sum(seq);
    checks.push(HypothesisCheck {
        name: "blaschke-condition".to_string(),
        passed: blaschke.classification != Convergence::Diverges,
        evidence: format!(
            "sum(1-|a_n|) {} (partial {:.6e})",
            blaschke.classification, blaschke.partial_sum
        ),
    });
    match spec.hypothesis_class {
        HypothesisClass::AnyB | HypothesisClass::Summability => {}
        HypothesisClass::UniformlyDiscrete => {
            let (passed, evidence) = match separation_constant(seq) {
                Ok(d) => (d > 0.0, format!("separation constant {d:.6e}")),
                Err(e) => (false, e.to_string()),
            };
            checks.push(HypothesisCheck {
                name: "uniformly-discrete".to_string(),
                passed,
                evidence,
            });
        }
        HypothesisClass::UniformlySeparated => {
            let d = uniform_separation_constant(seq);
            checks.push(HypothesisCheck {
                name: "uniformly-separated".to_string(),
                passed: d >= RIESZ_SEPARATION_FLOOR,
                evidence: format!("truncated constant {d:.6e}, floor {RIESZ_SEPARATION_FLOOR}"),
            });
        }
        HypothesisClass::Stolz => {
            let (passed, evidence) = match seq.law() {
                SequenceLaw::Stolz { domain, .. } => {
                    let outside = seq
                        .points()
                        .iter()
                        .filter(|z| !domain.contains(**z))
                        .count();
                    (
                        outside == 0,
                        format!(
                            "{outside} of {} zeros outside the domain with vertex {} and aperture {}",
                            seq.len(),
                            domain.vertex(),
                            domain.aperture()
                        ),
                    )
                }
                _ => (false, "sequence carries no Stolz domain".to_string()),
            };
            checks.push(HypothesisCheck {
                name: "stolz".to_string(),
                passed,
                evidence,
            });
        }
    }
    let summability = match beta {
        Some(b) => Some(beta_sum(seq, b)?),
        None => None,
    };
    if spec.direction != Direction::MembershipImpliesZeros {
        if let Some(s) = &summability {
            checks.push(HypothesisCheck {
                name: "summability".to_string(),
                passed: s.classification == Convergence::Converges,
                evidence: format!(
                    "sum(1-|a_n|)^{} {}{}",
                    beta.unwrap_or(f64::NAN),
                    s.classification,
                    s.analytic_rule
                        .as_ref()
                        .map_or(String::new(), |r| format!(" ({r})"))
                ),
            });
        }
    }
    Ok((checks, summability))
}

fn growth_at_levels(samples: Vec<(f64, f64)>) -> GrowthVerdict {
    classify_growth(&samples)
}

fn combine_growth(verdicts: &[GrowthVerdict]) -> Growth {
    if verdicts
        .iter()
        .any(|g| g.classification == Growth::Infinite)
    {
        Growth::Infinite
    } else if verdicts.iter().all(|g| g.classification == Growth::Finite) {
        Growth::Finite
    } else {
        Growth::Inconclusive
    }
}

/// Fitted exponent `s` in `M_p(r; f') ≈ (1-r)^{-s}` over the last levels.
fn circle_mean_exponent(f: &ModelFunction, p: f64, cfg: &VerifyConfig) -> Result<f64> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for k in cfg
        .levels()
        .skip((cfg.last_level - cfg.first_level + 1) as usize - WINDOW)
    {
        let r = dyadic_radius(k);
        let m = circle_mean(|z| f.deriv_at(z), p, r, boundary_angular(r))?;
        xs.push((1.0 / (1.0 - r)).ln());
        ys.push(m.ln());
    }
    Ok(linear_fit(&xs, &ys).0)
}

/// Checks the hypotheses of theorem `id` on `seq` and compares its conclusion
/// with the numerics at `(α, p)`.
pub fn verify(
    id: TheoremId,
    seq: &ZeroSequence,
    alpha: f64,
    p: f64,
    cfg: &VerifyConfig,
) -> Result<VerificationReport> {
    cfg.validate()?;
    if !theorem_scope(id, alpha, p)? {
        return Err(LabError::OutOfScope {
            theorem: id.to_string(),
            alpha,
            p,
        });
    }
    let beta = required_beta(id, alpha, p)?;
    let (hypotheses, summability) = hypothesis_checks(id, seq, beta)?;
    let mut report = VerificationReport {
        theorem: id,
        alpha,
        p,
        sequence: seq.law().to_string(),
        zeros: seq.len(),
        required_beta: beta,
        hypotheses,
        summability,
        growth: Vec::new(),
        circle_mean: None,
        consistency: Consistency::Inconclusive,
        caveats: vec![TRUNCATION_CAVEAT.to_string()],
        seed: cfg.seed,
        config: *cfg,
    };
    if report.hypotheses.iter().any(|h| !h.passed) {
        report
            .caveats
            .push("hypothesis not satisfied; conclusion not evaluated".to_string());
        return Ok(report);
    }
    let r_max = dyadic_radius(cfg.last_level);

    if id.spec().direction == Direction::MembershipImpliesZeros {
        // B' ∈ A^p_α  ⇒  Σ(1-|a_n|)^β < ∞, tested through its contrapositive
        let b = TruncatedBlaschke::full(seq.clone());
        let q = ahern_integral(&b, p, alpha, r_max)?;
        report.caveats.extend(q.warnings.iter().cloned());
        let growth = growth_at_levels(q.at_levels(cfg.levels()));
        let summable = report.summability.as_ref().map(|s| s.classification);
        report.consistency = match (summable, growth.classification) {
            (Some(Convergence::Diverges), Growth::Infinite) => Consistency::Consistent,
            (Some(Convergence::Diverges), Growth::Finite) => Consistency::ViolationCandidate,
            (Some(Convergence::Converges), Growth::Finite | Growth::Infinite) => {
                if growth.classification == Growth::Infinite {
                    report
                        .caveats
                        .push("B' not in A^p_alpha: the theorem makes no prediction".to_string());
                }
                Consistency::Consistent
            }
            _ => Consistency::Inconclusive,
        };
        report.growth.push(growth);
    } else {
        let basis = match id.spec().hypothesis_class {
            HypothesisClass::UniformlySeparated => BasisKind::Riesz,
            _ => BasisKind::Orthonormal,
        };
        let count = cfg.coefficients.min(seq.len());
        let functions = random_coefficients(cfg.seed, cfg.samples, count)
            .into_iter()
            .map(|c| ModelFunction::new(c, basis, seq.clone()))
            .collect::<Result<Vec<_>>>()?;
        let growth = functions
            .par_iter()
            .map(|f| {
                let q = area_norm(|z| f.deriv_at(z), p, alpha, r_max)?;
                Ok(growth_at_levels(q.at_levels(cfg.levels())))
            })
            .collect::<Result<Vec<_>>>()?;
        report.consistency = match combine_growth(&growth) {
            Growth::Finite => Consistency::Consistent,
            Growth::Infinite => Consistency::ViolationCandidate,
            Growth::Inconclusive => Consistency::Inconclusive,
        };
        report.growth = growth;
        if id == TheoremId::T10 {
            let bound = 1.5 - 1.0 / (2.0 * p);
            let fitted = circle_mean_exponent(&functions[0], p, cfg)?;
            let passed = fitted <= bound + CIRCLE_MEAN_SLACK;
            if !passed && report.consistency == Consistency::Consistent {
                report.consistency = Consistency::ViolationCandidate;
            }
            report.circle_mean = Some(CircleMeanCheck {
                fitted_exponent: fitted,
                bound,
                passed,
            });
        }
    }
    if report.consistency == Consistency::ViolationCandidate {
        report.caveats.push(VIOLATION_CAVEAT.to_string());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::StolzDomain;
    use crate::sequences::{gen_geometric, gen_power, gen_stolz, PhaseRule};
    use num_complex::Complex64;

    #[test]
    fn t1_geometric_pipeline_is_consistent() {
        let seq = gen_geometric(1.0, 0.5, 30, PhaseRule::Radial).unwrap();
        let r = verify(TheoremId::T1, &seq, 0.0, 1.5, &VerifyConfig::default()).unwrap();
        assert_eq!(
            r.summability.as_ref().unwrap().classification,
            Convergence::Converges
        );
        assert_eq!(r.growth[0].classification, Growth::Finite, "{r}");
        assert_eq!(r.consistency, Consistency::Consistent);
        assert!(r.caveats.iter().any(|c| c == TRUNCATION_CAVEAT));
    }

    #[test]
    fn t5_random_functions_are_consistent() {
        let seq = gen_geometric(1.0, 0.5, 30, PhaseRule::Spread).unwrap();
        let r = verify(TheoremId::T5, &seq, 0.5, 1.2, &VerifyConfig::default()).unwrap();
        assert_eq!(r.growth.len(), 3);
        assert_eq!(r.consistency, Consistency::Consistent, "{r}");
    }

    #[test]
    fn t10_stolz_pipeline() {
        let domain = StolzDomain::new(Complex64::new(1.0, 0.0), 2.0).unwrap();
        let base = gen_geometric(1.0, 0.5, 30, PhaseRule::Radial).unwrap();
        let seq = gen_stolz(&domain, &base).unwrap();
        let r = verify(TheoremId::T10, &seq, 0.5, 1.2, &VerifyConfig::default()).unwrap();
        let c = r.circle_mean.unwrap();
        assert!(c.passed, "{r}");
        assert_eq!(r.consistency, Consistency::Consistent, "{r}");
    }

    #[test]
    fn out_of_scope_is_an_error() {
        let seq = gen_geometric(1.0, 0.5, 10, PhaseRule::Radial).unwrap();
        assert!(matches!(
            verify(TheoremId::T1, &seq, 0.0, 0.5, &VerifyConfig::default()),
            Err(LabError::OutOfScope { .. })
        ));
    }

    #[test]
    fn failed_hypothesis_skips_conclusion() {
        // T10 needs a Stolz domain; T6 needs summability with beta = p/(2-p)
        let seq = gen_geometric(1.0, 0.5, 10, PhaseRule::Radial).unwrap();
        let r = verify(TheoremId::T10, &seq, 0.5, 1.2, &VerifyConfig::default()).unwrap();
        assert!(r.growth.is_empty());
        assert_eq!(r.consistency, Consistency::Inconclusive);

        let seq = gen_power(1.2, 50, PhaseRule::Spread).unwrap();
        let r = verify(TheoremId::T6, &seq, -0.5, 0.4, &VerifyConfig::default()).unwrap();
        assert!(r
            .hypotheses
            .iter()
            .any(|h| h.name == "summability" && !h.passed));
        assert!(r.growth.is_empty());
    }

    #[test]
    fn reports_are_reproducible() {
        let seq = gen_geometric(1.0, 0.5, 12, PhaseRule::Spread).unwrap();
        let cfg = VerifyConfig {
            last_level: 8,
            samples: 2,
            ..VerifyConfig::default()
        };
        let a = verify(TheoremId::T4, &seq, 0.0, 0.5, &cfg).unwrap();
        let b = verify(TheoremId::T4, &seq, 0.0, 0.5, &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.csv_records(), b.csv_records());
    }

    #[test]
    fn config_validation() {
        let seq = gen_geometric(1.0, 0.5, 10, PhaseRule::Radial).unwrap();
        let cfg = VerifyConfig {
            first_level: 4,
            last_level: 6,
            ..VerifyConfig::default()
        };
        assert!(verify(TheoremId::T4, &seq, 0.0, 0.5, &cfg).is_err());
    }
}
