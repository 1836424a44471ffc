use anyhow::{Context, Result};
use blaschke_lab_core::quadrature::{ahern_integral, area_norm, dyadic_radius, lemma_sweep};
use blaschke_lab_core::theorems::{region_grid, ScopeVerdict};
use blaschke_lab_core::{
    beta_sum, blaschke_sum, classify_growth, gram_matrix, random_coefficients, region_classify,
    required_beta, separation_constant, uniform_separation_constant, verify, BasisKind, Complex64,
    GrowthVerdict, HardyInnerProduct, ModelFunction, QuadratureResult, TheoremId,
    TruncatedBlaschke, VerifyConfig, ZeroSequence,
};
use serde_json::json;

use crate::descriptor::Descriptor;
use crate::output::Output;
use crate::params::{parse_levels, parse_range, Basis, Params, Target};
use crate::usage;

pub const DEFAULT_RMAX_LEVELS: (u32, u32) = (4, 10);
pub const DEFAULT_A_LEVELS: (u32, u32) = (3, 9);
pub const DEFAULT_ALPHA_RANGE: (f64, f64) = (-0.9, 3.0);
pub const DEFAULT_P_RANGE: (f64, f64) = (0.05, 5.0);
pub const DEFAULT_STEP: f64 = 0.05;
pub const DEFAULT_BASIS_COUNT: usize = 5;

fn num(x: f64) -> String {
    format!("{x}")
}

fn sequence(params: &Params) -> Result<ZeroSequence> {
    let descriptor = Descriptor::parse(params.require_seq()?).map_err(usage)?;
    descriptor.build(params.n)
}

fn levels(text: Option<&str>, default: (u32, u32)) -> Result<(u32, u32)> {
    text.map(parse_levels)
        .transpose()
        .map_err(usage)
        .map(|l| l.unwrap_or(default))
}

fn theorem(params: &Params) -> Result<TheoremId> {
    let text = params
        .theorem
        .as_deref()
        .ok_or_else(|| usage(anyhow::anyhow!("--theorem is required")))?;
    text.parse::<TheoremId>().map_err(|e| usage(e.into()))
}

fn sequence_meta(out: &mut Output, seq: &ZeroSequence) {
    out.meta("sequence", seq.law().to_string());
    out.meta("zeros", seq.len());
    out.meta("law", serde_json::to_value(seq.law()).unwrap_or_default());
}

/// `generate`: columns `n,re,im,modulus,gap,phase`.
pub fn generate(params: &Params) -> Result<Output> {
    let seq = sequence(params)?;
    let mut out = Output {
        header: vec!["n", "re", "im", "modulus", "gap", "phase"],
        summary: format!("{} zeros of {}", seq.len(), seq.law()),
        text: Some(seq.to_text()),
        ..Output::default()
    };
    for (i, ((z, gap), phase)) in seq
        .points()
        .iter()
        .zip(seq.gaps())
        .zip(seq.phases())
        .enumerate()
    {
        out.rows.push(vec![
            (i + 1).to_string(),
            num(z.re()),
            num(z.im()),
            num(z.modulus()),
            num(*gap),
            num(*phase),
        ]);
    }
    sequence_meta(&mut out, &seq);
    Ok(out)
}

/// `diagnose`: columns `quantity,value,detail`.
pub fn diagnose(params: &Params) -> Result<Output> {
    let seq = sequence(params)?;
    let mut out = Output {
        header: vec!["quantity", "value", "detail"],
        ..Output::default()
    };
    let mut row = |q: &str, v: String, d: String| out.rows.push(vec![q.to_string(), v, d]);

    row("zeros", seq.len().to_string(), seq.law().to_string());
    let b = blaschke_sum(&seq);
    row(
        "blaschke_sum",
        num(b.partial_sum),
        b.classification.to_string(),
    );
    match separation_constant(&seq) {
        Ok(d) => row("separation_constant", num(d), String::new()),
        Err(e) => row("separation_constant", "NaN".to_string(), e.to_string()),
    }
    row(
        "uniform_separation_constant",
        num(uniform_separation_constant(&seq)),
        "truncated".to_string(),
    );
    let tail = TruncatedBlaschke::full(seq.clone()).tail_sum();
    row(
        "tail_sum",
        tail.map_or_else(|| "NaN".to_string(), num),
        if tail.is_some() {
            "from the law"
        } else {
            "unknown continuation"
        }
        .to_string(),
    );
    let beta = match (params.beta, params.theorem.is_some()) {
        (Some(b), _) => Some(b),
        (None, true) => required_beta(
            theorem(params)?,
            params.require_alpha()?,
            params.require_p()?,
        )?,
        (None, false) => None,
    };
    if let Some(beta) = beta {
        let v = beta_sum(&seq, beta)?;
        row("beta", num(beta), String::new());
        row(
            "beta_sum",
            num(v.partial_sum),
            format!(
                "{}{}",
                v.classification,
                v.analytic_rule
                    .map(|r| format!(" ({r})"))
                    .unwrap_or_default()
            ),
        );
    }
    out.summary = out
        .rows
        .iter()
        .map(|r| format!("{:<28} {} {}", r[0], r[1], r[2]))
        .collect::<Vec<_>>()
        .join("\n");
    sequence_meta(&mut out, &seq);
    Ok(out)
}

fn quadrature_output(q: &QuadratureResult, growth: &GrowthVerdict) -> Output {
    let mut out = Output {
        header: vec!["r_k", "partial", "cumulative"],
        ..Output::default()
    };
    for (r, partial, cumulative) in q.csv_rows() {
        out.rows.push(vec![num(r), num(partial), num(cumulative)]);
    }
    out.meta("value", q.value);
    out.meta("abs_error_estimate", q.abs_error_estimate);
    out.meta("warnings", q.warnings.clone());
    out.meta("growth", serde_json::to_value(growth).unwrap_or_default());
    out
}

/// `norm`: partial weighted area integrals; columns `r_k,partial,cumulative`.
pub fn norm(params: &Params) -> Result<Output> {
    let alpha = params.require_alpha()?;
    let p = params.require_p()?;
    let (k1, k2) = levels(params.rmax_levels.as_deref(), DEFAULT_RMAX_LEVELS)?;
    let seq = sequence(params)?;
    let target = params.target.unwrap_or(Target::Bprime);
    let r_max = dyadic_radius(k2);
    let seed = params.seed.unwrap_or(VerifyConfig::default().seed);
    let q = match target {
        Target::Bprime => {
            let b = TruncatedBlaschke::full(seq.clone());
            area_norm(|z| b.deriv_at(z), p, alpha, r_max)?
        }
        Target::Ahern => ahern_integral(&TruncatedBlaschke::full(seq.clone()), p, alpha, r_max)?,
        Target::Model => {
            let count = params.coefficients.unwrap_or(8).min(seq.len());
            let coefficients = random_coefficients(seed, 1, count).remove(0);
            let f = ModelFunction::new(coefficients, BasisKind::Orthonormal, seq.clone())?;
            area_norm(|z| f.deriv_at(z), p, alpha, r_max)?
        }
    };
    let growth = classify_growth(&q.at_levels(k1..=k2));
    let mut out = quadrature_output(&q, &growth);
    out.summary = format!(
        "{target:?} integral up to r = 1 - 2^-{k2}: {:.10e} (error estimate {:.3e})\ngrowth over k = {k1}..{k2}: {} (increment slope {:.4})",
        q.value, q.abs_error_estimate, growth.classification, growth.fitted_exponent
    );
    for w in &q.warnings {
        out.summary.push_str(&format!("\nwarning: {w}"));
    }
    sequence_meta(&mut out, &seq);
    out.meta("target", serde_json::to_value(target).unwrap_or_default());
    out.meta("rmax_levels", vec![k1, k2]);
    if target == Target::Model {
        out.meta("seed", seed);
    }
    Ok(out)
}

/// `lemma`: columns `k,modulus,value,extrapolation_error,regime,comparison,ratio`.
pub fn lemma(params: &Params) -> Result<Output> {
    let alpha = params.require_alpha()?;
    let p = params.require_p()?;
    let (k1, k2) = levels(params.a_levels.as_deref(), DEFAULT_A_LEVELS)?;
    let sweep = lemma_sweep(alpha, p, k1..=k2)?;
    let mut out = Output {
        header: vec![
            "k",
            "modulus",
            "value",
            "extrapolation_error",
            "regime",
            "comparison",
            "ratio",
        ],
        ..Output::default()
    };
    for q in &sweep.points {
        out.rows.push(vec![
            q.level.to_string(),
            num(q.modulus),
            num(q.value),
            num(q.extrapolation_error),
            sweep.regime.to_string(),
            num(q.comparison),
            num(q.value / q.comparison),
        ]);
    }
    out.summary = format!(
        "regime {} at (alpha, p) = ({alpha}, {p}); max/min {:.4}, log fit R^2 {:.5}, power exponent {:.4}; matches: {}",
        sweep.regime,
        sweep.bounded_ratio,
        sweep.log_r2,
        sweep.power_exponent,
        sweep.matches_regime()
    );
    out.meta("a_levels", vec![k1, k2]);
    out.meta(
        "sweep",
        json!({
            "regime": sweep.regime.to_string(),
            "bounded_ratio": sweep.bounded_ratio,
            "log_slope": sweep.log_slope,
            "log_r2": sweep.log_r2,
            "power_exponent": sweep.power_exponent,
            "matches_regime": sweep.matches_regime(),
        }),
    );
    Ok(out)
}

/// `region`: columns `alpha,p,regions,theorems,betas`.
pub fn region(params: &Params) -> Result<Output> {
    let v = region_classify(params.require_alpha()?, params.require_p()?)?;
    let mut out = Output {
        header: ScopeVerdict::CSV_HEADER.to_vec(),
        rows: vec![v.csv_record().to_vec()],
        summary: v.label(),
        ..Output::default()
    };
    out.meta("verdict", serde_json::to_value(&v)?);
    Ok(out)
}

/// `region-grid`: columns `alpha,p,label` and the boundary curves at `alpha`.
pub fn region_grid_cmd(params: &Params) -> Result<Output> {
    let range = |t: Option<&str>, d| {
        t.map(parse_range)
            .transpose()
            .map_err(usage)
            .map(|r| r.unwrap_or(d))
    };
    let alpha = range(params.alpha_range.as_deref(), DEFAULT_ALPHA_RANGE)?;
    let p = range(params.p_range.as_deref(), DEFAULT_P_RANGE)?;
    let step = params.step.unwrap_or(DEFAULT_STEP);
    let cells = region_grid(alpha, p, step)?;
    let mut out = Output {
        header: vec![
            "alpha",
            "p",
            "label",
            "p_2_3",
            "p_1_half",
            "p_1_alpha",
            "p_4_3",
            "p_2_alpha",
        ],
        ..Output::default()
    };
    for c in &cells {
        let mut row = vec![num(c.alpha), num(c.p), c.label.clone()];
        row.extend(c.boundaries.iter().map(|b| num(*b)));
        out.rows.push(row);
    }
    out.summary = format!("{} cells", cells.len());
    out.meta("alpha_range", vec![alpha.0, alpha.1]);
    out.meta("p_range", vec![p.0, p.1]);
    out.meta("step", step);
    Ok(out)
}

/// `verify`: columns `theorem,alpha,p,item,status,detail`.
pub fn verify_cmd(params: &Params) -> Result<Output> {
    let id = theorem(params)?;
    let alpha = params.require_alpha()?;
    let p = params.require_p()?;
    let (k1, k2) = levels(params.rmax_levels.as_deref(), DEFAULT_RMAX_LEVELS)?;
    let defaults = VerifyConfig::default();
    let cfg = VerifyConfig {
        seed: params.seed.unwrap_or(defaults.seed),
        first_level: k1,
        last_level: k2,
        coefficients: params.coefficients.unwrap_or(defaults.coefficients),
        samples: params.samples.unwrap_or(defaults.samples),
    };
    cfg.validate()?;
    let seq = sequence(params)?;
    let report = verify(id, &seq, alpha, p, &cfg)?;
    let mut out = Output {
        header: blaschke_lab_core::VerificationReport::CSV_HEADER.to_vec(),
        rows: report
            .csv_records()
            .into_iter()
            .map(|r| r.to_vec())
            .collect(),
        summary: report.to_string().trim_end().to_string(),
        ..Output::default()
    };
    sequence_meta(&mut out, &seq);
    out.meta("seed", cfg.seed);
    out.meta("rmax_levels", vec![k1, k2]);
    out.meta("report", serde_json::to_value(&report)?);
    Ok(out)
}

/// `basis-check`: Gram matrix entries; columns `i,j,re,im,deviation`.
pub fn basis_check(params: &Params) -> Result<Output> {
    let seq = sequence(params)?;
    let count = params.count.unwrap_or(DEFAULT_BASIS_COUNT.min(seq.len()));
    let basis = match params.basis.unwrap_or(Basis::G) {
        Basis::G => BasisKind::Orthonormal,
        Basis::H => BasisKind::Riesz,
    };
    let prefix = seq
        .prefix(count.min(seq.len()).max(1))
        .context("taking prefix")?;
    let scheme = HardyInnerProduct::for_sequence(&prefix);
    let gram = gram_matrix(&seq, basis, count, &scheme)?;
    let mut out = Output {
        header: vec!["i", "j", "re", "im", "deviation"],
        ..Output::default()
    };
    let mut max_dev: f64 = 0.0;
    for (i, row) in gram.iter().enumerate() {
        for (j, g) in row.iter().enumerate() {
            let delta = if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            let dev = (g - delta).norm();
            max_dev = max_dev.max(dev);
            out.rows.push(vec![
                (i + 1).to_string(),
                (j + 1).to_string(),
                num(g.re),
                num(g.im),
                num(dev),
            ]);
        }
    }
    out.summary =
        format!("Gram matrix of {count} {basis:?} basis functions: max |G - I| = {max_dev:.3e}");
    sequence_meta(&mut out, &seq);
    out.meta("basis", serde_json::to_value(basis)?);
    out.meta("count", count);
    out.meta("max_deviation", max_dev);
    out.meta("scheme", serde_json::to_value(scheme)?);
    Ok(out)
}
