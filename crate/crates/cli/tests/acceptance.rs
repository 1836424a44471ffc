//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so every line is printed; the process
//! exits non-zero when any criterion fails.

use std::f64::consts::{PI, TAU};
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::Instant;

use blaschke_lab_core::quadrature::{area_norm_limit, lemma_integral_limit};
use blaschke_lab_core::{
    circle_mean, gen_geometric, gen_power, gen_stolz, gram_matrix, kernel_bound, kernel_eval,
    lemma_sweep, product_deriv, product_eval, pseudo_disk, random_coefficients, region_classify,
    rho, synth, synth_deriv, theorem_scope, verify, BasisKind, Complex64, Consistency, DiskPoint,
    HardyInnerProduct, ModelFunction, PhaseRule, StolzDomain, TheoremId, TruncatedBlaschke,
    VerifyConfig, ZeroSequence,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Criterion = (u32, &'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn random_point(rng: &mut ChaCha8Rng, max_modulus: f64) -> DiskPoint {
    let r = max_modulus * rng.gen::<f64>().sqrt();
    DiskPoint::polar(r, rng.gen_range(0.0..TAU)).unwrap()
}

/// Points of `|z| <= r_max` on a polar grid.
fn polar_grid(r_max: f64, radii: usize, angles: usize) -> Vec<DiskPoint> {
    let mut points = vec![DiskPoint::new(0.0, 0.0).unwrap()];
    for i in 1..=radii {
        for j in 0..angles {
            let r = r_max * i as f64 / radii as f64;
            points.push(DiskPoint::polar(r, TAU * (j as f64 + 0.5) / angles as f64).unwrap());
        }
    }
    points
}

fn geometry() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let z = random_point(&mut rng, 0.999);
        let w = random_point(&mut rng, 0.999);
        let theta = rng.gen_range(0.0..TAU);
        worst = worst
            .max((rho(z, w) - rho(w, z)).abs())
            .max(rho(z, z))
            .max((rho(z.rotate(theta), w.rotate(theta)) - rho(z, w)).abs());
    }
    let metric_ok = worst <= 1e-12;

    let mut mismatches = 0;
    for _ in 0..1_000 {
        let a = random_point(&mut rng, 0.99);
        let radius = rng.gen_range(0.05..0.95);
        let disk = pseudo_disk(a, radius).unwrap();
        let z = random_point(&mut rng, 0.9999);
        let d = rho(z, a);
        if (d - radius).abs() > 1e-10 && (d < radius) != disk.contains(z.z()) {
            mismatches += 1;
        }
    }

    let seq = gen_geometric(1.0, 0.5, 30, PhaseRule::Spread).unwrap();
    let mut constant_ok = true;
    for radius in [0.1, 0.5, 0.9] {
        let factor = (1.0 + radius) / (1.0 - radius);
        for a in seq.points() {
            let disk = pseudo_disk(*a, radius).unwrap();
            for j in 0..64 {
                let z = disk.boundary_point(TAU * j as f64 / 64.0);
                let gap = 1.0 - a.modulus();
                constant_ok &= 1.0 - z.norm() <= factor * gap * (1.0 + 1e-12);
            }
        }
    }
    outcome(
        metric_ok && mismatches == 0 && constant_ok,
        format!(
            "max rho defect {worst:.1e}, pseudo-disk mismatches {mismatches}, Delta_n constant holds: {constant_ok}"
        ),
    )
}

fn relative_error(numeric: Complex64, exact: Complex64) -> f64 {
    (numeric - exact).norm() / exact.norm().max(1e-3)
}

fn central_difference(f: impl Fn(Complex64) -> Complex64, z: Complex64) -> Complex64 {
    let h = 1e-6;
    (f(z + h) - f(z - h)) / (2.0 * h)
}

fn derivatives() -> Outcome {
    let grid = polar_grid(0.9, 9, 24);
    let mut worst: f64 = 0.0;
    for seq in [
        gen_geometric(1.0, 0.5, 20, PhaseRule::Spread).unwrap(),
        gen_power(1.2, 50, PhaseRule::Spread).unwrap(),
        gen_power(1.2, 100, PhaseRule::Spread).unwrap(),
    ] {
        let b = TruncatedBlaschke::full(seq.clone());
        let coefficients = random_coefficients(3, 1, 16).remove(0);
        let f = ModelFunction::new(coefficients, BasisKind::Orthonormal, seq).unwrap();
        for &z in &grid {
            let fd = central_difference(|u| b.value_at(u), z.z());
            worst = worst.max(relative_error(fd, product_deriv(&b, z)));
            let fd = central_difference(|u| f.value_at(u), z.z());
            worst = worst.max(relative_error(fd, synth_deriv(&f, z)));
        }
    }
    outcome(worst < 1e-6, format!("max relative error {worst:.2e}"))
}

fn closed_forms() -> Outcome {
    let mut worst: f64 = 0.0;
    for alpha in [-0.5, 0.0, 1.0, 2.0] {
        let (value, _) = area_norm_limit(|_| Complex64::new(1.0, 0.0), 1.0, alpha, 14).unwrap();
        worst = worst.max((value - 2.0 / ((alpha + 1.0) * (alpha + 2.0))).abs());
    }
    let (lemma, _) = lemma_integral_limit(DiskPoint::new(0.0, 0.0).unwrap(), 0.0, 1.0).unwrap();
    worst = worst.max((lemma - PI).abs());
    let mean = circle_mean(|z| 1.0 / (1.0 - z), 2.0, 0.5, 4096).unwrap();
    worst = worst.max((mean - (4.0f64 / 3.0).sqrt()).abs());
    outcome(worst <= 1e-8, format!("max deviation {worst:.2e}"))
}

fn lemma_regimes() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for p in [0.8, 1.0, 1.3] {
        let sweep = lemma_sweep(0.0, p, 3..=9).unwrap();
        let ok = sweep.matches_regime();
        pass &= ok;
        parts.push(format!(
            "p={p} {} {} (max/min {:.4}, R^2 {:.5}, exponent {:.4})",
            sweep.regime,
            if ok { "ok" } else { "out of band" },
            sweep.bounded_ratio,
            sweep.log_r2,
            sweep.power_exponent
        ));
    }
    outcome(pass, parts.join("; "))
}

fn model_space() -> Outcome {
    let seq = gen_geometric(1.0, 0.5, 30, PhaseRule::Spread).unwrap();
    let prefix = seq.prefix(5).unwrap();
    let scheme = HardyInnerProduct::for_sequence(&prefix);
    let gram = gram_matrix(&seq, BasisKind::Orthonormal, 5, &scheme).unwrap();
    let mut gram_dev: f64 = 0.0;
    for (i, row) in gram.iter().enumerate() {
        for (j, g) in row.iter().enumerate() {
            let delta = if i == j { 1.0 } else { 0.0 };
            gram_dev = gram_dev.max((g - delta).norm());
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let coefficients = random_coefficients(5, 1, 5).remove(0);
    let norm = coefficients
        .iter()
        .map(|c| c.norm_sqr())
        .sum::<f64>()
        .sqrt();
    let f = ModelFunction::new(coefficients, BasisKind::Orthonormal, seq.clone()).unwrap();
    let b = f.product().clone();
    let mut reproducing_dev: f64 = 0.0;
    let mut bound_ok = true;
    for _ in 0..20 {
        let z = random_point(&mut rng, 0.9);
        let kernel = |u: Complex64| kernel_eval(&b, z, DiskPoint::from_complex(u).unwrap()).value;
        let inner = scheme.inner(|u| f.value_at(u), kernel);
        reproducing_dev = reproducing_dev.max((inner - synth(&f, z)).norm());
        bound_ok &= synth(&f, z).norm() <= norm * kernel_bound(&b, z) * (1.0 + 1e-6);
    }
    outcome(
        gram_dev <= 1e-6 && reproducing_dev <= 1e-5 && bound_ok,
        format!(
            "max |G - I| {gram_dev:.2e}, max reproducing defect {reproducing_dev:.2e}, kernel bound holds: {bound_ok}"
        ),
    )
}

fn consistency() -> Outcome {
    let cfg = VerifyConfig::default();
    let stolz = gen_stolz(
        &StolzDomain::new(Complex64::new(1.0, 0.0), 2.0).unwrap(),
        &gen_geometric(1.0, 0.5, 30, PhaseRule::Radial).unwrap(),
    )
    .unwrap();
    let pipelines: [(&str, TheoremId, ZeroSequence, f64, f64); 4] = [
        (
            "T1",
            TheoremId::T1,
            gen_geometric(1.0, 0.5, 30, PhaseRule::Radial).unwrap(),
            0.0,
            1.5,
        ),
        (
            "T2",
            TheoremId::T2,
            gen_power(1.2, 512, PhaseRule::Radial).unwrap(),
            0.0,
            1.75,
        ),
        (
            "T5",
            TheoremId::T5,
            gen_geometric(1.0, 0.5, 30, PhaseRule::Spread).unwrap(),
            0.5,
            1.2,
        ),
        ("T10", TheoremId::T10, stolz, 0.5, 1.2),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, id, seq, alpha, p) in pipelines {
        let report = verify(id, &seq, alpha, p, &cfg).unwrap();
        let mut ok = report.consistency == Consistency::Consistent;
        let mut extra = String::new();
        if id == TheoremId::T10 {
            let check = report
                .circle_mean
                .expect("T10 reports the circle-mean exponent");
            ok &= check.passed;
            extra = format!(
                ", circle-mean exponent {:.3} <= {:.3}",
                check.fitted_exponent,
                check.bound + 0.1
            );
        }
        pass &= ok;
        parts.push(format!("{name} {}{extra}", report.consistency));
    }
    outcome(pass, parts.join("; "))
}

fn region_table() -> Outcome {
    let table: [(f64, f64, &str); 12] = [
        (0.0, 0.5, "A"),
        (2.0, 2.0, "A"),
        (-0.25, 0.5, "B"),
        (0.5, 1.4, "C"),
        (0.5, 1.6, "D"),
        (-0.5, 0.5, "E"),
        (-0.5, 0.6, "E"),
        (-0.5, 0.8, "F"),
        (0.0, 1.5, "Open"),
        (0.0, 4.0 / 3.0, "Open"),
        (0.5, 1.25, "None"),
        (0.0, 2.0, "None"),
    ];
    let mut wrong = Vec::new();
    for (alpha, p, expected) in table {
        let label = region_classify(alpha, p).unwrap().label();
        if label != expected {
            wrong.push(format!("({alpha}, {p}) -> {label}, expected {expected}"));
        }
    }
    let strict = theorem_scope(TheoremId::T8, -0.5, 0.5).unwrap()
        && !theorem_scope(TheoremId::T6, -0.5, 0.5).unwrap();
    if !strict {
        wrong.push("p = 1 + alpha must be in T8's scope and not T6's".to_string());
    }
    let pass = wrong.is_empty();
    outcome(
        pass,
        if pass {
            "12/12 points and strictness at p = 1 + alpha".to_string()
        } else {
            wrong.join("; ")
        },
    )
}

fn truncation() -> Outcome {
    let grid = polar_grid(0.9, 9, 32);
    let mut pass = true;
    let mut parts = Vec::new();
    for n in [10, 20, 40] {
        let seq = gen_geometric(1.0, 0.8, 2 * n, PhaseRule::Spread).unwrap();
        let truncated = TruncatedBlaschke::new(seq.clone(), n).unwrap();
        let doubled = TruncatedBlaschke::full(seq);
        let mut worst_ratio: f64 = 0.0;
        for &z in &grid {
            let diff = (product_eval(&truncated, z).value - product_eval(&doubled, z).value).norm();
            let bound = truncated
                .tail_bound(z.z())
                .value()
                .expect("geometric tail is known");
            if diff > bound {
                pass = false;
            }
            if bound > 0.0 {
                worst_ratio = worst_ratio.max(diff / bound);
            }
        }
        parts.push(format!("N={n} max diff/bound {worst_ratio:.2e}"));
    }
    outcome(pass, parts.join("; "))
}

fn cli_run(dir: &std::path::Path, name: &str, args: &[&str]) -> Vec<u8> {
    let out = dir.join(name);
    let status = Command::new(env!("CARGO_BIN_EXE_blaschke-lab"))
        .args(args)
        .arg("--out")
        .arg(&out)
        .output()
        .expect("binary runs");
    assert!(
        status.status.success(),
        "{}",
        String::from_utf8_lossy(&status.stderr)
    );
    std::fs::read(out).unwrap()
}

fn reproducibility() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let runs: [&[&str]; 3] = [
        &[
            "verify",
            "--theorem",
            "T5",
            "--seq",
            "geometric:c=1,r=0.5,N=30,phases=spread",
            "--alpha",
            "0.5",
            "--p",
            "1.2",
            "--seed",
            "42",
        ],
        &[
            "norm",
            "--target",
            "model",
            "--seq",
            "power:gamma=1.2,N=40,phases=spread",
            "--alpha",
            "0",
            "--p",
            "1.5",
            "--seed",
            "7",
        ],
        &["lemma", "--alpha", "0", "--p", "1.3", "--a-levels", "3..6"],
    ];
    let mut identical = 0;
    for (i, args) in runs.iter().enumerate() {
        let a = cli_run(dir.path(), &format!("a{i}.csv"), args);
        let b = cli_run(dir.path(), &format!("b{i}.csv"), args);
        if a == b && !a.is_empty() {
            identical += 1;
        }
    }
    outcome(
        identical == runs.len(),
        format!("{identical}/{} command pairs byte-identical", runs.len()),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (1, "metric and geometry", geometry),
        (2, "derivative oracles", derivatives),
        (3, "closed-form quadrature", closed_forms),
        (4, "lemma regimes", lemma_regimes),
        (5, "model-space structure", model_space),
        (6, "theorem consistency", consistency),
        (7, "region classifier", region_table),
        (8, "truncation honesty", truncation),
        (9, "reproducibility", reproducibility),
    ];
    let mut failed = 0;
    for (n, name, check) in criteria {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        if !result.pass {
            failed += 1;
        }
        println!(
            "criterion {n}: {} {name} ({:.1}s): {}",
            if result.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            result.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
