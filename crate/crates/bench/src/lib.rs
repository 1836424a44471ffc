//! Fixtures shared by the benchmarks.

use blaschke_lab_core::{
    gen_geometric, gen_power, random_coefficients, BasisKind, DiskPoint, ModelFunction, PhaseRule,
    TruncatedBlaschke, ZeroSequence,
};
use num_complex::Complex64;

pub fn geometric(count: usize) -> ZeroSequence {
    gen_geometric(1.0, 0.8, count, PhaseRule::Spread).expect("valid law")
}

pub fn power(count: usize) -> ZeroSequence {
    gen_power(1.2, count, PhaseRule::Spread).expect("valid law")
}

pub fn product(count: usize) -> TruncatedBlaschke {
    TruncatedBlaschke::full(power(count))
}

pub fn model_function(count: usize, seed: u64) -> ModelFunction {
    let coefficients = random_coefficients(seed, 1, count).remove(0);
    ModelFunction::new(coefficients, BasisKind::Orthonormal, power(count)).expect("valid function")
}

/// `count` points spread over `|z| <= 0.9`.
pub fn sample_points(count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|i| {
            let t = (i as f64 + 0.5) / count as f64;
            DiskPoint::polar(0.9 * t.sqrt(), 2.399_963_229_728_653 * i as f64)
                .expect("inside the disk")
                .z()
        })
        .collect()
}
