//! Richardson extrapolation in the boundary gap `h = 2^{-k}`.

/// Extrapolates `value(h) = L + sum_j c_j h^{e_j}` to `h = 0` from values at
/// successively halved `h` (coarsest first), eliminating `exponents` in order.
///
/// Returns the limit and the size of the last correction.
pub fn richardson_halving(values: &[f64], exponents: &[f64]) -> (f64, f64) {
    assert!(!values.is_empty(), "nothing to extrapolate");
    let mut column = values.to_vec();
    let mut correction = f64::INFINITY;
    for &e in exponents.iter().take(values.len() - 1) {
        let factor = 2f64.powf(e);
        let next: Vec<f64> = column
            .windows(2)
            .map(|w| (factor * w[1] - w[0]) / (factor - 1.0))
            .collect();
        correction = (next[next.len() - 1] - column[column.len() - 1]).abs();
        column = next;
    }
    (column[column.len() - 1], correction)
}

/// Exponents `first, first + 1, ...`.
pub fn shifted_exponents(first: f64, count: usize) -> Vec<f64> {
    (0..count).map(|j| first + j as f64).collect()
}
