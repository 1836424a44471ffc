//! Finite/infinite verdicts from the growth of partial integrals over radii `1 - 2^{-k}`.
//!
//! With `x_k = log(1/(1-r_k))`, two slopes are fitted over the last
//! [`WINDOW`] samples: that of `log(partial)` and that of `log(increment)`.
//! Power growth `h^{-s}` gives increment slope `s`, logarithmic growth gives
//! increment slope 0, and a convergent integral with an algebraic tail `h^t`
//! gives increment slope `-t`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::numeric::linear_fit;

/// Number of trailing samples the verdict is based on.
pub const WINDOW: usize = 4;
/// Minimal growth slope of `log(partial)` for an `Infinite` verdict.
pub const GROWTH_SLOPE: f64 = 0.05;
/// Relative increment below which the partials count as settled.
pub const CAUCHY_TOLERANCE: f64 = 1e-4;
/// Increment slopes within this band of zero are logarithmic growth.
pub const LOG_BAND: f64 = 0.05;
/// Increments shrinking at least like `h^{DECAY_SLOPE}` count as convergent.
pub const DECAY_SLOPE: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Growth {
    Finite,
    Infinite,
    Inconclusive,
}

impl fmt::Display for Growth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Growth::Finite => "Finite",
            Growth::Infinite => "Infinite",
            Growth::Inconclusive => "Inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthVerdict {
    pub classification: Growth,
    /// Slope of `log(increment)`; the growth exponent for divergent partials.
    pub fitted_exponent: f64,
    /// Slope of `log(partial)`.
    pub partial_slope: f64,
    /// Increments neither grow nor decay: logarithmic divergence.
    pub log_type: bool,
    pub window: Vec<(f64, f64)>,
}

impl GrowthVerdict {
    /// Rows `(r_k, increment, partial)` over the window; the first increment is empty.
    pub fn csv_rows(&self) -> Vec<(f64, Option<f64>, f64)> {
        self.window
            .iter()
            .enumerate()
            .map(|(i, &(r, p))| (r, (i > 0).then(|| p - self.window[i - 1].1), p))
            .collect()
    }

    fn inconclusive(window: Vec<(f64, f64)>) -> Self {
        GrowthVerdict {
            classification: Growth::Inconclusive,
            fitted_exponent: f64::NAN,
            partial_slope: f64::NAN,
            log_type: false,
            window,
        }
    }
}

/// Classifies partial integrals `samples = [(r_k, partial)]` with `r_k` increasing.
pub fn classify_growth(samples: &[(f64, f64)]) -> GrowthVerdict {
    if samples.len() < WINDOW || samples.windows(2).any(|w| w[1].0 <= w[0].0) {
        return GrowthVerdict::inconclusive(samples.to_vec());
    }
    let window = samples[samples.len() - WINDOW..].to_vec();
    let xs: Vec<f64> = window
        .iter()
        .map(|&(r, _)| (1.0 / (1.0 - r)).ln())
        .collect();
    let partials: Vec<f64> = window.iter().map(|&(_, p)| p).collect();
    let increments: Vec<f64> = partials.windows(2).map(|w| w[1] - w[0]).collect();
    let last = partials[WINDOW - 1];

    let settled = increments
        .iter()
        .all(|d| d.abs() <= CAUCHY_TOLERANCE * last.abs());
    let partial_slope = if partials.iter().all(|&p| p > 0.0) {
        let ys: Vec<f64> = partials.iter().map(|p| p.ln()).collect();
        linear_fit(&xs, &ys).0
    } else {
        f64::NAN
    };

    let increasing = increments.iter().all(|&d| d > 0.0);
    let increment_slope = if increasing {
        let ys: Vec<f64> = increments.iter().map(|d| d.ln()).collect();
        linear_fit(&xs[1..], &ys).0
    } else {
        f64::NAN
    };

    let classification = if settled || (increasing && increment_slope <= -DECAY_SLOPE) {
        Growth::Finite
    } else if increasing && partial_slope > GROWTH_SLOPE && increment_slope >= -LOG_BAND {
        Growth::Infinite
    } else {
        Growth::Inconclusive
    };
    let fitted_exponent = if increasing {
        increment_slope
    } else {
        partial_slope
    };
    GrowthVerdict {
        classification,
        fitted_exponent,
        partial_slope,
        log_type: classification == Growth::Infinite && increment_slope.abs() <= LOG_BAND,
        window,
    }
}
