//! Circle means, weighted area integrals over the disk, and the boundary
//! integrals used to test membership in weighted Bergman spaces.
//!
//! Area integrals over `|z| <= r_max` are split into annuli with edges
//! `r_k = 1 - 2^{-k}`. Each annulus gets a Gauss–Legendre rule in `r` and every
//! radial node a trapezoid rule in angle; the angular count grows like the
//! inverse distance to the boundary (or to the integrand's nearest singularity).

mod extrapolate;
mod gauss;
mod growth;

pub use extrapolate::{richardson_halving, shifted_exponents};
pub use gauss::gauss_legendre;
pub use growth::{
    classify_growth, Growth, GrowthVerdict, CAUCHY_TOLERANCE, DECAY_SLOPE, GROWTH_SLOPE, LOG_BAND,
    WINDOW,
};

use std::f64::consts::{PI, TAU};
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::blaschke::{TailBound, TruncatedBlaschke};
use crate::error::{check_exponent, check_weight, LabError, Result};
use crate::geometry::DiskPoint;
use crate::numeric::{linear_fit, CompensatedComplexSum, CompensatedSum};
use crate::sequences::ZeroSequence;

/// Gauss–Legendre order per annulus.
pub const RADIAL_ORDER: usize = 16;
/// Angular samples per unit of `1/(1-r)`.
pub const ANGULAR_DENSITY: f64 = 64.0;
const MIN_ANGULAR: usize = 64;

/// Contribution of one annulus `r_lo < |z| <= r_hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnnulusRecord {
    pub r_lo: f64,
    pub r_hi: f64,
    pub partial: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub annuli: Vec<AnnulusRecord>,
    pub warnings: Vec<String>,
}

impl QuadratureResult {
    /// `(r_hi, cumulative value up to r_hi)` after each annulus.
    pub fn cumulative(&self) -> Vec<(f64, f64)> {
        let mut acc = CompensatedSum::new();
        self.annuli
            .iter()
            .map(|a| {
                acc.add(a.partial);
                (a.r_hi, acc.value())
            })
            .collect()
    }

    /// Cumulative values at the dyadic radii `1 - 2^{-k}` for `k` in `levels`.
    pub fn at_levels(&self, levels: impl IntoIterator<Item = u32>) -> Vec<(f64, f64)> {
        let cumulative = self.cumulative();
        levels
            .into_iter()
            .filter_map(|k| {
                let r = dyadic_radius(k);
                cumulative
                    .iter()
                    .find(|(rh, _)| (rh - r).abs() < 1e-15)
                    .copied()
            })
            .collect()
    }

    /// Rows `(r_k, partial, cumulative)`.
    pub fn csv_rows(&self) -> Vec<(f64, f64, f64)> {
        self.annuli
            .iter()
            .zip(self.cumulative())
            .map(|(a, (_, c))| (a.r_hi, a.partial, c))
            .collect()
    }

    /// Extrapolates the cumulative values at the last `count` dyadic levels to
    /// `r -> 1`, assuming a tail expansion in powers `h^{first}, h^{first+1}, ...`.
    pub fn boundary_limit(&self, count: usize, first_exponent: f64) -> Option<(f64, f64)> {
        let cumulative = self.cumulative();
        let dyadic: Vec<f64> = cumulative
            .iter()
            .filter(|(r, _)| is_dyadic(*r))
            .map(|&(_, v)| v)
            .collect();
        if dyadic.len() < count || count == 0 {
            return None;
        }
        let tail = &dyadic[dyadic.len() - count..];
        Some(richardson_halving(
            tail,
            &shifted_exponents(first_exponent, count - 1),
        ))
    }
}

/// `1 - 2^{-k}`.
pub fn dyadic_radius(k: u32) -> f64 {
    1.0 - 2f64.powi(-(k as i32))
}

fn is_dyadic(r: f64) -> bool {
    let k = (-(1.0 - r).log2()).round();
    k >= 1.0 && (dyadic_radius(k as u32) - r).abs() < 1e-15
}

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r < 1.0 {
        Ok(())
    } else {
        Err(LabError::domain(format!("radius {r} must lie in (0, 1)")))
    }
}

/// Annulus edges `0 = r_0 < r_1 < ... <= r_max` at dyadic radii.
fn annulus_edges(r_max: f64) -> Vec<f64> {
    let mut edges = vec![0.0];
    let mut k = 1;
    loop {
        let r = dyadic_radius(k);
        if r >= r_max - 1e-15 {
            break;
        }
        edges.push(r);
        k += 1;
    }
    edges.push(r_max);
    edges
}

/// Ring mean of `integrand` over `|z| = r` with `count` equispaced angles
/// (rounded up to even), plus the mean from every other sample.
fn ring_means<F>(integrand: &F, r: f64, count: usize) -> (f64, f64)
where
    F: Fn(Complex64) -> f64 + ?Sized,
{
    let m = count.max(2).next_multiple_of(2);
    let step = TAU / m as f64;
    let mut full = CompensatedSum::new();
    let mut half = CompensatedSum::new();
    for j in 0..m {
        let v = integrand(Complex64::from_polar(r, step * j as f64));
        full.add(v);
        if j % 2 == 0 {
            half.add(v);
        }
    }
    (full.value() / m as f64, half.value() / (m / 2) as f64)
}

/// `∬_{|z| <= r_max} integrand(z) dA(z)` by the annular scheme, with
/// `angular(r)` trapezoid points on the circle of radius `r`.
fn annular_integral<F, A>(integrand: &F, r_max: f64, angular: A) -> QuadratureResult
where
    F: Fn(Complex64) -> f64 + Sync + ?Sized,
    A: Fn(f64) -> usize + Sync,
{
    let rule = gauss_legendre(RADIAL_ORDER);
    let edges = annulus_edges(r_max);
    let nodes: Vec<(usize, f64, f64)> = edges
        .windows(2)
        .enumerate()
        .flat_map(|(i, w)| gauss::mapped(&rule, w[0], w[1]).map(move |(r, wt)| (i, r, wt)))
        .collect();
    // fixed node order keeps the reduction deterministic
    let rings: Vec<(f64, f64)> = nodes
        .par_iter()
        .map(|&(_, r, wt)| {
            let (full, half) = ring_means(integrand, r, angular(r));
            let scale = TAU * wt * r;
            (scale * full, scale * (full - half).abs())
        })
        .collect();
    let mut annuli: Vec<AnnulusRecord> = edges
        .windows(2)
        .map(|w| AnnulusRecord {
            r_lo: w[0],
            r_hi: w[1],
            partial: 0.0,
        })
        .collect();
    let mut sums = vec![CompensatedSum::new(); annuli.len()];
    let mut error = CompensatedSum::new();
    for (&(i, _, _), &(v, e)) in nodes.iter().zip(&rings) {
        sums[i].add(v);
        error.add(e);
    }
    for (a, s) in annuli.iter_mut().zip(&sums) {
        a.partial = s.value();
    }
    let value = annuli
        .iter()
        .map(|a| a.partial)
        .collect::<CompensatedSum>()
        .value();
    QuadratureResult {
        value,
        abs_error_estimate: error.value(),
        annuli,
        warnings: Vec::new(),
    }
}

/// Angular trapezoid count `⌈64/(1-r)⌉` used near the boundary.
pub fn boundary_angular(r: f64) -> usize {
    ((ANGULAR_DENSITY / (1.0 - r)).ceil() as usize).max(MIN_ANGULAR)
}

/// Integral mean `M_p(r; f)` by the trapezoid rule with `angular_count` points.
pub fn circle_mean<F>(f: F, p: f64, r: f64, angular_count: usize) -> Result<f64>
where
    F: Fn(Complex64) -> Complex64,
{
    check_exponent(p)?;
    check_radius(r)?;
    if angular_count == 0 {
        return Err(LabError::domain("angular count must be positive"));
    }
    let step = TAU / angular_count as f64;
    let mean = (0..angular_count)
        .map(|j| f(Complex64::from_polar(r, step * j as f64)).norm().powf(p))
        .collect::<CompensatedSum>()
        .value()
        / angular_count as f64;
    Ok(mean.powf(1.0 / p))
}

/// `(1/π) ∬_{|z| <= r_max} |f|^p (1-|z|)^α dA`, the p-th power of the partial norm.
pub fn area_norm<F>(f: F, p: f64, alpha: f64, r_max: f64) -> Result<QuadratureResult>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    check_exponent(p)?;
    check_weight(alpha)?;
    check_radius(r_max)?;
    let integrand = |z: Complex64| f(z).norm().powf(p) * (1.0 - z.norm()).powf(alpha) / PI;
    Ok(annular_integral(&integrand, r_max, boundary_angular))
}

/// `∬_{|z| <= r_max} (1-|z|)^α / |1 - conj(a) z|^{2p} dA` (no `1/π`).
pub fn lemma_integral(a: DiskPoint, alpha: f64, p: f64, r_max: f64) -> Result<QuadratureResult> {
    check_exponent(p)?;
    check_weight(alpha)?;
    check_radius(r_max)?;
    let a_bar = a.z().conj();
    let a_mod = a.modulus();
    let integrand =
        |z: Complex64| (1.0 - z.norm()).powf(alpha) * (1.0 - a_bar * z).norm().powf(-2.0 * p);
    // the integrand varies on the angular scale 1 - |a| r
    let angular = |r: f64| ((ANGULAR_DENSITY / (1.0 - a_mod * r)).ceil() as usize).max(MIN_ANGULAR);
    Ok(annular_integral(&integrand, r_max, angular))
}

/// Dyadic levels beyond the gap of `a` used by [`lemma_integral_limit`].
const LEMMA_EXTRA_LEVELS: u32 = 10;
const LEMMA_EXTRAPOLATION_POINTS: usize = 5;

/// The full-disk value of [`lemma_integral`], by integrating to
/// `r = 1 - 2^{-K}` well past `|a|` and extrapolating the tail `h^{α+1}, h^{α+2}, ...`.
pub fn lemma_integral_limit(a: DiskPoint, alpha: f64, p: f64) -> Result<(f64, f64)> {
    let gap_level = (-(1.0 - a.modulus()).log2()).ceil().max(0.0) as u32;
    let top = gap_level + LEMMA_EXTRA_LEVELS;
    let result = lemma_integral(a, alpha, p, dyadic_radius(top))?;
    Ok(result
        .boundary_limit(LEMMA_EXTRAPOLATION_POINTS, alpha + 1.0)
        .expect("enough dyadic levels"))
}

/// Full-disk `(1/π) ∬ |f|^p (1-|z|)^α dA` extrapolated from levels up to `1 - 2^{-top}`.
pub fn area_norm_limit<F>(f: F, p: f64, alpha: f64, top: u32) -> Result<(f64, f64)>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    if top < LEMMA_EXTRAPOLATION_POINTS as u32 {
        return Err(LabError::domain("need at least five dyadic levels"));
    }
    let result = area_norm(f, p, alpha, dyadic_radius(top))?;
    Ok(result
        .boundary_limit(LEMMA_EXTRAPOLATION_POINTS, alpha + 1.0)
        .expect("enough dyadic levels"))
}

/// The three size regimes of the Lemma integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// `2p < α + 2`: comparable to 1
    Bounded,
    /// `2p = α + 2`: comparable to `log(1/(1-|a|))`
    Log,
    /// `2p > α + 2`: comparable to `(1-|a|)^{-(2p-α-2)}`
    Power,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Bounded => "Bounded",
            Regime::Log => "Log",
            Regime::Power => "Power",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeVerdict {
    pub regime: Regime,
    /// Right-hand side of the matching case at `a`.
    pub comparison: f64,
}

/// Which case of the Lemma applies, and its comparison function at `a`.
pub fn lemma_regime(a: DiskPoint, alpha: f64, p: f64) -> Result<RegimeVerdict> {
    check_exponent(p)?;
    check_weight(alpha)?;
    let diff = 2.0 * p - (alpha + 2.0);
    let gap = 1.0 - a.modulus();
    Ok(if diff.abs() <= 1e-12 * (alpha + 2.0) {
        RegimeVerdict {
            regime: Regime::Log,
            comparison: (1.0 / gap).ln(),
        }
    } else if diff < 0.0 {
        RegimeVerdict {
            regime: Regime::Bounded,
            comparison: 1.0,
        }
    } else {
        RegimeVerdict {
            regime: Regime::Power,
            comparison: gap.powf(-diff),
        }
    })
}

/// Factor band for the bounded case of the Lemma.
pub const BOUNDED_RATIO_BAND: f64 = 1.5;
/// Minimal `R^2` of the linear fit in `k` for the logarithmic case.
pub const LOG_R2_FLOOR: f64 = 0.99;
/// Allowed deviation of the fitted exponent from `2p - α - 2` in the power case.
pub const POWER_EXPONENT_TOLERANCE: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LemmaPoint {
    pub level: u32,
    /// `|a| = 1 - 2^{-level}`
    pub modulus: f64,
    pub value: f64,
    pub extrapolation_error: f64,
    pub comparison: f64,
}

/// Full-disk Lemma integrals along `|a| = 1 - 2^{-k}` and the fits that
/// distinguish its three cases.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaSweep {
    pub alpha: f64,
    pub p: f64,
    pub regime: Regime,
    pub points: Vec<LemmaPoint>,
    /// `max / min` of the values.
    pub bounded_ratio: f64,
    /// Slope and `R^2` of value against `k`.
    pub log_slope: f64,
    pub log_r2: f64,
    /// Slope of `log(value)` against `log(1/(1-|a|))`.
    pub power_exponent: f64,
}

impl LemmaSweep {
    /// Whether the fitted growth matches the case predicted by [`lemma_regime`].
    pub fn matches_regime(&self) -> bool {
        match self.regime {
            Regime::Bounded => self.bounded_ratio <= BOUNDED_RATIO_BAND,
            Regime::Log => self.log_r2 > LOG_R2_FLOOR,
            Regime::Power => {
                (self.power_exponent - (2.0 * self.p - self.alpha - 2.0)).abs()
                    <= POWER_EXPONENT_TOLERANCE
            }
        }
    }
}

/// [`lemma_integral_limit`] at `a = 1 - 2^{-k}` for each `k` in `levels`.
pub fn lemma_sweep(
    alpha: f64,
    p: f64,
    levels: std::ops::RangeInclusive<u32>,
) -> Result<LemmaSweep> {
    check_exponent(p)?;
    check_weight(alpha)?;
    if levels.clone().count() < 2 || *levels.start() == 0 {
        return Err(LabError::domain("a sweep needs at least two levels k >= 1"));
    }
    let points = levels
        .map(|k| {
            let a = DiskPoint::new(dyadic_radius(k), 0.0)?;
            let (value, extrapolation_error) = lemma_integral_limit(a, alpha, p)?;
            let comparison = lemma_regime(a, alpha, p)?.comparison;
            Ok(LemmaPoint {
                level: k,
                modulus: a.modulus(),
                value,
                extrapolation_error,
                comparison,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let values: Vec<f64> = points.iter().map(|q| q.value).collect();
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let ks: Vec<f64> = points.iter().map(|q| q.level as f64).collect();
    let (log_slope, _, log_r2) = linear_fit(&ks, &values);
    let xs: Vec<f64> = points
        .iter()
        .map(|q| (1.0 / (1.0 - q.modulus)).ln())
        .collect();
    let ys: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    let power_exponent = linear_fit(&xs, &ys).0;
    Ok(LemmaSweep {
        alpha,
        p,
        regime: lemma_regime(DiskPoint::ORIGIN, alpha, p)?.regime,
        points,
        bounded_ratio: max / min,
        log_slope,
        log_r2,
        power_exponent,
    })
}

/// Integrand `((1-|B|)/(1-|z|))^p (1-|z|)^α` of the Ahern criterion, from the
/// truncated product.
pub fn ahern_integrand(b: &TruncatedBlaschke, p: f64, alpha: f64, z: Complex64) -> f64 {
    let deficit = b.modulus_deficit(z);
    deficit.powf(p) * (1.0 - z.norm()).powf(alpha - p)
}

/// `∬_{|z| <= r_max} ((1-|B|)/(1-|z|))^p (1-|z|)^α dA` for the truncated product.
///
/// The truncated product is larger in modulus than the full one, so the value
/// is a lower bound for the full product's integral (up to quadrature error);
/// the tail bound of `B` is folded into `abs_error_estimate`.
pub fn ahern_integral(
    b: &TruncatedBlaschke,
    p: f64,
    alpha: f64,
    r_max: f64,
) -> Result<QuadratureResult> {
    check_exponent(p)?;
    check_weight(alpha)?;
    check_radius(r_max)?;
    let integrand = |z: Complex64| ahern_integrand(b, p, alpha, z);
    let mut result = annular_integral(&integrand, r_max, boundary_angular);

    let tail_known = b.tail_bound(Complex64::new(0.0, 0.0)) != TailBound::Unknown;
    if tail_known {
        // integrand with 1-|B| raised by the tail bound, capped at 1
        let raised = |z: Complex64| {
            let t = b.tail_bound(z).value().unwrap_or(0.0);
            let deficit = b.modulus_deficit(z);
            let up = (deficit + t).min(1.0);
            (up.powf(p) - deficit.powf(p)) * (1.0 - z.norm()).powf(alpha - p)
        };
        let tail = annular_integral(&raised, r_max, boundary_angular);
        result.abs_error_estimate += tail.value;
    } else {
        result.abs_error_estimate = f64::INFINITY;
        result
            .warnings
            .push("truncation tail unknown; error estimate unbounded".to_string());
    }
    if p <= alpha + 1.0 {
        result.warnings.push(format!(
            "the integral criterion for B' in A^p_alpha needs p > alpha + 1 (p = {p}, alpha = {alpha})"
        ));
    }
    Ok(result)
}

/// Circle-integral inner product on `H^2`, extrapolated to the unit circle.
///
/// `<f, g>_r = (1/2π) ∫ f(re^{it}) conj(g(re^{it})) dt` is evaluated at
/// `r = 1 - 2^{-k}` for each level `k` and Richardson-extrapolated in `h = 2^{-k}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HardyInnerProduct {
    pub first_level: u32,
    pub last_level: u32,
    pub angular: usize,
}

impl Default for HardyInnerProduct {
    fn default() -> Self {
        HardyInnerProduct {
            first_level: 10,
            last_level: 14,
            angular: 4096,
        }
    }
}

impl HardyInnerProduct {
    /// A scheme resolving rational functions with poles at `1/conj(a_n)`,
    /// where the smallest gap `1 - |a_n|` is `min_gap`.
    pub fn for_min_gap(min_gap: f64) -> Self {
        let gap_level = (-min_gap.log2()).ceil().max(0.0) as u32;
        let first_level = (gap_level + 5).max(10);
        let angular = ((64.0 / min_gap).ceil() as usize)
            .max(4096)
            .next_power_of_two();
        HardyInnerProduct {
            first_level,
            last_level: first_level + 4,
            angular,
        }
    }

    /// [`Self::for_min_gap`] with the smallest gap of `seq`.
    pub fn for_sequence(seq: &ZeroSequence) -> Self {
        let min_gap = seq.gaps().iter().copied().fold(f64::INFINITY, f64::min);
        Self::for_min_gap(min_gap)
    }

    pub fn inner<F, G>(&self, f: F, g: G) -> Complex64
    where
        F: Fn(Complex64) -> Complex64,
        G: Fn(Complex64) -> Complex64,
    {
        let step = TAU / self.angular as f64;
        let circle = |r: f64| {
            (0..self.angular)
                .map(|j| {
                    let z = Complex64::from_polar(r, step * j as f64);
                    f(z) * g(z).conj()
                })
                .collect::<CompensatedComplexSum>()
                .value()
                / self.angular as f64
        };
        let values: Vec<Complex64> = (self.first_level..=self.last_level)
            .map(|k| circle(dyadic_radius(k)))
            .collect();
        let exponents = shifted_exponents(1.0, values.len() - 1);
        let re: Vec<f64> = values.iter().map(|v| v.re).collect();
        let im: Vec<f64> = values.iter().map(|v| v.im).collect();
        Complex64::new(
            richardson_halving(&re, &exponents).0,
            richardson_halving(&im, &exponents).0,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::{gen_geometric, PhaseRule};
    use approx::assert_abs_diff_eq;

    fn one(_: Complex64) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn circle_mean_examples() {
        for p in [0.5, 1.0, 3.0] {
            assert_abs_diff_eq!(circle_mean(one, p, 0.7, 32).unwrap(), 1.0, epsilon = 1e-14);
            assert_abs_diff_eq!(
                circle_mean(|z| z, p, 0.7, 32).unwrap(),
                0.7,
                epsilon = 1e-14
            );
        }
        let m = circle_mean(|z| 1.0 / (1.0 - z), 2.0, 0.5, 128).unwrap();
        assert_abs_diff_eq!(m, (4.0f64 / 3.0).sqrt(), epsilon = 1e-12);
        assert!(circle_mean(one, 0.0, 0.5, 16).is_err());
        assert!(circle_mean(one, -1.0, 0.5, 16).is_err());
        assert!(circle_mean(one, 1.0, 1.0, 16).is_err());
    }

    #[test]
    fn area_norm_constant_function() {
        // 2 / ((α+1)(α+2)) minus the tail beyond r_max
        for alpha in [0.0, 1.0, 2.0, -0.5] {
            let r_max = dyadic_radius(10);
            let h: f64 = 1.0 - r_max;
            let tail =
                2.0 * (h.powf(alpha + 1.0) / (alpha + 1.0) - h.powf(alpha + 2.0) / (alpha + 2.0));
            let exact = 2.0 / ((alpha + 1.0) * (alpha + 2.0)) - tail;
            let q = area_norm(one, 1.0, alpha, r_max).unwrap();
            assert_abs_diff_eq!(q.value, exact, epsilon = 1e-12);
        }
    }

    #[test]
    fn area_norm_identity_function() {
        let (limit, _) = area_norm_limit(|z| z, 2.0, 0.0, 10).unwrap();
        assert_abs_diff_eq!(limit, 0.5, epsilon = 1e-10);
    }

    #[test]
    fn area_norm_rejects_bad_weight() {
        assert!(area_norm(one, 1.0, -1.0, 0.5).is_err());
        assert!(area_norm(one, 0.0, 0.0, 0.5).is_err());
        assert!(area_norm(one, 1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn result_invariants() {
        let q = area_norm(|z| 1.0 / (1.0 - 0.9 * z), 1.5, 0.3, dyadic_radius(8)).unwrap();
        let sum: f64 = q.annuli.iter().map(|a| a.partial).sum();
        assert_abs_diff_eq!(sum, q.value, epsilon = 1e-12);
        assert!(q.abs_error_estimate >= 0.0);
        assert!(q.annuli.iter().all(|a| a.partial >= 0.0));
        assert!(q
            .annuli
            .windows(2)
            .all(|w| w[0].r_hi < w[1].r_hi && w[0].r_hi == w[1].r_lo));
        assert_eq!(q.annuli.last().unwrap().r_hi, dyadic_radius(8));
        let c = q.cumulative();
        assert!(c.windows(2).all(|w| w[1].1 >= w[0].1));
    }

    #[test]
    fn non_dyadic_r_max_closes_last_annulus() {
        let q = area_norm(one, 1.0, 0.0, 0.8).unwrap();
        assert_eq!(q.annuli.last().unwrap().r_hi, 0.8);
        assert_abs_diff_eq!(q.value, 0.64, epsilon = 1e-13);
    }

    #[test]
    fn lemma_integral_at_origin() {
        let (v, _) = lemma_integral_limit(DiskPoint::ORIGIN, 0.0, 1.3).unwrap();
        assert_abs_diff_eq!(v, PI, epsilon = 1e-10);
        let (v, _) = lemma_integral_limit(DiskPoint::ORIGIN, 2.0, 0.7).unwrap();
        assert_abs_diff_eq!(v, 2.0 * PI / 12.0, epsilon = 1e-10);
    }

    #[test]
    fn lemma_integral_is_rotation_invariant() {
        let a = DiskPoint::new(0.6, 0.0).unwrap();
        let r_max = dyadic_radius(8);
        let base = lemma_integral(a, 0.0, 1.2, r_max).unwrap().value;
        for theta in [0.3, 1.9, 4.0] {
            let v = lemma_integral(a.rotate(theta), 0.0, 1.2, r_max)
                .unwrap()
                .value;
            assert!((v - base).abs() <= 1e-8 * base);
        }
    }

    #[test]
    fn lemma_power_regime_calibrated_asymptotic() {
        // C calibrated at |a| = 0.9, checked at |a| = 0.99 within a factor of 2
        let (alpha, p) = (0.0, 1.5);
        let exponent = 2.0 * p - alpha - 2.0;
        let at = |m: f64| {
            lemma_integral_limit(DiskPoint::new(m, 0.0).unwrap(), alpha, p)
                .unwrap()
                .0
        };
        let c = at(0.9) * 0.1f64.powf(exponent);
        let ratio = at(0.99) / (c / 0.01f64.powf(exponent));
        assert!((0.5..2.0).contains(&ratio), "{ratio}");
    }

    #[test]
    fn lemma_sweep_power_and_log_cases() {
        let power = lemma_sweep(0.0, 1.3, 3..=9).unwrap();
        assert_eq!(power.regime, Regime::Power);
        assert!(power.matches_regime(), "{}", power.power_exponent);
        let log = lemma_sweep(0.0, 1.0, 3..=9).unwrap();
        assert_eq!(log.regime, Regime::Log);
        assert!(log.matches_regime(), "{}", log.log_r2);
        assert!(lemma_sweep(0.0, 1.0, 3..=3).is_err());
    }

    #[test]
    fn lemma_sweep_against_series_oracle() {
        // 2π Σ c_n^2 |a|^{2n} B(2n+2, α+1) with c_n = Γ(n+p)/(Γ(p) n!), α = 0
        let p = 0.8;
        let sweep = lemma_sweep(0.0, p, 3..=4).unwrap();
        for point in &sweep.points {
            let a2 = point.modulus * point.modulus;
            let (mut c, mut total, mut pow) = (1.0f64, 0.0f64, 1.0f64);
            for n in 0..200_000u32 {
                let nf = n as f64;
                total += c * c * pow / (2.0 * nf + 2.0);
                c *= (nf + p) / (nf + 1.0);
                pow *= a2;
            }
            let oracle = 2.0 * PI * total;
            assert!(
                (point.value - oracle).abs() < 1e-6 * oracle,
                "{} vs {oracle}",
                point.value
            );
        }
    }

    #[test]
    fn lemma_regime_examples() {
        let a = DiskPoint::new(0.9, 0.0).unwrap();
        assert_eq!(lemma_regime(a, 0.0, 0.9).unwrap().regime, Regime::Bounded);
        assert_eq!(lemma_regime(a, 0.0, 1.0).unwrap().regime, Regime::Log);
        let v = lemma_regime(a, 0.0, 1.5).unwrap();
        assert_eq!(v.regime, Regime::Power);
        assert_abs_diff_eq!(v.comparison, 10.0, epsilon = 1e-12);
        assert!(lemma_regime(a, -1.0, 1.0).is_err());
    }

    #[test]
    fn ahern_integrand_lower_bound_on_pseudo_disks() {
        let zeros = gen_geometric(1.0, 0.5, 12, PhaseRule::Spread).unwrap();
        let delta = crate::sequences::separation_constant(&zeros).unwrap();
        let radius = delta / 2.0;
        let b = TruncatedBlaschke::full(zeros.clone());
        let (p, alpha) = (1.5, 0.0);
        for a in zeros.points().iter().take(8) {
            let disk = crate::geometry::pseudo_disk(*a, radius).unwrap();
            for k in 0..32 {
                let z = disk.center + Complex64::from_polar(0.999 * disk.radius, k as f64 * 0.2);
                let lower = (1.0 - radius).powf(p) * (1.0 - z.norm()).powf(alpha - p);
                assert!(ahern_integrand(&b, p, alpha, z) >= lower);
            }
        }
    }

    #[test]
    fn ahern_integral_single_zero_settles() {
        let b = TruncatedBlaschke::full(
            ZeroSequence::finite(vec![DiskPoint::new(0.5, 0.0).unwrap()]).unwrap(),
        );
        let q = ahern_integral(&b, 1.5, 0.0, dyadic_radius(10)).unwrap();
        assert!(q.warnings.is_empty());
        let samples = q.at_levels(4..=10);
        assert_eq!(classify_growth(&samples).classification, Growth::Finite);
        assert!(q.annuli.iter().all(|a| a.partial >= 0.0));
    }

    #[test]
    fn ahern_integral_warns_outside_criterion() {
        let b = TruncatedBlaschke::full(
            ZeroSequence::finite(vec![DiskPoint::new(0.5, 0.0).unwrap()]).unwrap(),
        );
        let q = ahern_integral(&b, 0.5, 0.0, 0.75).unwrap();
        assert_eq!(q.warnings.len(), 1);
    }

    #[test]
    fn hardy_inner_product_of_szego_kernels() {
        // <k_a, k_b> = 1 / (1 - conj(a) b) for k_w(z) = 1/(1 - conj(w) z)
        let a = Complex64::new(0.5, 0.3);
        let b = Complex64::new(-0.2, 0.7);
        let v = HardyInnerProduct::default().inner(
            |z| 1.0 / (1.0 - a.conj() * z),
            |z| 1.0 / (1.0 - b.conj() * z),
        );
        let exact = 1.0 / (1.0 - b * a.conj());
        assert!((v - exact).norm() < 1e-9, "{v} vs {exact}");
    }

    #[test]
    fn at_levels_picks_dyadic_radii() {
        let q = area_norm(one, 1.0, 0.0, dyadic_radius(6)).unwrap();
        let levels = q.at_levels(3..=6);
        assert_eq!(levels.len(), 4);
        for (k, (r, v)) in (3..=6).zip(levels) {
            assert_eq!(r, dyadic_radius(k));
            assert_abs_diff_eq!(v, r * r, epsilon = 1e-13);
        }
    }
}
