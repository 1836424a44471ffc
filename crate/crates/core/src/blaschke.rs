//! Truncated Blaschke products, their subproducts and exact derivatives.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::geometry::DiskPoint;
use crate::sequences::ZeroSequence;

/// Above this many factors products are accumulated as log-modulus plus phase.
const DIRECT_PRODUCT_LIMIT: usize = 10_000;

/// Upper bound for `|B(z) - B_N(z)|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum TailBound {
    Bound(f64),
    Unknown,
}

impl TailBound {
    pub fn value(self) -> Option<f64> {
        match self {
            TailBound::Bound(b) => Some(b),
            TailBound::Unknown => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductValue {
    pub value: Complex64,
    pub tail_bound: TailBound,
}

/// One normalized factor `(conj(a)/|a|) (a - z) / (1 - conj(a) z)`.
#[derive(Debug, Clone, Copy)]
struct Factor {
    a: Complex64,
    a_bar: Complex64,
    unit: Complex64,
    /// `1 - |a|^2`, from the stored gap
    one_minus_sq: f64,
}

impl Factor {
    fn new(a: Complex64, gap: f64) -> Self {
        let modulus = 1.0 - gap;
        Factor {
            a,
            a_bar: a.conj(),
            unit: a.conj() / modulus,
            one_minus_sq: gap * (2.0 - gap),
        }
    }

    #[inline]
    fn eval(&self, z: Complex64) -> Complex64 {
        self.unit * (self.a - z) / (1.0 - self.a_bar * z)
    }

    #[inline]
    fn deriv(&self, z: Complex64) -> Complex64 {
        let d = 1.0 - self.a_bar * z;
        -self.unit * self.one_minus_sq / (d * d)
    }
}

fn nonzero(a: DiskPoint) -> Result<Complex64> {
    if a.modulus() == 0.0 {
        Err(LabError::domain(
            "Blaschke zeros at the origin are not normalizable",
        ))
    } else {
        Ok(a.z())
    }
}

/// The normalized Blaschke factor with zero `a`, evaluated at `z`.
pub fn factor_eval(a: DiskPoint, z: DiskPoint) -> Result<Complex64> {
    let a = nonzero(a)?;
    Ok(Factor::new(a, 1.0 - a.norm()).eval(z.z()))
}

/// Derivative `(conj(a)/|a|) (|a|^2 - 1) / (1 - conj(a) z)^2` of the factor.
pub fn factor_deriv(a: DiskPoint, z: DiskPoint) -> Result<Complex64> {
    let a = nonzero(a)?;
    Ok(Factor::new(a, 1.0 - a.norm()).deriv(z.z()))
}

/// The product of the first `n_used` factors of a zero sequence.
#[derive(Debug, Clone)]
pub struct TruncatedBlaschke {
    zeros: ZeroSequence,
    n_used: usize,
    factors: Vec<Factor>,
    /// `sum_{n > N} (1 - |a_n|)`, if the law determines it
    tail_sum: Option<f64>,
    min_modulus: f64,
}

impl TruncatedBlaschke {
    pub fn new(zeros: ZeroSequence, n_used: usize) -> Result<Self> {
        if n_used == 0 || n_used > zeros.len() {
            return Err(LabError::IndexOutOfRange {
                index: n_used,
                max: zeros.len(),
            });
        }
        let factors = zeros
            .points()
            .iter()
            .zip(zeros.gaps())
            .take(n_used)
            .map(|(p, &g)| Factor::new(p.z(), g))
            .collect();
        let tail_sum = zeros.tail_power_sum(n_used, 1.0);
        let min_modulus = zeros
            .gaps()
            .iter()
            .map(|g| 1.0 - g)
            .fold(f64::INFINITY, f64::min);
        Ok(TruncatedBlaschke {
            zeros,
            n_used,
            factors,
            tail_sum,
            min_modulus,
        })
    }

    /// Uses every stored zero.
    pub fn full(zeros: ZeroSequence) -> Self {
        let n = zeros.len();
        Self::new(zeros, n).expect("sequences are nonempty")
    }

    pub fn zeros(&self) -> &ZeroSequence {
        &self.zeros
    }

    pub fn n_used(&self) -> usize {
        self.n_used
    }

    /// `sum_{n > N} (1 - |a_n|)` from the sequence law.
    pub fn tail_sum(&self) -> Option<f64> {
        self.tail_sum
    }

    /// Bound `exp(K(z) S) - 1` with `K(z) = (1+|z|) / (min|a_n| (1-|z|))`.
    pub fn tail_bound(&self, z: Complex64) -> TailBound {
        match self.tail_sum {
            Some(0.0) => TailBound::Bound(0.0),
            Some(s) => {
                let r = z.norm();
                let k = (1.0 + r) / (self.min_modulus * (1.0 - r));
                TailBound::Bound((k * s).exp_m1())
            }
            None => TailBound::Unknown,
        }
    }

    pub fn value_at(&self, z: Complex64) -> Complex64 {
        product_of(&self.factors, z)
    }

    pub fn eval(&self, z: DiskPoint) -> ProductValue {
        ProductValue {
            value: self.value_at(z.z()),
            tail_bound: self.tail_bound(z.z()),
        }
    }

    pub fn deriv_at(&self, z: Complex64) -> Complex64 {
        let n = self.factors.len();
        let values: Vec<Complex64> = self.factors.iter().map(|f| f.eval(z)).collect();
        // suffix[k] = prod_{j >= k} b_j
        let mut suffix = vec![Complex64::new(1.0, 0.0); n + 1];
        for k in (0..n).rev() {
            suffix[k] = suffix[k + 1] * values[k];
        }
        let mut prefix = Complex64::new(1.0, 0.0);
        let mut total = Complex64::new(0.0, 0.0);
        for (k, f) in self.factors.iter().enumerate() {
            total += prefix * f.deriv(z) * suffix[k + 1];
            prefix *= values[k];
        }
        total
    }

    /// Subproducts `B_n(z)` and their derivatives for `n = 1..=N`.
    ///
    /// `B_1 = 1`; `B_n` has zeros `a_1, ..., a_{n-1}`.
    pub(crate) fn subproducts_with_derivs(&self, z: Complex64) -> Vec<(Complex64, Complex64)> {
        let mut out = Vec::with_capacity(self.n_used);
        let mut value = Complex64::new(1.0, 0.0);
        let mut deriv = Complex64::new(0.0, 0.0);
        for f in &self.factors {
            out.push((value, deriv));
            let b = f.eval(z);
            deriv = deriv * b + value * f.deriv(z);
            value *= b;
        }
        out
    }

    /// `1 - |B_N(z)|`, accurate where `|B_N(z)|` is close to 1.
    ///
    /// Uses `1 - |b_a(z)|^2 = (1-|a|^2)(1-|z|^2) / |1 - conj(a) z|^2` per factor.
    pub fn modulus_deficit(&self, z: Complex64) -> f64 {
        let r = z.norm();
        let one_minus_z_sq = (1.0 - r) * (1.0 + r);
        let log_sq: f64 = self
            .factors
            .iter()
            .map(|f| {
                let x = f.one_minus_sq * one_minus_z_sq / (1.0 - f.a_bar * z).norm_sqr();
                (-x.min(1.0)).ln_1p()
            })
            .sum();
        let deficit_sq = -log_sq.exp_m1();
        deficit_sq / (1.0 + (1.0 - deficit_sq).max(0.0).sqrt())
    }

    pub(crate) fn factor_terms(&self) -> impl Iterator<Item = (Complex64, f64)> + '_ {
        self.factors.iter().map(|f| (f.a_bar, f.one_minus_sq))
    }
}

fn product_of(factors: &[Factor], z: Complex64) -> Complex64 {
    if factors.len() <= DIRECT_PRODUCT_LIMIT {
        return factors
            .iter()
            .fold(Complex64::new(1.0, 0.0), |acc, f| acc * f.eval(z));
    }
    let mut log_modulus = 0.0;
    let mut phase = 0.0;
    for f in factors {
        let b = f.eval(z);
        let m = b.norm();
        if m == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        log_modulus += m.ln();
        phase += b.im.atan2(b.re);
    }
    Complex64::from_polar(log_modulus.exp(), phase)
}

/// `B_N(z)` with the a posteriori truncation bound.
pub fn product_eval(b: &TruncatedBlaschke, z: DiskPoint) -> ProductValue {
    b.eval(z)
}

/// Subproduct `B_n(z)` with zeros `a_1, ..., a_{n-1}`; valid for `1 <= n <= N + 1`.
pub fn subproduct_eval(b: &TruncatedBlaschke, n: usize, z: DiskPoint) -> Result<Complex64> {
    if n == 0 || n > b.n_used + 1 {
        return Err(LabError::IndexOutOfRange {
            index: n,
            max: b.n_used + 1,
        });
    }
    Ok(product_of(&b.factors[..n - 1], z.z()))
}

/// Exact derivative of `B_N` by the product rule with prefix and suffix products.
pub fn product_deriv(b: &TruncatedBlaschke, z: DiskPoint) -> Complex64 {
    b.deriv_at(z.z())
}
