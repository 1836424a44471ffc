//! The model space `H^2 ⊖ B H^2`: reproducing kernel, the orthonormal basis
//! `g_n`, the Riesz basis `h_n`, and synthesis of functions and derivatives.
//!
//! Both bases use the conjugated denominator `1 - conj(a_n) z`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::blaschke::{TailBound, TruncatedBlaschke};
use crate::error::{LabError, Result};
use crate::geometry::DiskPoint;
use crate::numeric::CompensatedComplexSum;
use crate::quadrature::HardyInnerProduct;
use crate::sequences::{uniform_separation_constant, ZeroSequence};

/// Default floor on the truncated uniform-separation constant for the Riesz basis.
pub const RIESZ_SEPARATION_FLOOR: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisKind {
    /// `g_n = B_n (1-|a_n|^2)^{1/2} / (1 - conj(a_n) z)`
    #[serde(rename = "g")]
    Orthonormal,
    /// `h_n = (1-|a_n|)^{1/2} / (1 - conj(a_n) z)`
    #[serde(rename = "h")]
    Riesz,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    pub value: Complex64,
    /// Bound on the truncation error, when the tail is known.
    pub error: Option<f64>,
}

/// `K_z(u) = (1 - conj(B(z)) B(u)) / (1 - conj(z) u)` with the truncated product.
pub fn kernel_eval(b: &TruncatedBlaschke, z: DiskPoint, u: DiskPoint) -> KernelValue {
    let bz = b.eval(z);
    let bu = b.eval(u);
    let denom = 1.0 - z.z().conj() * u.z();
    let value = (1.0 - bz.value.conj() * bu.value) / denom;
    let error = match (bz.tail_bound, bu.tail_bound) {
        (TailBound::Bound(tz), TailBound::Bound(tu)) => {
            let e = tz * (bu.value.norm() + tu) + bz.value.norm() * tu;
            Some(e.min(2.0) / denom.norm())
        }
        _ => None,
    };
    KernelValue { value, error }
}

/// `||K_z||_{H^2} = ((1 - |B(z)|^2) / (1 - |z|^2))^{1/2}`.
pub fn kernel_bound(b: &TruncatedBlaschke, z: DiskPoint) -> f64 {
    kernel_norm_at(b, z.z())
}

pub(crate) fn kernel_norm_at(b: &TruncatedBlaschke, z: Complex64) -> f64 {
    let bz = b.value_at(z).norm_sqr();
    ((1.0 - bz) / (1.0 - z.norm_sqr())).sqrt()
}

fn check_index(seq: &ZeroSequence, n: usize) -> Result<()> {
    if n == 0 || n > seq.len() {
        Err(LabError::IndexOutOfRange {
            index: n,
            max: seq.len(),
        })
    } else {
        Ok(())
    }
}

/// Orthonormal basis function `g_n(z)`, `1 <= n <= N`.
pub fn g_basis(seq: &ZeroSequence, n: usize, z: DiskPoint) -> Result<Complex64> {
    check_index(seq, n)?;
    let b = TruncatedBlaschke::new(seq.clone(), n)?;
    let (subproduct, _) = b.subproducts_with_derivs(z.z())[n - 1];
    let (a_bar, one_minus_sq) = b.factor_terms().nth(n - 1).unwrap();
    Ok(subproduct * one_minus_sq.sqrt() / (1.0 - a_bar * z.z()))
}

/// Riesz basis function `h_n(z)`, `1 <= n <= N`.
pub fn h_basis(seq: &ZeroSequence, n: usize, z: DiskPoint) -> Result<Complex64> {
    check_index(seq, n)?;
    let a_bar = seq.points()[n - 1].z().conj();
    Ok(seq.gaps()[n - 1].sqrt() / (1.0 - a_bar * z.z()))
}

/// A finite combination of basis functions of the model space.
#[derive(Debug, Clone)]
pub struct ModelFunction {
    coefficients: Vec<Complex64>,
    basis: BasisKind,
    product: TruncatedBlaschke,
    sqrt_weights: Vec<f64>,
}

impl ModelFunction {
    /// Uses the first `coefficients.len()` zeros of `zeros`.
    ///
    /// The Riesz basis is refused when the truncated uniform-separation constant of
    /// `zeros` is below [`RIESZ_SEPARATION_FLOOR`].
    pub fn new(
        coefficients: Vec<Complex64>,
        basis: BasisKind,
        zeros: ZeroSequence,
    ) -> Result<Self> {
        Self::with_floor(coefficients, basis, zeros, RIESZ_SEPARATION_FLOOR)
    }

    pub fn with_floor(
        coefficients: Vec<Complex64>,
        basis: BasisKind,
        zeros: ZeroSequence,
        floor: f64,
    ) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(LabError::domain(
                "a model function needs at least one coefficient",
            ));
        }
        if coefficients.len() > zeros.len() {
            return Err(LabError::domain(format!(
                "{} coefficients but only {} zeros",
                coefficients.len(),
                zeros.len()
            )));
        }
        if basis == BasisKind::Riesz {
            let constant = uniform_separation_constant(&zeros);
            if constant < floor {
                return Err(LabError::SeparationFloor { constant, floor });
            }
        }
        let sqrt_weights = match basis {
            BasisKind::Orthonormal => zeros
                .gaps()
                .iter()
                .map(|g| (g * (2.0 - g)).sqrt())
                .collect(),
            BasisKind::Riesz => zeros.gaps().iter().map(|g| g.sqrt()).collect(),
        };
        let product = TruncatedBlaschke::new(zeros, coefficients.len())?;
        Ok(ModelFunction {
            coefficients,
            basis,
            product,
            sqrt_weights,
        })
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn basis(&self) -> BasisKind {
        self.basis
    }

    pub fn zeros(&self) -> &ZeroSequence {
        self.product.zeros()
    }

    /// `(sum |c_n|^2)^{1/2}`.
    pub fn coefficient_norm(&self) -> f64 {
        self.coefficients
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn value_at(&self, z: Complex64) -> Complex64 {
        let a_bars = self.product.factor_terms().map(|(a_bar, _)| a_bar);
        match self.basis {
            BasisKind::Riesz => self
                .coefficients
                .iter()
                .zip(a_bars)
                .zip(&self.sqrt_weights)
                .map(|((c, a_bar), w)| c * w / (1.0 - a_bar * z))
                .collect::<CompensatedComplexSum>()
                .value(),
            BasisKind::Orthonormal => {
                let subs = self.product.subproducts_with_derivs(z);
                self.coefficients
                    .iter()
                    .zip(a_bars)
                    .zip(&self.sqrt_weights)
                    .zip(subs)
                    .map(|(((c, a_bar), w), (bn, _))| c * bn * w / (1.0 - a_bar * z))
                    .collect::<CompensatedComplexSum>()
                    .value()
            }
        }
    }

    /// Termwise derivative: for the orthonormal basis,
    /// `sum c_n B_n conj(a_n) w_n / (1 - conj(a_n) z)^2 + sum c_n B_n' w_n / (1 - conj(a_n) z)`.
    pub fn deriv_at(&self, z: Complex64) -> Complex64 {
        let a_bars = self.product.factor_terms().map(|(a_bar, _)| a_bar);
        match self.basis {
            BasisKind::Riesz => self
                .coefficients
                .iter()
                .zip(a_bars)
                .zip(&self.sqrt_weights)
                .map(|((c, a_bar), w)| {
                    let d = 1.0 - a_bar * z;
                    c * a_bar * w / (d * d)
                })
                .collect::<CompensatedComplexSum>()
                .value(),
            BasisKind::Orthonormal => {
                let subs = self.product.subproducts_with_derivs(z);
                let mut first = CompensatedComplexSum::new();
                let mut second = CompensatedComplexSum::new();
                for (((c, a_bar), w), (bn, dbn)) in self
                    .coefficients
                    .iter()
                    .zip(a_bars)
                    .zip(&self.sqrt_weights)
                    .zip(subs)
                {
                    let d = 1.0 - a_bar * z;
                    first.add(c * bn * a_bar * w / (d * d));
                    second.add(c * dbn * w / d);
                }
                first.value() + second.value()
            }
        }
    }

    /// The product whose model space contains this function.
    pub fn product(&self) -> &TruncatedBlaschke {
        &self.product
    }
}

/// `f(z) = sum c_n basis_n(z)`.
pub fn synth(f: &ModelFunction, z: DiskPoint) -> Complex64 {
    f.value_at(z.z())
}

/// `f'(z)` by the termwise expansion.
pub fn synth_deriv(f: &ModelFunction, z: DiskPoint) -> Complex64 {
    f.deriv_at(z.z())
}

/// Gram matrix `<basis_i, basis_j>` for `i, j <= count`, by extrapolated circle integrals.
pub fn gram_matrix(
    seq: &ZeroSequence,
    basis: BasisKind,
    count: usize,
    scheme: &HardyInnerProduct,
) -> Result<Vec<Vec<Complex64>>> {
    check_index(seq, count)?;
    let unit = |i: usize| {
        let mut c = vec![Complex64::new(0.0, 0.0); count];
        c[i] = Complex64::new(1.0, 0.0);
        ModelFunction::with_floor(c, basis, seq.clone(), 0.0)
    };
    let funcs = (0..count).map(unit).collect::<Result<Vec<_>>>()?;
    let mut gram = vec![vec![Complex64::new(0.0, 0.0); count]; count];
    for i in 0..count {
        for j in i..count {
            let v = scheme.inner(|z| funcs[i].value_at(z), |z| funcs[j].value_at(z));
            gram[i][j] = v;
            gram[j][i] = v.conj();
        }
    }
    Ok(gram)
}

/// Empirical ratio `||f||^2_{H^2} / sum |c_n|^2`.
pub fn frame_ratio(f: &ModelFunction, scheme: &HardyInnerProduct) -> f64 {
    let norm_sq = scheme.inner(|z| f.value_at(z), |z| f.value_at(z)).re;
    norm_sq / f.coefficient_norm().powi(2)
}

/// `samples` coefficient vectors of length `count`, entries uniform in the square
/// `[-1, 1]^2`, drawn from a ChaCha8 stream seeded with `seed`.
pub fn random_coefficients(seed: u64, samples: usize, count: usize) -> Vec<Vec<Complex64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            (0..count)
                .map(|_| Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)))
                .collect()
        })
        .collect()
}
