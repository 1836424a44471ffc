//! Blaschke products, model spaces and weighted Bergman norms.
//!
//! The crate evaluates Blaschke products and their derivatives from zero
//! sequences, builds functions in the model space `(BH^2)^⊥`, integrates
//! weighted area norms over the disk, and checks derivative-membership
//! statements in `A^p_α` against the numerics.

pub mod blaschke;
pub mod error;
pub mod geometry;
pub mod modelspace;
pub mod numeric;
pub mod quadrature;
pub mod sequences;
pub mod theorems;

pub use blaschke::{
    factor_deriv, factor_eval, product_deriv, product_eval, subproduct_eval, ProductValue,
    TailBound, TruncatedBlaschke,
};
pub use error::{LabError, Result};
pub use geometry::{pseudo_disk, rho, stolz_contains, DiskPoint, EuclideanDisk, StolzDomain};
pub use modelspace::{
    frame_ratio, g_basis, gram_matrix, h_basis, kernel_bound, kernel_eval, random_coefficients,
    synth, synth_deriv, BasisKind, KernelValue, ModelFunction,
};
pub use quadrature::{
    ahern_integral, area_norm, circle_mean, classify_growth, lemma_integral, lemma_regime,
    lemma_sweep, Growth, GrowthVerdict, HardyInnerProduct, LemmaSweep, QuadratureResult, Regime,
    RegimeVerdict,
};
pub use sequences::{
    beta_sum, blaschke_sum, gen_geometric, gen_power, gen_stolz, separation_constant,
    uniform_separation_constant, Convergence, ConvergenceVerdict, PhaseRule, SequenceLaw,
    ZeroSequence,
};
pub use theorems::{
    region_classify, required_beta, theorem_scope, verify, Consistency, Region, ScopeVerdict,
    TheoremId, VerificationReport, VerifyConfig,
};

pub use num_complex::Complex64;
