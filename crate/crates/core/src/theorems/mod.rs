//! Theorem scopes in the `(α, p)` plane, the region taxonomy, and the harness
//! that checks a theorem's hypotheses on a zero sequence and its conclusion
//! against the numerics.

mod catalog;
mod region;
mod verify;

pub use catalog::{
    required_beta, theorem_scope, Direction, HypothesisClass, TheoremId, TheoremSpec, CATALOG,
};
pub use region::{
    boundary_curves, region_classify, region_grid, Applicable, GridCell, Region, ScopeVerdict,
};
pub use verify::{
    verify, CircleMeanCheck, Consistency, HypothesisCheck, VerificationReport, VerifyConfig,
    CIRCLE_MEAN_SLACK, TRUNCATION_CAVEAT, VIOLATION_CAVEAT,
};
