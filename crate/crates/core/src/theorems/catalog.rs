use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{check_exponent, check_weight, LabError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    /// Aleman–Vukotić, classical weights.
    AV,
    T8,
    T9,
    T10,
}

impl TheoremId {
    pub const ALL: [TheoremId; 11] = [
        TheoremId::T1,
        TheoremId::T2,
        TheoremId::T3,
        TheoremId::T4,
        TheoremId::T5,
        TheoremId::T6,
        TheoremId::T7,
        TheoremId::AV,
        TheoremId::T8,
        TheoremId::T9,
        TheoremId::T10,
    ];

    pub fn spec(self) -> &'static TheoremSpec {
        CATALOG
            .iter()
            .find(|s| s.id == self)
            .expect("catalog covers every id")
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for TheoremId {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        TheoremId::ALL
            .into_iter()
            .find(|id| id.to_string() == upper)
            .ok_or_else(|| {
                LabError::Parse(format!("unknown theorem id '{s}' (expected T1..T10 or AV)"))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HypothesisClass {
    AnyB,
    Summability,
    UniformlyDiscrete,
    UniformlySeparated,
    Stolz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// Conditions on the zeros give `f' ∈ A^p_α` for every `f` in the model space.
    ZerosImplyMembership,
    /// `B' ∈ A^p_α` forces a summability condition on the zeros.
    MembershipImpliesZeros,
    Iff,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremSpec {
    pub id: TheoremId,
    pub hypothesis_class: HypothesisClass,
    /// Summability exponent, where the theorem has one.
    pub beta_formula: Option<&'static str>,
    pub direction: Direction,
    pub scope: &'static str,
}

use Direction::*;
use HypothesisClass::*;

pub static CATALOG: [TheoremSpec; 11] = [
    TheoremSpec {
        id: TheoremId::T1,
        hypothesis_class: UniformlyDiscrete,
        beta_formula: Some("2 - p + alpha"),
        direction: MembershipImpliesZeros,
        scope: "alpha > -1, alpha + 1 < p < alpha + 2",
    },
    TheoremSpec {
        id: TheoremId::T2,
        hypothesis_class: AnyB,
        beta_formula: Some("(2 - p + alpha) / (p - 1 - alpha)"),
        direction: MembershipImpliesZeros,
        scope: "alpha > -1, 3/2 + alpha < p < 2 + alpha",
    },
    TheoremSpec {
        id: TheoremId::T3,
        hypothesis_class: AnyB,
        beta_formula: None,
        direction: ZerosImplyMembership,
        scope: "alpha > 1, 0 < p < 4/3 + 2 alpha/3",
    },
    TheoremSpec {
        id: TheoremId::T4,
        hypothesis_class: AnyB,
        beta_formula: None,
        direction: ZerosImplyMembership,
        scope: "alpha > -1, 0 < p < 2/3 + 2 alpha/3",
    },
    TheoremSpec {
        id: TheoremId::T5,
        hypothesis_class: AnyB,
        beta_formula: None,
        direction: ZerosImplyMembership,
        scope: "alpha > 0, 0 < p < 1 + alpha/2",
    },
    TheoremSpec {
        id: TheoremId::T6,
        hypothesis_class: Summability,
        beta_formula: Some("p / (2 - p)"),
        direction: ZerosImplyMembership,
        scope: "-1 < alpha <= 0, 2/3 + 2 alpha/3 <= p < 1 + alpha",
    },
    TheoremSpec {
        id: TheoremId::T7,
        hypothesis_class: Summability,
        beta_formula: Some("(4 - 3p + 2 alpha) / p"),
        direction: ZerosImplyMembership,
        scope: "0 < alpha <= 1, 1 + alpha/2 < p < 1 + alpha",
    },
    TheoremSpec {
        id: TheoremId::AV,
        hypothesis_class: UniformlySeparated,
        beta_formula: Some("(4 - 3p + 2 alpha) / p"),
        direction: Iff,
        scope: "alpha > -1, p > 1, 1 + alpha < p < 4/3 + 2 alpha/3",
    },
    TheoremSpec {
        id: TheoremId::T8,
        hypothesis_class: UniformlySeparated,
        beta_formula: Some("p / (2 - p)"),
        direction: ZerosImplyMembership,
        scope: "-1 < alpha <= 0, 1 + alpha <= p < 1 + alpha/2",
    },
    TheoremSpec {
        id: TheoremId::T9,
        hypothesis_class: UniformlySeparated,
        beta_formula: Some("(4 - 3p + 2 alpha) / (2 - p)"),
        direction: ZerosImplyMembership,
        scope: "-1 < alpha <= 0, 1 + alpha/2 < p < min(1, 4/3 + 2 alpha/3)",
    },
    TheoremSpec {
        id: TheoremId::T10,
        hypothesis_class: Stolz,
        beta_formula: None,
        direction: ZerosImplyMembership,
        scope: "alpha > -1, 0 < p < 1 + 2 alpha/3",
    },
];

/// `(2 + 2α)/3`
pub(crate) fn two_thirds_line(alpha: f64) -> f64 {
    (2.0 + 2.0 * alpha) / 3.0
}

/// `(4 + 2α)/3`
pub(crate) fn four_thirds_line(alpha: f64) -> f64 {
    (4.0 + 2.0 * alpha) / 3.0
}

/// `1 + α/2`
pub(crate) fn half_line(alpha: f64) -> f64 {
    1.0 + alpha / 2.0
}

/// Whether `(α, p)` lies in the scope of theorem `id`, with the printed strictness.
pub fn theorem_scope(id: TheoremId, alpha: f64, p: f64) -> Result<bool> {
    check_weight(alpha)?;
    check_exponent(p)?;
    Ok(match id {
        TheoremId::T1 => alpha + 1.0 < p && p < alpha + 2.0,
        TheoremId::T2 => 1.5 + alpha < p && p < 2.0 + alpha,
        TheoremId::T3 => alpha > 1.0 && p < four_thirds_line(alpha),
        TheoremId::T4 => p < two_thirds_line(alpha),
        TheoremId::T5 => alpha > 0.0 && p < half_line(alpha),
        TheoremId::T6 => alpha <= 0.0 && two_thirds_line(alpha) <= p && p < 1.0 + alpha,
        TheoremId::T7 => alpha > 0.0 && alpha <= 1.0 && half_line(alpha) < p && p < 1.0 + alpha,
        TheoremId::AV => p > 1.0 && 1.0 + alpha < p && p < four_thirds_line(alpha),
        TheoremId::T8 => alpha <= 0.0 && 1.0 + alpha <= p && p < half_line(alpha),
        TheoremId::T9 => {
            alpha <= 0.0 && half_line(alpha) < p && p < four_thirds_line(alpha).min(1.0)
        }
        TheoremId::T10 => p < 1.0 + 2.0 * alpha / 3.0,
    })
}

/// Summability exponent `β` in `Σ (1-|a_n|)^β < ∞` for theorem `id` at `(α, p)`.
///
/// `None` for theorems without a summability condition.
pub fn required_beta(id: TheoremId, alpha: f64, p: f64) -> Result<Option<f64>> {
    if !theorem_scope(id, alpha, p)? {
        return Err(LabError::OutOfScope {
            theorem: id.to_string(),
            alpha,
            p,
        });
    }
    Ok(match id {
        TheoremId::T1 => Some(2.0 - p + alpha),
        TheoremId::T2 => Some((2.0 - p + alpha) / (p - 1.0 - alpha)),
        TheoremId::T6 | TheoremId::T8 => Some(p / (2.0 - p)),
        TheoremId::T7 | TheoremId::AV => Some((4.0 - 3.0 * p + 2.0 * alpha) / p),
        TheoremId::T9 => Some((4.0 - 3.0 * p + 2.0 * alpha) / (2.0 - p)),
        TheoremId::T3 | TheoremId::T4 | TheoremId::T5 | TheoremId::T10 => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn scope_examples() {
        assert!(theorem_scope(TheoremId::T4, 0.0, 0.5).unwrap());
        assert!(!theorem_scope(TheoremId::T1, 0.0, 0.5).unwrap());
        assert!(theorem_scope(TheoremId::T3, 2.0, 2.0).unwrap());
        assert!(theorem_scope(TheoremId::T1, 0.0, -1.0).is_err());
        assert!(theorem_scope(TheoremId::T1, -1.0, 1.0).is_err());
    }

    #[test]
    fn printed_strictness() {
        // p = 1 + α: T8 ("1 + α <= p") but not T6 ("p < 1 + α")
        assert!(theorem_scope(TheoremId::T8, -0.5, 0.5).unwrap());
        assert!(!theorem_scope(TheoremId::T6, -0.5, 0.5).unwrap());
        // p = 2/3 + 2α/3: T6 ("<=") but not T4 ("<")
        assert!(theorem_scope(TheoremId::T6, -0.25, 0.5).unwrap());
        assert!(!theorem_scope(TheoremId::T4, -0.25, 0.5).unwrap());
        // α = 0 belongs to T6/T8/T9 ("α <= 0"), not T5/T7 ("α > 0")
        assert!(!theorem_scope(TheoremId::T5, 0.0, 0.5).unwrap());
        assert!(!theorem_scope(TheoremId::T7, 0.0, 0.9).unwrap());
        assert!(theorem_scope(TheoremId::T6, 0.0, 0.8).unwrap());
    }

    #[test]
    fn beta_examples() {
        assert_abs_diff_eq!(
            required_beta(TheoremId::T1, 0.0, 1.5).unwrap().unwrap(),
            0.5
        );
        assert_abs_diff_eq!(
            required_beta(TheoremId::T2, 0.0, 1.75).unwrap().unwrap(),
            1.0 / 3.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            required_beta(TheoremId::T9, -0.5, 0.8).unwrap().unwrap(),
            0.5,
            epsilon = 1e-15
        );
        assert_eq!(required_beta(TheoremId::T4, 0.0, 0.5).unwrap(), None);
        assert!(matches!(
            required_beta(TheoremId::T1, 0.0, 0.5),
            Err(LabError::OutOfScope { .. })
        ));
    }

    #[test]
    fn ids_round_trip() {
        for id in TheoremId::ALL {
            assert_eq!(id.to_string().parse::<TheoremId>().unwrap(), id);
            assert_eq!(id.spec().id, id);
            assert_eq!(
                id.spec().beta_formula.is_some(),
                !matches!(
                    id,
                    TheoremId::T3 | TheoremId::T4 | TheoremId::T5 | TheoremId::T10
                )
            );
        }
        assert_eq!("t10".parse::<TheoremId>().unwrap(), TheoremId::T10);
        assert!("T11".parse::<TheoremId>().is_err());
    }

    #[test]
    fn t2_exponent_in_unit_interval_on_grid() {
        for i in 1..60 {
            let alpha = -0.99 + i as f64 * 0.1;
            for j in 1..50 {
                let p = 1.5 + alpha + j as f64 * 0.01;
                if theorem_scope(TheoremId::T2, alpha, p).unwrap() {
                    let beta = required_beta(TheoremId::T2, alpha, p).unwrap().unwrap();
                    assert!(beta > 0.0 && beta < 1.0, "({alpha}, {p}) -> {beta}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn t4_scope_is_initial_interval(alpha in -0.99f64..4.0, p in 0.01f64..6.0, q in 0.01f64..6.0) {
            let (lo, hi) = if p < q { (p, q) } else { (q, p) };
            if theorem_scope(TheoremId::T4, alpha, hi).unwrap() {
                prop_assert!(theorem_scope(TheoremId::T4, alpha, lo).unwrap());
            }
        }

        #[test]
        fn beta_defined_exactly_where_formula_is(alpha in -0.99f64..3.0, p in 0.01f64..5.0) {
            for id in TheoremId::ALL {
                if theorem_scope(id, alpha, p).unwrap() {
                    let beta = required_beta(id, alpha, p).unwrap();
                    prop_assert_eq!(beta.is_some(), id.spec().beta_formula.is_some());
                    if let Some(b) = beta {
                        prop_assert!(b > 0.0);
                    }
                }
            }
        }
    }
}
