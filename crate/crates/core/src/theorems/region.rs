use std::fmt;

use serde::{Deserialize, Serialize};

use super::catalog::{
    four_thirds_line, half_line, required_beta, theorem_scope, two_thirds_line, TheoremId,
};
use crate::error::{check_exponent, check_weight, LabError, Result};

/// Region labels of the `(α, p)` parameter plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Region {
    /// Every Blaschke product: union of the T3, T4 and T5 scopes.
    A,
    /// T6 scope.
    B,
    /// T7 scope.
    C,
    /// Aleman–Vukotić scope.
    D,
    /// T8 scope.
    E,
    /// T9 scope.
    F,
    /// `4/3 + 2α/3 <= p < 2 + α`, where nothing is known.
    Open,
    None,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Applicable {
    pub theorem: TheoremId,
    pub beta: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScopeVerdict {
    pub alpha: f64,
    pub p: f64,
    /// Never empty; `[None]` when no label applies.
    pub regions: Vec<Region>,
    pub applicable: Vec<Applicable>,
}

impl ScopeVerdict {
    /// Labels joined with `+`, e.g. `"A"` or `"None"`.
    pub fn label(&self) -> String {
        self.regions
            .iter()
            .map(Region::to_string)
            .collect::<Vec<_>>()
            .join("+")
    }

    pub const CSV_HEADER: [&'static str; 5] = ["alpha", "p", "regions", "theorems", "betas"];

    pub fn csv_record(&self) -> [String; 5] {
        let theorems = self
            .applicable
            .iter()
            .map(|a| a.theorem.to_string())
            .collect::<Vec<_>>();
        let betas = self
            .applicable
            .iter()
            .map(|a| a.beta.map_or_else(|| "-".to_string(), |b| format!("{b}")))
            .collect::<Vec<_>>();
        [
            format!("{}", self.alpha),
            format!("{}", self.p),
            self.label(),
            theorems.join(";"),
            betas.join(";"),
        ]
    }
}

impl fmt::Display for ScopeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "(alpha, p) = ({}, {})", self.alpha, self.p)?;
        writeln!(f, "regions   : {}", self.label())?;
        if self.applicable.is_empty() {
            writeln!(f, "theorems  : none")?;
        }
        for a in &self.applicable {
            match a.beta {
                Some(b) => writeln!(f, "theorem   : {:<4} beta = {b}", a.theorem.to_string())?,
                None => writeln!(
                    f,
                    "theorem   : {:<4} no summability condition",
                    a.theorem.to_string()
                )?,
            }
        }
        Ok(())
    }
}

/// Region labels and applicable theorems at `(α, p)`.
pub fn region_classify(alpha: f64, p: f64) -> Result<ScopeVerdict> {
    check_weight(alpha)?;
    check_exponent(p)?;
    let in_scope = |id| theorem_scope(id, alpha, p).expect("point validated");
    let mut regions = Vec::new();
    if in_scope(TheoremId::T3) || in_scope(TheoremId::T4) || in_scope(TheoremId::T5) {
        regions.push(Region::A);
    }
    for (id, region) in [
        (TheoremId::T6, Region::B),
        (TheoremId::T7, Region::C),
        (TheoremId::AV, Region::D),
        (TheoremId::T8, Region::E),
        (TheoremId::T9, Region::F),
    ] {
        if in_scope(id) {
            regions.push(region);
        }
    }
    if four_thirds_line(alpha) <= p && p < 2.0 + alpha {
        regions.push(Region::Open);
    }
    if regions.is_empty() {
        regions.push(Region::None);
    }
    let applicable = TheoremId::ALL
        .into_iter()
        .filter(|&id| in_scope(id))
        .map(|id| Applicable {
            theorem: id,
            beta: required_beta(id, alpha, p).expect("in scope"),
        })
        .collect();
    Ok(ScopeVerdict {
        alpha,
        p,
        regions,
        applicable,
    })
}

/// Boundary curves of the region diagram, as `(name, p(α))`.
pub fn boundary_curves(alpha: f64) -> [(&'static str, f64); 5] {
    [
        ("p_2_3", two_thirds_line(alpha)),
        ("p_1_half", half_line(alpha)),
        ("p_1_alpha", 1.0 + alpha),
        ("p_4_3", four_thirds_line(alpha)),
        ("p_2_alpha", 2.0 + alpha),
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridCell {
    pub alpha: f64,
    pub p: f64,
    pub label: String,
    /// Values of [`boundary_curves`] at `alpha`.
    pub boundaries: [f64; 5],
}

/// Inclusive range `lo, lo + step, ...` up to `hi`, computed by index to avoid drift.
fn axis(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    (0..count).map(|i| lo + i as f64 * step).collect()
}

/// Region labels on the rectangular grid `[α_lo, α_hi] × [p_lo, p_hi]` with spacing `step`.
pub fn region_grid(alpha: (f64, f64), p: (f64, f64), step: f64) -> Result<Vec<GridCell>> {
    if !(step.is_finite() && step > 0.0) {
        return Err(LabError::domain("grid step must be positive"));
    }
    if !(alpha.0 <= alpha.1 && p.0 <= p.1) {
        return Err(LabError::domain("empty grid range"));
    }
    check_weight(alpha.0)?;
    check_exponent(p.0)?;
    let alphas = axis(alpha.0, alpha.1, step);
    let ps = axis(p.0, p.1, step);
    let mut cells = Vec::with_capacity(alphas.len() * ps.len());
    for &a in &alphas {
        let boundaries = boundary_curves(a).map(|(_, v)| v);
        for &q in &ps {
            cells.push(GridCell {
                alpha: a,
                p: q,
                label: region_classify(a, q)?.label(),
                boundaries,
            });
        }
    }
    Ok(cells)
}
