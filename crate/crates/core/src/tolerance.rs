use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// All numerical thresholds used by the engine, threaded through every kernel.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToleranceProfile {
    /// `k` of the closed-form root counts as zero below `k_zero·max(A1², 1)`.
    pub k_zero: f64,
    /// Positivity floor for eigenvalues, relative to the trace.
    pub spd: f64,
    /// Closed-form denominator floor, relative to `S1³`.
    pub denominator: f64,
    /// `|det m| ≤ singular·‖m‖³` is treated as singular.
    pub singular: f64,
    /// Rotation orthogonality and `det R = 1`.
    pub rotation: f64,
    /// Asymmetry allowed in the raw mean metric product.
    pub symmetrization: f64,
    /// Asymmetry allowed in the lowered conformal trace-free curvature.
    pub a_bar_symmetry: f64,
    /// Spatial mean-property diagnostic threshold.
    pub mean_property: f64,
    /// Four-dimensional mean property.
    pub mean_4d: f64,
    /// Relation between the two sector shifts.
    pub shift_identity: f64,
    /// Threshold reported for the conformal Ricci identity residual.
    pub ricci_identity: f64,
}

impl Default for ToleranceProfile {
    fn default() -> Self {
        Self {
            k_zero: 1e-28,
            spd: 1e-12,
            denominator: 1e-14,
            singular: 1e-14,
            rotation: 1e-10,
            symmetrization: 1e-10,
            a_bar_symmetry: 1e-10,
            mean_property: 1e-9,
            mean_4d: 1e-9,
            shift_identity: 1e-12,
            ricci_identity: 1e-6,
        }
    }
}

impl ToleranceProfile {
    pub const NAMES: [&'static str; 11] = [
        "k_zero",
        "spd",
        "denominator",
        "singular",
        "rotation",
        "symmetrization",
        "a_bar_symmetry",
        "mean_property",
        "mean_4d",
        "shift_identity",
        "ricci_identity",
    ];

    fn slot(&mut self, name: &str) -> Option<&mut f64> {
        Some(match name {
            "k_zero" => &mut self.k_zero,
            "spd" => &mut self.spd,
            "denominator" => &mut self.denominator,
            "singular" => &mut self.singular,
            "rotation" => &mut self.rotation,
            "symmetrization" => &mut self.symmetrization,
            "a_bar_symmetry" => &mut self.a_bar_symmetry,
            "mean_property" => &mut self.mean_property,
            "mean_4d" => &mut self.mean_4d,
            "shift_identity" => &mut self.shift_identity,
            "ricci_identity" => &mut self.ricci_identity,
            _ => return None,
        })
    }

    /// Overrides one named tolerance. Values must be finite and non-negative.
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        let key = format!("options.tol.{name}");
        if !(value.is_finite() && value >= 0.0) {
            return Err(Error::config(key, format!("tolerance must be finite and >= 0, got {value}")));
        }
        let slot = self.slot(name).ok_or_else(|| Error::config(key, "unknown key"))?;
        *slot = value;
        Ok(())
    }

    /// `(name, value)` pairs in a fixed order.
    pub fn entries(&self) -> Vec<(&'static str, f64)> {
        let mut copy = self.clone();
        Self::NAMES.iter().map(|&n| (n, *copy.slot(n).unwrap())).collect()
    }
}
