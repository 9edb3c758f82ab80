use serde::{Deserialize, Serialize};

use super::Scope;
use crate::error::{Error, Result};

/// Coordinate chart on the spatial slice.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Chart {
    pub name: String,
    pub coords: [String; 3],
    pub lower: [f64; 3],
    pub upper: [f64; 3],
    /// Coordinates assumed strictly positive.
    pub positive: [bool; 3],
}

impl Chart {
    pub fn cartesian(lower: f64, upper: f64) -> Self {
        Self {
            name: "cartesian".into(),
            coords: ["x".into(), "y".into(), "z".into()],
            lower: [lower; 3],
            upper: [upper; 3],
            positive: [false; 3],
        }
    }

    pub fn spherical(r: (f64, f64), th: (f64, f64), ph: (f64, f64)) -> Self {
        Self {
            name: "spherical".into(),
            coords: ["r".into(), "th".into(), "ph".into()],
            lower: [r.0, th.0, ph.0],
            upper: [r.1, th.1, ph.1],
            positive: [true, true, false],
        }
    }

    pub fn scope(&self) -> Scope {
        Scope { coords: self.coords.clone(), params: Vec::new() }
    }

    /// Whether `x` is admissible for coordinate `axis`: positivity flags, and
    /// the polar axis of a spherical chart stays inside (0, π).
    pub fn admits(&self, axis: usize, x: f64) -> bool {
        if self.positive[axis] && x <= 0.0 {
            return false;
        }
        if self.name == "spherical" && axis == 1 && x >= std::f64::consts::PI {
            return false;
        }
        x.is_finite()
    }

    pub fn validate(&self) -> Result<()> {
        if self.name.trim().is_empty() {
            return Err(Error::config("chart.name", "chart name must not be empty"));
        }
        for (i, c) in self.coords.iter().enumerate() {
            let valid = c.chars().next().is_some_and(|ch| ch.is_ascii_alphabetic() || ch == '_')
                && c.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '_');
            if !valid || c == "pi" {
                return Err(Error::config("chart.coordinates", format!("`{c}` is not a valid coordinate name")));
            }
            if self.coords[..i].contains(c) {
                return Err(Error::config("chart.coordinates", format!("coordinate `{c}` appears twice")));
            }
        }
        for axis in 0..3 {
            let (lo, hi) = (self.lower[axis], self.upper[axis]);
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return Err(Error::config("chart.lower", format!("bounds of `{}` must satisfy lower <= upper", self.coords[axis])));
            }
            if !self.admits(axis, lo) || !self.admits(axis, hi) {
                return Err(Error::config(
                    "chart.lower",
                    format!("bounds [{lo}, {hi}] of `{}` include a coordinate singularity", self.coords[axis]),
                ));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singular_bounds_are_rejected() {
        assert!(Chart::cartesian(-1.0, 1.0).validate().is_ok());
        assert!(Chart::spherical((0.5, 2.0), (0.3, 2.8), (0.0, 1.0)).validate().is_ok());
        assert!(Chart::spherical((0.0, 2.0), (0.3, 2.8), (0.0, 1.0)).validate().is_err());
        assert!(Chart::spherical((0.5, 2.0), (0.3, 3.2), (0.0, 1.0)).validate().is_err());
        let mut c = Chart::cartesian(-1.0, 1.0);
        c.coords[1] = "x".into();
        assert!(c.validate().is_err());
    }
}
