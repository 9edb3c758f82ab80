//! Time-independent background metrics given as expressions.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expr::{Bound, Chart, Scope};
use crate::mat3::{SymMat3, SYM_PAIRS};
use crate::tolerance::ToleranceProfile;

use super::tensor::{BackgroundPoint, MetricJet, ScalarJet};

/// An expression with its first and second derivative expressions prepared.
#[derive(Clone, Debug)]
pub struct ExprJet {
    pub f: Bound,
    pub d1: [Bound; 3],
    pub d2: [[Bound; 3]; 3],
    constant: Option<f64>,
}

impl ExprJet {
    pub fn new(f: Bound) -> Self {
        let d1 = [f.diff(0), f.diff(1), f.diff(2)];
        let d2 = [0, 1, 2].map(|k| [0, 1, 2].map(|l| if l >= k { d1[k].diff(l) } else { d1[l].diff(k) }));
        let constant = f.expr.constant();
        Self { f, d1, d2, constant }
    }

    pub fn eval(&self, x: [f64; 3]) -> Result<ScalarJet> {
        if let Some(c) = self.constant {
            return Ok(ScalarJet { value: c, ..Default::default() });
        }
        let mut jet = ScalarJet { value: self.f.eval(x)?, ..Default::default() };
        for k in 0..3 {
            jet.d1[k] = self.d1[k].eval(x)?;
            for l in k..3 {
                let v = self.d2[k][l].eval(x)?;
                jet.d2[k][l] = v;
                jet.d2[l][k] = v;
            }
        }
        Ok(jet)
    }

    /// Value and first derivatives only.
    pub fn eval1(&self, x: [f64; 3]) -> Result<(f64, [f64; 3])> {
        if let Some(c) = self.constant {
            return Ok((c, [0.0; 3]));
        }
        Ok((self.f.eval(x)?, [self.d1[0].eval(x)?, self.d1[1].eval(x)?, self.d1[2].eval(x)?]))
    }
}

/// Background metric of one sector: six expressions in packed order.
#[derive(Clone, Debug)]
pub struct BackgroundGeometry {
    pub components: [ExprJet; 6],
}

impl BackgroundGeometry {
    pub fn from_sources(sources: [&str; 6], scope: Arc<Scope>) -> Result<Self> {
        let mut out = Vec::with_capacity(6);
        for src in sources {
            out.push(ExprJet::new(Bound::parse(src, scope.clone())?));
        }
        Ok(Self { components: out.try_into().expect("six components") })
    }

    /// Flat metric in the named chart, when the chart is one we know.
    pub fn flat_sources(chart: &Chart) -> Option<[String; 6]> {
        let c = &chart.coords;
        let s = |v: [&str; 6]| v.map(String::from);
        match chart.name.as_str() {
            "cartesian" => Some(s(["1", "0", "0", "1", "0", "1"])),
            "spherical" => Some([
                "1".into(),
                "0".into(),
                "0".into(),
                format!("{}^2", c[0]),
                "0".into(),
                format!("{r}^2*sin({th})^2", r = c[0], th = c[1]),
            ]),
            "cylindrical" => Some(["1".into(), "0".into(), "0".into(), format!("{}^2", c[0]), "0".into(), "1".into()]),
            _ => None,
        }
    }

    pub fn flat(chart: &Chart, scope: Arc<Scope>) -> Result<Self> {
        let src = Self::flat_sources(chart).ok_or_else(|| {
            Error::config("background", format!("no default flat metric for chart `{}`; give background.* explicitly", chart.name))
        })?;
        Self::from_sources(src.each_ref().map(String::as_str), scope)
    }

    pub fn jet(&self, x: [f64; 3]) -> Result<MetricJet> {
        let mut jet = MetricJet::default();
        for (slot, c) in self.components.iter().enumerate() {
            let s = c.eval(x)?;
            jet.value.0[slot] = s.value;
            for k in 0..3 {
                jet.d1[k].0[slot] = s.d1[k];
                for l in 0..3 {
                    jet.d2[k][l].0[slot] = s.d2[k][l];
                }
            }
        }
        Ok(jet)
    }

    pub fn at(&self, x: [f64; 3], tol: &ToleranceProfile) -> Result<BackgroundPoint> {
        let jet = self.jet(x)?;
        let inv = positive_inverse(&jet.value, tol)?;
        Ok(BackgroundPoint::from_jet(&jet, &inv))
    }
}

/// Inverse of a metric that must be positive definite.
pub fn positive_inverse(g: &SymMat3, tol: &ToleranceProfile) -> Result<SymMat3> {
    let min = crate::mat3::eig_sym3(g)?.values[2];
    if !(min > tol.spd * g.trace().abs()) {
        return Err(Error::NotPositiveDefinite { min_eigenvalue: min });
    }
    g.inverse(tol)
}

/// Packed index of the component named like `11`, `23`.
pub fn component_slot(name: &str) -> Option<usize> {
    let b = name.as_bytes();
    if b.len() != 2 {
        return None;
    }
    let (i, j) = ((b[0] as char).to_digit(10)?, (b[1] as char).to_digit(10)?);
    SYM_PAIRS.iter().position(|&(a, c)| (a + 1, c + 1) == (i as usize, j as usize))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spherical_flat_christoffels() {
        let chart = Chart::spherical((0.5, 2.0), (0.3, 2.8), (0.0, 1.0));
        let scope = Arc::new(chart.scope());
        let bg = BackgroundGeometry::flat(&chart, scope).unwrap();
        let (r, th) = (1.3f64, 0.9f64);
        let p = bg.at([r, th, 0.4], &ToleranceProfile::default()).unwrap();
        let g = &p.gamma;
        let eps = 1e-12;
        assert!((g[0].get(1, 1) + r).abs() < eps);
        assert!((g[0].get(2, 2) + r * th.sin().powi(2)).abs() < eps);
        assert!((g[1].get(0, 1) - 1.0 / r).abs() < eps);
        assert!((g[1].get(2, 2) + th.sin() * th.cos()).abs() < eps);
        assert!((g[2].get(0, 2) - 1.0 / r).abs() < eps);
        assert!((g[2].get(1, 2) - th.cos() / th.sin()).abs() < eps);
        assert!(g[0].get(0, 0).abs() < eps && g[1].get(1, 1).abs() < eps);
        // flat: Riemann vanishes
        assert!(p.riemann.iter().flatten().flatten().flatten().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn unknown_chart_needs_explicit_background() {
        let mut chart = Chart::cartesian(-1.0, 1.0);
        chart.name = "custom".into();
        assert!(BackgroundGeometry::flat(&chart, Arc::new(chart.scope())).is_err());
    }

    #[test]
    fn component_names() {
        assert_eq!(component_slot("11"), Some(0));
        assert_eq!(component_slot("23"), Some(4));
        assert_eq!(component_slot("21"), None);
        assert_eq!(component_slot("1"), None);
    }
}
