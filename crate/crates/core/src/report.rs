//! Validation report and human-readable summaries.

use std::fmt::{self, Write};

use serde::{Deserialize, Serialize};

use crate::config::Sector;
use crate::error::Result;
use crate::mat3::{Mat3, SymMat3, Vec3};
use crate::pipeline::DecompositionResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "info",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub check: String,
    pub value: Option<f64>,
    pub tolerance: Option<f64>,
    pub status: Status,
    pub note: String,
}

impl ReportEntry {
    /// A thresholded check; passes when `value ≤ tolerance`.
    pub fn check(name: &str, value: f64, tolerance: f64) -> Self {
        let status = if value <= tolerance { Status::Pass } else { Status::Fail };
        Self { check: name.into(), value: Some(value), tolerance: Some(tolerance), status, note: String::new() }
    }

    pub fn info(name: &str, value: Option<f64>, note: &str) -> Self {
        Self { check: name.into(), value, tolerance: None, status: Status::Info, note: note.into() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub entries: Vec<ReportEntry>,
}

impl ValidationReport {
    pub fn push(&mut self, e: ReportEntry) {
        self.entries.push(e);
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportEntry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn get(&self, check: &str) -> Option<&ReportEntry> {
        self.entries.iter().find(|e| e.check == check)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let value = e.value.map_or_else(|| "-".to_string(), |v| format!("{v:.3e}"));
            let tol = e.tolerance.map_or_else(String::new, |t| format!(" (tol {t:.1e})"));
            write!(f, "{:<4} {:<44} {value}{tol}", e.status.to_string(), e.check)?;
            if !e.note.is_empty() {
                write!(f, "  {}", e.note)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn num(x: f64) -> String {
    // normalize -0 and pad the exponent so columns line up
    let s = format!("{:.11e}", if x == 0.0 { 0.0 } else { x });
    let (m, e) = s.split_once('e').expect("exponent");
    let e: i32 = e.parse().expect("integer exponent");
    format!("{:>21}", format!("{m}e{e:+03}"))
}

fn row(out: &mut String, label: &str, values: &[f64]) {
    let _ = write!(out, "  {label:<12}");
    for v in values {
        out.push_str(&num(*v));
    }
    out.push('\n');
}

fn sym(out: &mut String, label: &str, m: &SymMat3) {
    row(out, label, &m.0);
}

fn mat(out: &mut String, label: &str, m: &Mat3) {
    for (i, r) in m.0.iter().enumerate() {
        row(out, if i == 0 { label } else { "" }, r);
    }
}

fn vec(out: &mut String, label: &str, v: &Vec3) {
    row(out, label, &v.0);
}

/// Table of the main variables at grid index `at`, one block per sector in
/// g, f, h order. Symmetric tensors list components 11, 12, 13, 22, 23, 33.
pub fn summarize(result: &DecompositionResult, sectors: &[Sector], at: [usize; 3]) -> Result<String> {
    let i = result.point_index(at)?;
    let p = &result.point_results[i];
    let x = result.coords[i];
    let mut out = String::new();
    let c = &result.chart.coords;
    let _ = writeln!(
        out,
        "point {at:?}: {}={:.6}, {}={:.6}, {}={:.6}  (chart {}, sqrt {})",
        c[0], x[0], c[1], x[1], c[2], x[2], result.chart.name, result.options.sqrt_algorithm
    );
    let mut sorted = sectors.to_vec();
    sorted.sort();
    sorted.dedup();
    for s in sorted {
        let _ = writeln!(out, "[{s}]");
        match s {
            Sector::G | Sector::F => {
                let d = if s == Sector::G { &p.g } else { &p.f };
                let (phi, lam) = if s == Sector::G { (p.ansatz.phi_g, p.ansatz.g_lam) } else { (p.ansatz.phi_f, p.ansatz.f_lam) };
                row(&mut out, "lapse", &[d.lapse]);
                vec(&mut out, "shift", &d.shift);
                row(&mut out, "phi", &[phi]);
                sym(&mut out, "gamma_dd", &d.gamma);
                sym(&mut out, "gammac_dd", &d.gamma_bar);
                sym(&mut out, "K_dd", &d.k_dd);
                row(&mut out, "K", &[d.k_trace]);
                sym(&mut out, "Ac_dd", &d.a_bar_dd);
                vec(&mut out, "Lambda_u", &lam);
            }
            Sector::H => {
                let m = &p.mean;
                vec(&mut out, "shift", &m.q);
                sym(&mut out, "h_dd", &m.h_dd);
                sym(&mut out, "hc_dd", &m.h_bar_dd);
                row(&mut out, "lambda", &[m.frame.lambda]);
                vec(&mut out, "p", &m.frame.p);
                mat(&mut out, "R_ud", &m.frame.r);
            }
        }
        if let Some(geo) = result.geometry_of(s) {
            vec(&mut out, "Lambda_calc", &geo.lambda_computed[i]);
            sym(&mut out, "Ricci_dd", &geo.ricci[i]);
        }
    }
    Ok(out)
}
