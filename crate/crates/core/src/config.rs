//! The line-oriented ansatz config format.
//!
//! ```text
//! # comment
//! chart.name = spherical
//! chart.coordinates = r, th, ph
//! chart.lower = 0.5, 0.4, 0
//! chart.upper = 2.5, 2.7, 1
//! grid.points = 17, 1, 1
//! params.m = 0.3
//! ansatz.phi_g = "0.1*exp(-r^2)"
//! options.sqrt_algorithm = closed_form
//! ```
//!
//! Expressions are double-quoted; everything else is bare. Every `ansatz.*`
//! key is required, unknown keys are rejected and the lower triangle of the
//! conformal vielbeins cannot be given at all.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{Bound, Chart, Func, Scope};
use crate::geometry::GridSpec;
use crate::lorentz::SqrtAlgorithm;
use crate::tolerance::ToleranceProfile;

/// The three metric sectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sector {
    #[serde(rename = "g")]
    G,
    #[serde(rename = "f")]
    F,
    #[serde(rename = "h")]
    H,
}

impl Sector {
    pub const ALL: [Sector; 3] = [Sector::G, Sector::F, Sector::H];

    pub fn as_str(self) -> &'static str {
        match self {
            Sector::G => "g",
            Sector::F => "f",
            Sector::H => "h",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for Sector {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "g" => Ok(Sector::G),
            "f" => Ok(Sector::F),
            "h" => Ok(Sector::H),
            other => Err(format!("unknown sector `{other}` (expected g, f or h)")),
        }
    }
}

/// Parses a comma-separated sector list such as `g,f,h`.
pub fn parse_sectors(s: &str) -> Result<Vec<Sector>, String> {
    let mut out: Vec<Sector> = Vec::new();
    for part in s.split(',').filter(|p| !p.trim().is_empty()) {
        let sec: Sector = part.parse()?;
        if !out.contains(&sec) {
            out.push(sec);
        }
    }
    out.sort();
    Ok(out)
}

/// Where the derivatives entering the connections and curvature come from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DerivativeMode {
    /// Exact differentiation of the ansatz expressions.
    #[default]
    Analytic,
    /// Fourth-order stencils on the grid.
    FiniteDifference,
}

impl DerivativeMode {
    pub fn as_str(self) -> &'static str {
        match self {
            DerivativeMode::Analytic => "analytic",
            DerivativeMode::FiniteDifference => "finite_difference",
        }
    }
}

impl FromStr for DerivativeMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "analytic" => Ok(DerivativeMode::Analytic),
            "finite_difference" => Ok(DerivativeMode::FiniteDifference),
            other => Err(format!("unknown derivative mode `{other}` (expected analytic or finite_difference)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Options {
    pub sqrt_algorithm: SqrtAlgorithm,
    pub compute_geometry_of: Vec<Sector>,
    pub derivatives: DerivativeMode,
    pub tolerances: ToleranceProfile,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            sqrt_algorithm: SqrtAlgorithm::default(),
            compute_geometry_of: vec![Sector::G, Sector::F],
            derivatives: DerivativeMode::default(),
            tolerances: ToleranceProfile::default(),
        }
    }
}

/// Parsed expressions of the primary variables.
#[derive(Clone, Debug)]
pub struct AnsatzExprs {
    pub phi_g: Bound,
    pub phi_f: Bound,
    /// Upper-triangle entries in packed order 11, 12, 13, 22, 23, 33.
    pub g_ebs: [Bound; 6],
    pub f_ebs: [Bound; 6],
    pub p: [Bound; 3],
    pub q: [Bound; 3],
    /// Row-major `A^i_j`.
    pub g_a_ud: [Bound; 9],
    pub f_a_ud: [Bound; 9],
    pub g_lam: [Bound; 3],
    pub f_lam: [Bound; 3],
    pub alpha_g: Bound,
    pub alpha_f: Bound,
    pub kbar_g: Bound,
    pub kbar_f: Bound,
}

impl AnsatzExprs {
    pub fn all(&self) -> Vec<&Bound> {
        let mut v = vec![&self.phi_g, &self.phi_f];
        v.extend(self.g_ebs.iter().chain(&self.f_ebs).chain(&self.p).chain(&self.q));
        v.extend(self.g_a_ud.iter().chain(&self.f_a_ud).chain(&self.g_lam).chain(&self.f_lam));
        v.extend([&self.alpha_g, &self.alpha_f, &self.kbar_g, &self.kbar_f]);
        v
    }
}

/// A fully validated config.
#[derive(Clone, Debug)]
pub struct AnsatzConfig {
    pub chart: Chart,
    pub grid: GridSpec,
    pub scope: Arc<Scope>,
    pub ansatz: AnsatzExprs,
    /// Background metric sources per sector (g, f, h), packed order.
    pub backgrounds: [[String; 6]; 3],
    pub options: Options,
    /// The accepted `key = value` entries in file order, for the manifest.
    pub entries: Vec<(String, String)>,
}

const SYM_KEYS: [&str; 6] = ["11", "12", "13", "22", "23", "33"];
const LOWER_KEYS: [&str; 3] = ["21", "31", "32"];
const FULL_KEYS: [&str; 9] = ["11", "12", "13", "21", "22", "23", "31", "32", "33"];

/// Required `ansatz.*` keys in canonical order.
pub fn ansatz_keys() -> Vec<String> {
    let mut keys = vec!["phi_g".to_string(), "phi_f".to_string()];
    for v in ["gEBS", "fEBS"] {
        keys.extend(SYM_KEYS.iter().map(|c| format!("{v}_{c}")));
    }
    for v in ["p", "q"] {
        keys.extend((1..=3).map(|c| format!("{v}_{c}")));
    }
    for v in ["gA_ud", "fA_ud"] {
        keys.extend(FULL_KEYS.iter().map(|c| format!("{v}_{c}")));
    }
    for v in ["gLam", "fLam"] {
        keys.extend((1..=3).map(|c| format!("{v}_{c}")));
    }
    keys.extend(["alpha_g", "alpha_f", "Kbar_g", "Kbar_f"].map(String::from));
    keys
}

fn background_keys(sector: Sector) -> [String; 6] {
    let tag = match sector {
        Sector::G => "Bg",
        Sector::F => "Bf",
        Sector::H => "Bh",
    };
    SYM_KEYS.map(|c| format!("gamma_{tag}_{c}"))
}

fn unquote(key: &str, value: &str) -> Result<String> {
    let v = value.trim();
    if v.len() >= 2 && v.starts_with('"') && v.ends_with('"') {
        Ok(v[1..v.len() - 1].to_string())
    } else {
        Err(Error::config(key, "expression values must be double-quoted"))
    }
}

fn numbers(key: &str, value: &str) -> Result<[f64; 3]> {
    let parts: Vec<&str> = value.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(Error::config(key, format!("expected 3 comma-separated numbers, got `{value}`")));
    }
    let mut out = [0.0; 3];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = parse_number(key, p)?;
    }
    Ok(out)
}

fn parse_number(key: &str, s: &str) -> Result<f64> {
    let v = match s.trim() {
        "pi" => std::f64::consts::PI,
        t => t.parse::<f64>().map_err(|_| Error::config(key, format!("`{t}` is not a number")))?,
    };
    if !v.is_finite() {
        return Err(Error::config(key, "value must be finite"));
    }
    Ok(v)
}

fn parse_usize3(key: &str, value: &str) -> Result<[usize; 3]> {
    let parts: Vec<&str> = value.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(Error::config(key, format!("expected 3 comma-separated integers, got `{value}`")));
    }
    let mut out = [0; 3];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p.parse().map_err(|_| Error::config(key, format!("`{p}` is not a non-negative integer")))?;
    }
    Ok(out)
}

/// Reads and validates a config file.
pub fn load_config(path: impl AsRef<Path>) -> Result<AnsatzConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config(&text)
}

/// Parses and validates config text.
pub fn parse_config(text: &str) -> Result<AnsatzConfig> {
    let mut entries: Vec<(String, String)> = Vec::new();
    let mut map: BTreeMap<String, String> = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(Error::config(format!("line {}", lineno + 1), "expected `section.key = value`"));
        };
        let (k, v) = (k.trim().to_string(), v.trim().to_string());
        if map.insert(k.clone(), v.clone()).is_some() {
            return Err(Error::config(k, "duplicate key"));
        }
        entries.push((k, v));
    }

    let mut used: Vec<String> = Vec::new();
    let mut take = |key: &str| -> Option<String> {
        let v = map.get(key).cloned();
        if v.is_some() {
            used.push(key.to_string());
        }
        v
    };
    let require = |v: Option<String>, key: &str| v.ok_or_else(|| Error::config(key, "missing required key"));

    // chart
    let name = require(take("chart.name"), "chart.name")?;
    let coords_raw = require(take("chart.coordinates"), "chart.coordinates")?;
    let coords: Vec<String> = coords_raw.split(',').map(|s| s.trim().to_string()).collect();
    let coords: [String; 3] = coords
        .try_into()
        .map_err(|_| Error::config("chart.coordinates", "expected exactly 3 coordinate names"))?;
    for c in &coords {
        if Func::from_name(c).is_some() || c == "pow" {
            return Err(Error::config("chart.coordinates", format!("`{c}` is a function name")));
        }
    }
    let lower = numbers("chart.lower", &require(take("chart.lower"), "chart.lower")?)?;
    let upper = numbers("chart.upper", &require(take("chart.upper"), "chart.upper")?)?;
    let positive = match take("chart.positive") {
        Some(v) => {
            let mut flags = [false; 3];
            for part in v.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                let i = coords
                    .iter()
                    .position(|c| c == part)
                    .ok_or_else(|| Error::config("chart.positive", format!("`{part}` is not a coordinate")))?;
                flags[i] = true;
            }
            flags
        }
        None => match name.as_str() {
            "spherical" => [true, true, false],
            "cylindrical" => [true, false, false],
            _ => [false; 3],
        },
    };
    let chart = Chart { name, coords, lower, upper, positive };
    chart.validate()?;

    // grid
    let points = parse_usize3("grid.points", &require(take("grid.points"), "grid.points")?)?;
    let ghosts = match take("grid.ghosts") {
        Some(v) => v.parse().map_err(|_| Error::config("grid.ghosts", format!("`{v}` is not an integer")))?,
        None => 4,
    };
    let grid = GridSpec { chart: chart.clone(), points, ghosts };

    // parameters
    let mut scope = chart.scope();
    for (k, v) in &entries {
        if let Some(pname) = k.strip_prefix("params.") {
            take(k);
            let valid = pname.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && pname.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid || pname == "pi" || pname == "pow" || Func::from_name(pname).is_some() || chart.coords.iter().any(|c| c == pname) {
                return Err(Error::config(k.as_str(), format!("`{pname}` cannot be used as a parameter name")));
            }
            scope.params.push((pname.to_string(), parse_number(k, v)?));
        }
    }
    let scope = Arc::new(scope);

    // ansatz
    let mut exprs: BTreeMap<String, Bound> = BTreeMap::new();
    for v in ["gEBS", "fEBS"] {
        for c in LOWER_KEYS {
            let key = format!("ansatz.{v}_{c}");
            if map.contains_key(&key) {
                return Err(Error::config(key, "conformal vielbeins are upper triangular; lower-triangle keys are not allowed"));
            }
        }
    }
    for short in ansatz_keys() {
        let key = format!("ansatz.{short}");
        let src = unquote(&key, &require(take(&key), &key)?)?;
        let e = Bound::parse(&src, scope.clone()).map_err(|e| Error::config(key.as_str(), e.to_string()))?;
        exprs.insert(short, e);
    }
    let get = |k: &str| exprs[k].clone();
    let arr = |prefix: &str, suffixes: &[&str]| -> Vec<Bound> { suffixes.iter().map(|s| get(&format!("{prefix}_{s}"))).collect() };
    let idx3 = ["1", "2", "3"];
    let ansatz = AnsatzExprs {
        phi_g: get("phi_g"),
        phi_f: get("phi_f"),
        g_ebs: arr("gEBS", &SYM_KEYS).try_into().unwrap(),
        f_ebs: arr("fEBS", &SYM_KEYS).try_into().unwrap(),
        p: arr("p", &idx3).try_into().unwrap(),
        q: arr("q", &idx3).try_into().unwrap(),
        g_a_ud: arr("gA_ud", &FULL_KEYS).try_into().unwrap(),
        f_a_ud: arr("fA_ud", &FULL_KEYS).try_into().unwrap(),
        g_lam: arr("gLam", &idx3).try_into().unwrap(),
        f_lam: arr("fLam", &idx3).try_into().unwrap(),
        alpha_g: get("alpha_g"),
        alpha_f: get("alpha_f"),
        kbar_g: get("Kbar_g"),
        kbar_f: get("Kbar_f"),
    };

    // backgrounds: all six components or none per sector
    let flat = crate::geometry::BackgroundGeometry::flat_sources(&chart);
    let mut backgrounds: Vec<[String; 6]> = Vec::new();
    for sector in Sector::ALL {
        let keys = background_keys(sector);
        let given: Vec<Option<String>> = keys.iter().map(|k| take(&format!("background.{k}"))).collect();
        let count = given.iter().filter(|g| g.is_some()).count();
        let sources = if count == 6 {
            let mut out = Vec::new();
            for (k, g) in keys.iter().zip(given) {
                let key = format!("background.{k}");
                let src = unquote(&key, &g.unwrap())?;
                Bound::parse(&src, scope.clone()).map_err(|e| Error::config(key.as_str(), e.to_string()))?;
                out.push(src);
            }
            out.try_into().unwrap()
        } else if count == 0 {
            flat.clone().ok_or_else(|| {
                Error::config(
                    format!("background.{}", keys[0]),
                    format!("chart `{}` has no default flat background; give all six components", chart.name),
                )
            })?
        } else {
            return Err(Error::config(format!("background.{}", keys[0]), "give all six components of a background metric or none"));
        };
        backgrounds.push(sources);
    }

    // options
    let mut options = Options::default();
    if let Some(v) = take("options.sqrt_algorithm") {
        options.sqrt_algorithm = v.parse().map_err(|e: String| Error::config("options.sqrt_algorithm", e))?;
    }
    if let Some(v) = take("options.compute_geometry_of") {
        options.compute_geometry_of = parse_sectors(&v).map_err(|e| Error::config("options.compute_geometry_of", e))?;
    }
    if let Some(v) = take("options.derivatives") {
        options.derivatives = v.parse().map_err(|e: String| Error::config("options.derivatives", e))?;
    }
    for (k, v) in &entries {
        if let Some(name) = k.strip_prefix("options.tol.") {
            take(k);
            options.tolerances.set(name, parse_number(k, v)?)?;
        }
    }

    if let Some((k, _)) = entries.iter().find(|(k, _)| !used.contains(k)) {
        return Err(Error::config(k.as_str(), "unknown key"));
    }

    Ok(AnsatzConfig {
        chart,
        grid,
        scope,
        ansatz,
        backgrounds: backgrounds.try_into().unwrap(),
        options,
        entries,
    })
}

impl AnsatzConfig {
    /// Renders the accepted entries back to config text.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.entries {
            s.push_str(&format!("{k} = {v}\n"));
        }
        s
    }

    /// Coordinates no ansatz expression depends on.
    pub fn unused_coordinates(&self) -> Vec<String> {
        let mut used = [false; 3];
        for e in self.ansatz.all() {
            for (u, r) in used.iter_mut().zip(e.expr.referenced_coordinates()) {
                *u |= r;
            }
        }
        (0..3).filter(|&i| !used[i]).map(|i| self.chart.coords[i].clone()).collect()
    }
}

/// A flat config text: identical flat sectors at rest on a Cartesian grid.
pub fn flat_config_text(points: [usize; 3]) -> String {
    let mut s = format!(
        "chart.name = cartesian\nchart.coordinates = x, y, z\nchart.lower = -1, -1, -1\nchart.upper = 1, 1, 1\n\
         grid.points = {}, {}, {}\ngrid.ghosts = 4\n",
        points[0], points[1], points[2]
    );
    for key in ansatz_keys() {
        let diag = ["gEBS_11", "gEBS_22", "gEBS_33", "fEBS_11", "fEBS_22", "fEBS_33", "alpha_g", "alpha_f"];
        let v = if diag.contains(&key.as_str()) { "1" } else { "0" };
        s.push_str(&format!("ansatz.{key} = \"{v}\"\n"));
    }
    s
}
