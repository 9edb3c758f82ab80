//! Plain CSV field dumps with a JSON manifest, and the engine snapshot.
//!
//! Field names follow `<sector>_<symbol>[c]_<index flags>`: `u` marks an
//! upper and `d` a lower index, a trailing `c` on the symbol marks a
//! conformal quantity (`g_gammac_dd`). Symmetric tensors store the six
//! components 11, 12, 13, 22, 23, 33; general rank-2 tensors store nine
//! row-major; connection coefficients `Γ^k_ij` store `k`-major blocks of six.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::config::Sector;
use crate::error::{Error, Result};
use crate::geometry::GridField;
use crate::pipeline::{DecompositionResult, PointResult};
use crate::report::ValidationReport;
use crate::tolerance::ToleranceProfile;

/// Version written into and required from engine snapshots.
pub const ENGINE_VERSION: u32 = 1;
const ENGINE_FORMAT: &str = "bimetric-engine";

/// Formats like C's `%.17g`, with `-0` written as `0`.
pub fn format_g17(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{}{:02}", trim_zeros(mantissa.to_string()), if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Every plain field of a result, in export order.
pub fn plain_fields(result: &DecompositionResult) -> Vec<GridField> {
    let pts = &result.point_results;
    let mut out = Vec::new();
    let mut add = |f: GridField| out.push(f);

    for (name, sec) in [("g", Sector::G), ("f", Sector::F)] {
        let d = |p: &PointResult| if sec == Sector::G { p.g.clone() } else { p.f.clone() };
        let field = |sym: &str, flags: &str| format!("{name}_{sym}_{flags}").trim_end_matches('_').to_string();
        let phi = |p: &PointResult| if sec == Sector::G { p.ansatz.phi_g } else { p.ansatz.phi_f };
        let kbar = |p: &PointResult| if sec == Sector::G { p.ansatz.kbar_g } else { p.ansatz.kbar_f };
        let ebs = |p: &PointResult| if sec == Sector::G { p.ansatz.g_ebs } else { p.ansatz.f_ebs };
        let a_ud = |p: &PointResult| if sec == Sector::G { p.ansatz.g_a_ud } else { p.ansatz.f_a_ud };
        let lam = |p: &PointResult| if sec == Sector::G { p.ansatz.g_lam } else { p.ansatz.f_lam };
        add(GridField::from_values(&field("alpha", ""), "", pts.iter().map(|p| d(p).lapse)));
        add(GridField::from_values(&field("beta", "u"), "u", pts.iter().map(|p| d(p).shift)));
        add(GridField::from_values(&field("phi", ""), "", pts.iter().map(phi)));
        add(GridField::from_values(&field("EBS", "ud"), "ud", pts.iter().map(ebs)));
        add(GridField::from_values(&field("E", "ud"), "ud", pts.iter().map(|p| d(p).e)));
        add(GridField::from_values(&field("gamma", "dd"), "dd", pts.iter().map(|p| d(p).gamma)));
        add(GridField::from_values(&field("gammainv", "uu"), "uu", pts.iter().map(|p| d(p).gamma_inv)));
        add(GridField::from_values(&field("gammac", "dd"), "dd", pts.iter().map(|p| d(p).gamma_bar)));
        add(GridField::from_values(&field("A", "ud"), "ud", pts.iter().map(a_ud)));
        add(GridField::from_values(&field("A", "dd"), "dd", pts.iter().map(|p| d(p).a_bar_dd)));
        add(GridField::from_values(&field("Kc", ""), "", pts.iter().map(kbar)));
        add(GridField::from_values(&field("K", "dd"), "dd", pts.iter().map(|p| d(p).k_dd)));
        add(GridField::from_values(&field("K", ""), "", pts.iter().map(|p| d(p).k_trace)));
        add(GridField::from_values(&field("Lambda", "u"), "u", pts.iter().map(lam)));
    }

    add(GridField::from_values("h_beta_u", "u", pts.iter().map(|p| p.mean.q)));
    add(GridField::from_values("h_gamma_dd", "dd", pts.iter().map(|p| p.mean.h_dd)));
    add(GridField::from_values("h_gammac_dd", "dd", pts.iter().map(|p| p.mean.h_bar_dd)));

    add(GridField::from_values("frame_p_u", "u", pts.iter().map(|p| p.mean.frame.p)));
    add(GridField::from_values("frame_lambda", "", pts.iter().map(|p| p.mean.frame.lambda)));
    add(GridField::from_values("frame_B_ud", "ud", pts.iter().map(|p| p.mean.frame.b)));
    add(GridField::from_values("frame_Rbar_ud", "ud", pts.iter().map(|p| p.mean.frame.rbar)));
    add(GridField::from_values("frame_R_ud", "ud", pts.iter().map(|p| p.mean.frame.r)));
    add(GridField::from_values("frame_L_ud", "ud", pts.iter().map(|p| p.mean.frame.l)));

    add(GridField::from_values("check_symmetrization", "", pts.iter().map(|p| p.mean.symmetry_residual)));
    add(GridField::from_values("check_mean_4d", "", pts.iter().map(|p| p.mean.mean_4d_residual)));
    add(GridField::from_values("check_mean_spatial", "", pts.iter().map(|p| p.mean.spatial_mean_residual)));
    add(GridField::from_values("check_shift_identity", "", pts.iter().map(|p| p.mean.shift_identity_residual)));

    for geo in &result.geometry {
        let s = geo.sector;
        add(GridField::from_values(&format!("{s}_Gammac_udd"), "udd", geo.christoffel.iter().copied()));
        add(GridField::from_values(&format!("{s}_DeltaGamma_udd"), "udd", geo.delta_gamma.iter().copied()));
        add(GridField::from_values(&format!("{s}_Lambdacalc_u"), "u", geo.lambda_computed.iter().copied()));
        add(GridField::from_values(&format!("{s}_Lambdares_u"), "u", geo.lambda_residual()));
        add(GridField::from_values(&format!("{s}_Ricci_dd"), "dd", geo.ricci.iter().copied()));
        add(GridField::from_values(&format!("{s}_Riccitextbook_dd"), "dd", geo.ricci_textbook.iter().copied()));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManifestField {
    pub name: String,
    pub file: String,
    pub components: usize,
    pub index_flags: String,
}

/// Description of a plain export directory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub engine_version: u32,
    pub chart: String,
    pub coordinates: [String; 3],
    pub shape: [usize; 3],
    pub ghosts: usize,
    pub sqrt_algorithm: String,
    pub compute_geometry_of: Vec<Sector>,
    pub derivatives: String,
    pub tolerances: ToleranceProfile,
    pub fields: Vec<ManifestField>,
    pub report: ValidationReport,
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut f = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    f.write_all(bytes).map_err(|e| Error::io(path, e))
}

fn field_csv(result: &DecompositionResult, field: &GridField) -> String {
    let n = result.points;
    let mut s = format!(
        "# field={} chart={} shape={},{},{} components={} index_flags={}\n",
        field.name, result.chart.name, n[0], n[1], n[2], field.components, field.index_flags
    );
    for (i, x) in result.coords.iter().enumerate() {
        let cells: Vec<String> = x.iter().chain(field.point(i)).map(|v| format_g17(*v)).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

/// Writes one CSV per field plus `manifest.json` into `out_dir`.
pub fn export_plain(result: &DecompositionResult, out_dir: impl AsRef<Path>, name_prefix: &str) -> Result<Manifest> {
    let dir = out_dir.as_ref();
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut fields = Vec::new();
    for field in plain_fields(result) {
        let file = format!("{name_prefix}{}.csv", field.name);
        write_file(&dir.join(&file), field_csv(result, &field).as_bytes())?;
        fields.push(ManifestField {
            name: field.name.clone(),
            file,
            components: field.components,
            index_flags: field.index_flags.clone(),
        });
    }
    let opts = &result.options;
    let manifest = Manifest {
        engine_version: ENGINE_VERSION,
        chart: result.chart.name.clone(),
        coordinates: result.chart.coords.clone(),
        shape: result.points,
        ghosts: result.ghosts,
        sqrt_algorithm: opts.sqrt_algorithm.to_string(),
        compute_geometry_of: opts.compute_geometry_of.clone(),
        derivatives: opts.derivatives.as_str().into(),
        tolerances: opts.tolerances.clone(),
        fields,
        report: result.report.clone(),
    };
    let text = serde_json::to_string_pretty(&manifest).map_err(|e| Error::Format(e.to_string()))? + "\n";
    write_file(&dir.join(format!("{name_prefix}manifest.json")), text.as_bytes())?;
    Ok(manifest)
}

#[derive(Serialize)]
struct SnapshotOut<'a> {
    format: &'a str,
    version: u32,
    result: &'a DecompositionResult,
}

/// Writes the full result as a versioned JSON snapshot.
pub fn export_engine(result: &DecompositionResult, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let snap = SnapshotOut { format: ENGINE_FORMAT, version: ENGINE_VERSION, result };
    let text = serde_json::to_string(&snap).map_err(|e| Error::Format(e.to_string()))?;
    write_file(path, text.as_bytes())
}

/// Reads a snapshot written by [`export_engine`].
pub fn load_engine(path: impl AsRef<Path>) -> Result<DecompositionResult> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_engine(&text)
}

pub fn parse_engine(text: &str) -> Result<DecompositionResult> {
    let mut value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    if value.get("format").and_then(|f| f.as_str()) != Some(ENGINE_FORMAT) {
        return Err(Error::Format(format!("not a {ENGINE_FORMAT} snapshot")));
    }
    let version = value
        .get("version")
        .and_then(|v| v.as_u64())
        .ok_or_else(|| Error::Format("missing version".into()))?;
    if version != u64::from(ENGINE_VERSION) {
        return Err(Error::VersionMismatch { found: version.min(u64::from(u32::MAX)) as u32, expected: ENGINE_VERSION });
    }
    let result = value.get_mut("result").map(serde_json::Value::take).ok_or_else(|| Error::Format("missing result".into()))?;
    serde_json::from_value(result).map_err(|e| Error::Format(e.to_string()))
}

/// Default file name of the snapshot written by `decompose`.
pub const ENGINE_FILE: &str = "decomposition.engine.json";

/// Snapshot path inside an output directory.
pub fn engine_path(dir: &Path) -> PathBuf {
    dir.join(ENGINE_FILE)
}
