mod common;

use std::fs;

use bimetric::config::{load_config, Sector};
use bimetric::export::{export_engine, export_plain, format_g17, load_engine, parse_engine, plain_fields, ENGINE_VERSION};
use bimetric::pipeline::{run_decomposition, DecompositionResult};
use bimetric::Error;
use common::*;

fn spherical() -> DecompositionResult {
    run_decomposition(&load_config(fixture("spherical.cfg")).unwrap()).unwrap()
}

#[test]
fn engine_snapshot_is_bit_exact() {
    let result = spherical();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.engine.json");
    export_engine(&result, &path).unwrap();
    let back = load_engine(&path).unwrap();
    assert_eq!(back, result);
    let bits = |r: &DecompositionResult| r.point_results.iter().map(|p| p.mean.h_dd.0.map(f64::to_bits)).collect::<Vec<_>>();
    assert_eq!(bits(&back), bits(&result));
}

#[test]
fn snapshot_version_and_format_are_checked() {
    let result = spherical();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.engine.json");
    export_engine(&result, &path).unwrap();
    let mut json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    json["version"] = serde_json::json!(ENGINE_VERSION + 1);
    match parse_engine(&json.to_string()) {
        Err(e @ Error::VersionMismatch { .. }) => assert_eq!(e.exit_code(), 4),
        other => panic!("{other:?}"),
    }
    json["version"] = serde_json::json!(ENGINE_VERSION);
    json["format"] = serde_json::json!("something-else");
    assert!(matches!(parse_engine(&json.to_string()), Err(Error::Format(_))));
    assert!(matches!(parse_engine("{\"format\": 3"), Err(Error::Format(_))));
    assert!(matches!(load_engine(dir.path().join("missing.json")), Err(Error::Io { .. })));
}

#[test]
fn plain_export_round_trips_every_value() {
    let result = spherical();
    let dir = tempfile::tempdir().unwrap();
    let manifest = export_plain(&result, dir.path(), "sph_").unwrap();
    let fields = plain_fields(&result);
    assert_eq!(manifest.fields.len(), fields.len());
    assert_eq!(manifest.shape, [65, 1, 1]);
    assert_eq!(manifest.compute_geometry_of, Sector::ALL.to_vec());
    for (entry, field) in manifest.fields.iter().zip(&fields) {
        assert!(entry.file.starts_with("sph_"));
        let text = fs::read_to_string(dir.path().join(&entry.file)).unwrap();
        let mut lines = text.lines();
        let header = lines.next().unwrap();
        assert_eq!(
            header,
            format!("# field={} chart=spherical shape=65,1,1 components={} index_flags={}", field.name, field.components, field.index_flags)
        );
        let rows: Vec<&str> = lines.collect();
        assert_eq!(rows.len(), 65);
        for (i, row) in rows.iter().enumerate() {
            let cells: Vec<f64> = row.split(',').map(|c| c.parse().unwrap()).collect();
            assert_eq!(cells.len(), 3 + field.components);
            assert_eq!(&cells[..3], &result.coords[i][..]);
            // %.17g is enough to recover every double; -0 is written as 0
            for (c, v) in cells[3..].iter().zip(field.point(i)) {
                assert_eq!(*c, *v, "{} row {i}", field.name);
            }
        }
    }
    let manifest_json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("sph_manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest_json["sqrt_algorithm"], "closed_form");
    assert_eq!(manifest_json["engine_version"], ENGINE_VERSION);
}

#[test]
fn field_names_follow_the_naming_scheme() {
    let names: Vec<String> = plain_fields(&spherical()).into_iter().map(|f| f.name).collect();
    for expected in ["g_alpha", "f_gammac_dd", "h_gamma_dd", "frame_R_ud", "check_mean_4d", "h_Ricci_dd", "f_Lambdares_u"] {
        assert!(names.iter().any(|n| n == expected), "{expected} missing from {names:?}");
    }
}

#[test]
fn g17_matches_printf() {
    let cases = [
        (0.0, "0"),
        (-0.0, "0"),
        (1.0, "1"),
        (0.1, "0.10000000000000001"),
        (-2.5e-7, "-2.4999999999999999e-07"),
        (1e17, "1e+17"),
        (123456789012345678.0, "1.2345678901234568e+17"),
        (1e16, "10000000000000000"),
        (0.0001, "0.0001"),
    ];
    for (x, s) in cases {
        assert_eq!(format_g17(x), s, "{x:e}");
    }
}
