mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::*;

fn bimetric(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bimetric")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap_or(-1)
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn decompose_summarize_export() {
    let dir = tempfile::tempdir().unwrap();
    let run = dir.path().join("run");
    let cfg = fixture("spherical.cfg");
    let out = bimetric(&["decompose", path(&cfg), "--out", path(&run)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("PASS symmetrization"), "{stdout}");
    let engine = run.join("decomposition.engine.json");
    assert!(engine.exists() && run.join("manifest.json").exists());

    let out = bimetric(&["summarize", path(&engine), "--sectors", "h,g", "--at", "10,0,0"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("[g]") && text.contains("[h]") && !text.contains("[f]"), "{text}");
    assert!(text.find("[g]") < text.find("[h]"));
    assert!(text.contains("R_ud") && text.contains("Ricci_dd"));

    let plain = dir.path().join("plain");
    let out = bimetric(&["export", path(&engine), "--plain", path(&plain), "--prefix", "x_"]);
    assert_eq!(code(&out), 0);
    assert!(plain.join("x_manifest.json").exists() && plain.join("x_g_alpha.csv").exists());
    // the re-export from the snapshot matches the export written by decompose
    assert_eq!(std::fs::read(plain.join("x_h_gamma_dd.csv")).unwrap(), std::fs::read(run.join("h_gamma_dd.csv")).unwrap());
}

#[test]
fn configuration_errors_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cfg");
    std::fs::write(&bad, std::fs::read_to_string(fixture("flat.cfg")).unwrap() + "ansatz.bogus = \"1\"\n").unwrap();
    let out = bimetric(&["decompose", path(&bad), "--out", path(&dir.path().join("o"))]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("ansatz.bogus"));

    let run = dir.path().join("run");
    assert_eq!(code(&bimetric(&["decompose", path(&fixture("flat.cfg")), "--out", path(&run)])), 0);
    let engine = run.join("decomposition.engine.json");
    assert_eq!(code(&bimetric(&["summarize", path(&engine), "--at", "9,0,0"])), 2);
    assert_eq!(code(&bimetric(&["summarize", path(&engine), "--at", "1,2"])), 2);
    assert_eq!(code(&bimetric(&["summarize", path(&engine), "--sectors", "g,k", "--at", "0,0,0"])), 2);
    assert_eq!(code(&bimetric(&["check", "--suite", "nothing"])), 2);
}

#[test]
fn failed_checks_exit_with_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = bimetric(&["decompose", path(&fixture("inconsistent.cfg")), "--out", path(dir.path())]);
    assert_eq!(code(&out), 3);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("check `asymmetric A_bar` failed at grid point [0, 0, 0]"), "{stderr}");

    // a thresholded report entry that fails still writes the outputs first
    let strict = dir.path().join("strict.cfg");
    std::fs::write(&strict, std::fs::read_to_string(fixture("spherical.cfg")).unwrap() + "options.tol.ricci_identity = 1e-30\n").unwrap();
    let run = dir.path().join("strict");
    let out = bimetric(&["decompose", path(&strict), "--out", path(&run)]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("Ricci identity"));
    assert!(run.join("decomposition.engine.json").exists());
}

#[test]
fn io_errors_exit_with_4() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.cfg");
    assert_eq!(code(&bimetric(&["decompose", path(&missing), "--out", path(dir.path())])), 4);
    let junk = dir.path().join("junk.engine.json");
    std::fs::write(&junk, "not json").unwrap();
    assert_eq!(code(&bimetric(&["summarize", path(&junk), "--at", "0,0,0"])), 4);
    assert_eq!(code(&bimetric(&["export", path(&junk), "--plain", path(dir.path())])), 4);
}

#[test]
fn check_suites() {
    for suite in ["mat3", "frame", "geometry"] {
        let out = bimetric(&["check", "--suite", suite, "--samples", "200", "--seed", "7"]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
        assert!(!String::from_utf8_lossy(&out.stdout).is_empty());
    }
}
