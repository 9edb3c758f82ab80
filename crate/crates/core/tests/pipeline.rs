mod common;

use bimetric::config::{flat_config_text, load_config, parse_config, Sector};
use bimetric::pipeline::run_decomposition;
use bimetric::report::Status;
use bimetric::{Error, Mat3, SymMat3};
use common::*;

fn max_over(values: impl Iterator<Item = f64>) -> f64 {
    values.fold(0.0, f64::max)
}

#[test]
fn conformal_metric_matches_closed_form_ricci() {
    let cfg = parse_config(&conformal_config(9, "analytic", "g")).unwrap();
    let result = run_decomposition(&cfg).unwrap();
    let g = result.geometry_of(Sector::G).unwrap();
    let err = max_over(g.ricci.iter().zip(&result.coords).map(|(r, x)| (*r - conformal_ricci_exact(*x)).max_abs()));
    assert!(err < 1e-12, "{err:e}");
    assert!(g.lambda_residual_max() < 1e-14);
    assert!(g.ricci_identity_residual < 1e-12);
    assert!(result.report.passed(), "{}", result.report);
}

#[test]
fn finite_differences_converge_to_the_analytic_result() {
    let mut errs = Vec::new();
    for n in [9, 17] {
        let fd = run_decomposition(&parse_config(&conformal_config(n, "finite_difference", "g")).unwrap()).unwrap();
        let g = fd.geometry_of(Sector::G).unwrap();
        errs.push(max_over(g.ricci.iter().zip(&fd.coords).map(|(r, x)| (*r - conformal_ricci_exact(*x)).max_abs())));
        assert_eq!(fd.report.get("derivatives").unwrap().note, "finite_difference");
    }
    let order = (errs[0] / errs[1]).log2();
    assert!(order > 3.7, "{errs:?} order {order}");
}

#[test]
fn finite_differences_need_every_axis() {
    let text = std::fs::read_to_string(fixture("spherical.cfg")).unwrap() + "options.derivatives = finite_difference\n";
    let err = run_decomposition(&parse_config(&text).unwrap()).unwrap_err();
    assert!(matches!(err, Error::InsufficientGhost { .. }), "{err}");
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn spherical_example_against_closed_forms() {
    let result = run_decomposition(&load_config(fixture("spherical.cfg")).unwrap()).unwrap();
    assert!(result.report.passed(), "{}", result.report);
    let (m, s) = (0.4, 0.3);
    for (i, x) in result.coords.iter().enumerate() {
        let (r, th) = (x[0], x[1]);
        let p = &result.point_results[i];
        let psi = 1.0 + m / (2.0 * r);
        assert!((p.g.lapse - (1.0 - m / (2.0 * r)) / psi).abs() < 1e-14);
        // γ_g = e^{4φ}·diag(1, r², r² sin²θ) with e^{4φ} = ψ²
        let expected = SymMat3::diag([1.0, r * r, (r * th.sin()).powi(2)]).scale(psi * psi);
        assert!((p.g.gamma - expected).max_abs() < 1e-12 * (1.0 + expected.max_abs()));
        let a = 1.0 + s * (-r * r).exp();
        let f_bar = SymMat3::diag([a * a, r * r, (r * th.sin()).powi(2)]);
        assert!((p.f.gamma_bar - f_bar).max_abs() < 1e-12 * (1.0 + f_bar.max_abs()));
        assert_eq!(p.mean.frame.r, Mat3::IDENTITY);
    }
    for sector in Sector::ALL {
        let geo = result.geometry_of(sector).unwrap();
        assert!(geo.lambda_residual_max() < 1e-12, "{sector}: {:e}", geo.lambda_residual_max());
        assert!(geo.ricci_identity_residual < 1e-10, "{sector}");
    }
    assert_eq!(result.report.get("unused coordinates").unwrap().note, "ph");
}

#[test]
fn mean_sector_geometry_matches_g_when_sectors_coincide() {
    // identical sectors at rest: h̄ = γ̄_g, so the stencil jet of h̄ must
    // reproduce the exact jet of the g sector
    let mut text = conformal_config(9, "analytic", "g, f, h");
    for k in ["11", "22", "33"] {
        text = text.replace(&format!("ansatz.fEBS_{k} = \"1\""), &format!("ansatz.fEBS_{k} = \"exp(0.2*(x^2+y^2+z^2))\""));
    }
    text = text.replace("ansatz.phi_g = \"0\"", "ansatz.phi_g = \"0.05*x*y\"").replace("ansatz.phi_f = \"0\"", "ansatz.phi_f = \"0.05*x*y\"");
    let result = run_decomposition(&parse_config(&text).unwrap()).unwrap();
    let (g, h) = (result.geometry_of(Sector::G).unwrap(), result.geometry_of(Sector::H).unwrap());
    let chr = max_over(g.christoffel.iter().zip(&h.christoffel).map(|(a, b)| max_over((0..3).map(|k| (a[k] - b[k]).max_abs()))));
    let ricci = max_over(g.ricci_textbook.iter().zip(&h.ricci_textbook).map(|(a, b)| (*a - *b).max_abs()));
    assert!(chr < 1e-9, "{chr:e}");
    assert!(ricci < 1e-6, "{ricci:e}");
}

#[test]
fn runs_are_reproducible() {
    let cfg = load_config(fixture("spherical.cfg")).unwrap();
    let a = run_decomposition(&cfg).unwrap();
    let b = run_decomposition(&cfg).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.config_text, cfg.to_text());
}

#[test]
fn inconsistent_ansatz_aborts_with_the_grid_point() {
    let err = run_decomposition(&load_config(fixture("inconsistent.cfg")).unwrap()).unwrap_err();
    match &err {
        Error::CheckFailed { check, index, .. } => {
            assert_eq!(check, "asymmetric A_bar");
            assert_eq!(*index, [0, 0, 0]);
        }
        other => panic!("{other}"),
    }
    assert_eq!(err.exit_code(), 3);
}

#[test]
fn singular_vielbein_is_named() {
    let text = flat_config_text([9, 9, 9]).replace("ansatz.gEBS_22 = \"1\"", "ansatz.gEBS_22 = \"x\"");
    let err = run_decomposition(&parse_config(&text).unwrap()).unwrap_err();
    assert!(matches!(&err, Error::CheckFailed { check, .. } if check == "vielbein"), "{err}");
}

#[test]
fn report_lists_the_checks() {
    let result = run_decomposition(&load_config(fixture("flat.cfg")).unwrap()).unwrap();
    for name in ["symmetrization", "shift identity", "rotation orthogonality", "Lorentz property", "Ricci identity (h)"] {
        assert_eq!(result.report.get(name).map(|e| e.status), Some(Status::Pass), "{name}");
    }
    assert_eq!(result.report.get("background").unwrap().status, Status::Info);
    let idx = result.point_index([8, 0, 3]).unwrap();
    assert_eq!(result.grid_index(idx), [8, 0, 3]);
    assert!(matches!(result.point_index([9, 0, 0]), Err(Error::PointOffGrid { .. })));
}
