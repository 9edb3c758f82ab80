mod common;

use bimetric::config::{load_config, parse_config, DerivativeMode, Sector};
use bimetric::lorentz::SqrtAlgorithm;
use common::*;

#[test]
fn shipped_configs_parse() {
    for name in ["flat.cfg", "spherical.cfg", "inconsistent.cfg"] {
        let cfg = load_config(fixture(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(cfg.grid.ghosts, 4, "{name}");
        // the accepted text parses back to the same entries
        let again = parse_config(&cfg.to_text()).unwrap();
        assert_eq!(again.entries, cfg.entries);
    }
}

#[test]
fn spherical_config_settings() {
    let cfg = load_config(fixture("spherical.cfg")).unwrap();
    assert_eq!(cfg.chart.positive, [true, true, false]);
    assert_eq!(cfg.options.sqrt_algorithm, SqrtAlgorithm::ClosedForm);
    assert_eq!(cfg.options.compute_geometry_of, Sector::ALL.to_vec());
    assert_eq!(cfg.options.derivatives, DerivativeMode::Analytic);
    assert_eq!(cfg.backgrounds[1][5], "r^2*sin(th)^2");
    // parameters are substituted by value
    let v = cfg.ansatz.p[0].eval([1.0, 1.0, 0.0]).unwrap();
    assert!((v - 0.3 * (-1f64).exp()).abs() < 1e-16);
}

#[test]
fn errors_name_the_key() {
    let base = std::fs::read_to_string(fixture("flat.cfg")).unwrap();
    let cases = [
        (base.replace("chart.upper = 1, 1, 1\n", ""), "chart.upper"),
        (base.clone() + "grid.points = 9, 9, 9\n", "grid.points"),
        (base.clone() + "params.sin = 1\n", "params.sin"),
        (base.replace("ansatz.alpha_f = \"1\"", "ansatz.alpha_f = \"1 +\""), "ansatz.alpha_f"),
        (base.replace("ansatz.alpha_f = \"1\"", "ansatz.alpha_f = \"w\""), "ansatz.alpha_f"),
        (base.clone() + "background.g_11 = \"1\"\n", "background.g_11"),
        (base.clone() + "background.gamma_Bf_22 = \"1\"\n", "background.gamma_Bf_11"),
        (base.clone() + "options.tol.nonsense = 1\n", "options.tol.nonsense"),
        (base.clone() + "options.compute_geometry_of = g, q\n", "options.compute_geometry_of"),
    ];
    for (text, key) in cases {
        let err = parse_config(&text).expect_err(key);
        assert_eq!(err.exit_code(), 2, "{key}: {err}");
        assert!(err.to_string().contains(key), "{key}: {err}");
    }
}
