//! Grid-level orchestration: ansatz evaluation, the per-point frame, mean and
//! sector decompositions, and the per-sector connection and Ricci passes.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{AnsatzConfig, DerivativeMode, Options, Sector};
use crate::error::{Error, Result};
use crate::expr::{Bound, Chart};
use crate::geometry::background::positive_inverse;
use crate::geometry::{
    christoffel, christoffel_derivative, conformal_ricci_point, connection_difference, fd_gradient, fd_hessian,
    lambda_derivative, lambda_from, textbook_ricci, BackgroundGeometry, BackgroundPoint, Christoffel, DChristoffel,
    ExprJet, Grid, MetricJet, RicciInputs, ScalarJet,
};
use crate::mat3::{sym_index, Mat3, SymMat3, Vec3};
use crate::mean::{decompose_mean, MeanDecomposition};
use crate::report::{ReportEntry, ValidationReport};
use crate::sector::{decompose_sector, PointAnsatz, SectorDecomposition};

/// Everything computed at one physical grid point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointResult {
    pub ansatz: PointAnsatz,
    pub g: SectorDecomposition,
    pub f: SectorDecomposition,
    pub mean: MeanDecomposition,
}

/// Connection and curvature fields of one sector over the physical points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectorGeometry {
    pub sector: Sector,
    /// Christoffel symbols of the conformal metric.
    pub christoffel: Vec<Christoffel>,
    pub delta_gamma: Vec<Christoffel>,
    /// `γ̄^{jk}ΔΓ^i_jk`.
    pub lambda_computed: Vec<Vec3>,
    /// The conformal connection the Ricci tensor is built with: the ansatz
    /// variable for g and f, the metric-derived one for h.
    pub lambda_used: Vec<Vec3>,
    /// Conformal Ricci tensor in the covariant background form.
    pub ricci: Vec<SymMat3>,
    /// Ricci tensor from the textbook Christoffel formula.
    pub ricci_textbook: Vec<SymMat3>,
    /// Largest `|R̄(Λ computed) − R̄ textbook|`.
    pub ricci_identity_residual: f64,
    pub background_antisymmetry: f64,
}

impl SectorGeometry {
    pub fn lambda_residual(&self) -> Vec<Vec3> {
        self.lambda_used.iter().zip(&self.lambda_computed).map(|(a, c)| *a - *c).collect()
    }

    pub fn lambda_residual_max(&self) -> f64 {
        self.lambda_residual().iter().fold(0.0, |m, v| m.max(v.max_abs()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionResult {
    /// The config the result was computed from, as accepted.
    pub config_text: String,
    pub chart: Chart,
    pub points: [usize; 3],
    pub ghosts: usize,
    pub options: Options,
    /// Coordinates of the physical points, first coordinate slowest.
    pub coords: Vec<[f64; 3]>,
    pub point_results: Vec<PointResult>,
    /// One entry per sector in `options.compute_geometry_of`, in g, f, h order.
    pub geometry: Vec<SectorGeometry>,
    pub report: ValidationReport,
}

impl DecompositionResult {
    pub fn geometry_of(&self, sector: Sector) -> Option<&SectorGeometry> {
        self.geometry.iter().find(|g| g.sector == sector)
    }

    /// Flat physical index of grid index `idx`.
    pub fn point_index(&self, idx: [usize; 3]) -> Result<usize> {
        if (0..3).any(|a| idx[a] >= self.points[a]) {
            return Err(Error::PointOffGrid { point: idx, shape: self.points });
        }
        Ok((idx[0] * self.points[1] + idx[1]) * self.points[2] + idx[2])
    }

    pub fn grid_index(&self, flat: usize) -> [usize; 3] {
        let n = self.points;
        [flat / (n[1] * n[2]), (flat / n[2]) % n[1], flat % n[2]]
    }
}

/// Name of the internal check an error belongs to.
fn check_name(err: &Error, stage: &str) -> String {
    match err {
        Error::SymmetrizationFailed { .. } => "symmetrization".into(),
        Error::NotPositiveDefinite { .. } => format!("{stage}: positive definiteness"),
        Error::InvalidFrame(_) => "rotation".into(),
        Error::ValidationFailed { check, .. } => check.clone(),
        Error::InvalidAnsatz(msg) if msg.starts_with("asymmetric A_bar") => "asymmetric A_bar".into(),
        Error::SingularVielbein(_) => "vielbein".into(),
        Error::Domain { .. } => "ansatz evaluation".into(),
        _ => stage.into(),
    }
}

fn at_point(err: Error, stage: &str, index: [usize; 3], coords: [f64; 3]) -> Error {
    Error::CheckFailed { check: check_name(&err, stage), index, coords, source: Box::new(err) }
}

/// Prepared expressions for one run.
struct Engine<'a> {
    cfg: &'a AnsatzConfig,
    ebs: [[ExprJet; 6]; 2],
    lam: [[ExprJet; 3]; 2],
    backgrounds: [BackgroundGeometry; 3],
}

impl<'a> Engine<'a> {
    fn new(cfg: &'a AnsatzConfig) -> Result<Self> {
        let a = &cfg.ansatz;
        let jets6 = |v: &[Bound; 6]| v.clone().map(ExprJet::new);
        let jets3 = |v: &[Bound; 3]| v.clone().map(ExprJet::new);
        let mut backgrounds = Vec::new();
        for (s, src) in Sector::ALL.iter().zip(&cfg.backgrounds) {
            let bg = BackgroundGeometry::from_sources(src.each_ref().map(String::as_str), cfg.scope.clone())
                .map_err(|e| Error::config(format!("background.gamma_B{s}"), e.to_string()))?;
            backgrounds.push(bg);
        }
        Ok(Self {
            cfg,
            ebs: [jets6(&a.g_ebs), jets6(&a.f_ebs)],
            lam: [jets3(&a.g_lam), jets3(&a.f_lam)],
            backgrounds: backgrounds.try_into().expect("three sectors"),
        })
    }

    fn ansatz_at(&self, x: [f64; 3]) -> Result<PointAnsatz> {
        let a = &self.cfg.ansatz;
        let upper = |v: &[Bound; 6]| -> Result<Mat3> {
            let mut m = Mat3::ZERO;
            for i in 0..3 {
                for j in i..3 {
                    m.0[i][j] = v[sym_index(i, j)].eval(x)?;
                }
            }
            Ok(m)
        };
        let full = |v: &[Bound; 9]| -> Result<Mat3> {
            let mut m = Mat3::ZERO;
            for k in 0..9 {
                m.0[k / 3][k % 3] = v[k].eval(x)?;
            }
            Ok(m)
        };
        let vec = |v: &[Bound; 3]| eval_vec(v, x);
        Ok(PointAnsatz {
            phi_g: a.phi_g.eval(x)?,
            phi_f: a.phi_f.eval(x)?,
            g_ebs: upper(&a.g_ebs)?,
            f_ebs: upper(&a.f_ebs)?,
            p: vec(&a.p)?,
            q: vec(&a.q)?,
            g_a_ud: full(&a.g_a_ud)?,
            f_a_ud: full(&a.f_a_ud)?,
            g_lam: vec(&a.g_lam)?,
            f_lam: vec(&a.f_lam)?,
            alpha_g: a.alpha_g.eval(x)?,
            alpha_f: a.alpha_f.eval(x)?,
            kbar_g: a.kbar_g.eval(x)?,
            kbar_f: a.kbar_f.eval(x)?,
        })
    }

    /// Frame and mean sector only; stage-tagged errors.
    fn mean_at(&self, ansatz: &PointAnsatz) -> Result<MeanDecomposition, (Error, &'static str)> {
        let opts = &self.cfg.options;
        let tol = &opts.tolerances;
        ansatz.validate().map_err(|e| (e, "ansatz"))?;
        let ge = crate::sector::physical_vielbein(&ansatz.g_ebs, ansatz.phi_g);
        let fe = crate::sector::physical_vielbein(&ansatz.f_ebs, ansatz.phi_f);
        decompose_mean(
            &ge,
            &fe,
            ansatz.p,
            ansatz.q,
            ansatz.alpha_g,
            ansatz.alpha_f,
            ansatz.phi_g,
            ansatz.phi_f,
            opts.sqrt_algorithm,
            tol,
        )
        .map_err(|e| (e, "frame"))
    }

    fn point_at(&self, x: [f64; 3]) -> Result<PointResult, (Error, &'static str)> {
        let tol = &self.cfg.options.tolerances;
        let ansatz = self.ansatz_at(x).map_err(|e| (e, "ansatz evaluation"))?;
        let mean = self.mean_at(&ansatz)?;
        let g = decompose_sector(&ansatz.g_ebs, ansatz.phi_g, &ansatz.g_a_ud, ansatz.kbar_g, mean.shift_g, ansatz.alpha_g, tol)
            .map_err(|e| (e, "g sector"))?;
        let f = decompose_sector(&ansatz.f_ebs, ansatz.phi_f, &ansatz.f_a_ud, ansatz.kbar_f, mean.shift_f, ansatz.alpha_f, tol)
            .map_err(|e| (e, "f sector"))?;
        Ok(PointResult { ansatz, g, f, mean })
    }

    fn h_bar_at(&self, x: [f64; 3]) -> Result<SymMat3, (Error, &'static str)> {
        let ansatz = self.ansatz_at(x).map_err(|e| (e, "ansatz evaluation"))?;
        Ok(self.mean_at(&ansatz)?.h_bar_dd)
    }

    /// Exact jet of `EBSᵀ·EBS` from the vielbein expressions.
    fn ebs_jet(&self, s: usize, x: [f64; 3]) -> Result<MetricJet> {
        let mut e = [[ScalarJet::default(); 3]; 3];
        for i in 0..3 {
            for j in i..3 {
                e[i][j] = self.ebs[s][sym_index(i, j)].eval(x)?;
            }
        }
        Ok(MetricJet::from_vielbein(&e))
    }

    fn lambda_jet(&self, s: usize, x: [f64; 3]) -> Result<(Vec3, [Vec3; 3])> {
        let mut v = Vec3::ZERO;
        let mut d = [Vec3::ZERO; 3];
        for k in 0..3 {
            let (val, grad) = self.lam[s][k].eval1(x)?;
            v[k] = val;
            for j in 0..3 {
                d[j][k] = grad[j];
            }
        }
        Ok((v, d))
    }

    /// Fourth-order stencil jet of the conformal mean metric.
    ///
    /// Samples are combined in pairs with integer weights, so a locally
    /// constant field gives exactly zero derivatives.
    fn h_bar_jet(&self, x: [f64; 3], center: SymMat3) -> Result<MetricJet, (Error, &'static str)> {
        let step = x.map(|c| 2e-3 * c.abs().max(1.0));
        let shifted = |moves: &[(usize, f64)]| {
            let mut y = x;
            for &(a, k) in moves {
                y[a] += k * step[a];
            }
            self.h_bar_at(y)
        };
        // 8·(v₁ − v₋₁) − (v₂ − v₋₂), twelve times the first derivative times the step
        let d1_along = |f: &dyn Fn(f64) -> Result<SymMat3, (Error, &'static str)>| -> Result<SymMat3, (Error, &'static str)> {
            Ok((f(1.0)? - f(-1.0)?).scale(8.0) - (f(2.0)? - f(-2.0)?))
        };
        let mut jet = MetricJet { value: center, ..Default::default() };
        for a in 0..3 {
            let (m1, p1, m2, p2) = (shifted(&[(a, -1.0)])?, shifted(&[(a, 1.0)])?, shifted(&[(a, -2.0)])?, shifted(&[(a, 2.0)])?);
            jet.d1[a] = ((p1 - m1).scale(8.0) - (p2 - m2)).scale(1.0 / (12.0 * step[a]));
            let d2 = (p1 + m1).scale(16.0) - (p2 + m2) - center.scale(30.0);
            jet.d2[a][a] = d2.scale(1.0 / (12.0 * step[a] * step[a]));
        }
        for a in 0..3 {
            for b in 0..a {
                let m = d1_along(&|oa| d1_along(&|ob| shifted(&[(a, oa), (b, ob)])))?;
                let m = m.scale(1.0 / (144.0 * step[a] * step[b]));
                jet.d2[a][b] = m;
                jet.d2[b][a] = m;
            }
        }
        Ok(jet)
    }
}

/// Per-point inputs of the curvature pass.
struct CurvatureInputs {
    jet: MetricJet,
    inv: SymMat3,
    gamma: Christoffel,
    dgamma: DChristoffel,
    back: BackgroundPoint,
    lambda_used: Vec3,
    dlambda_used: [Vec3; 3],
    dlambda_computed: [Vec3; 3],
}

fn finish_point(c: &CurvatureInputs) -> (Christoffel, Vec3, SymMat3, SymMat3, f64) {
    let delta = connection_difference(&c.gamma, &c.back.gamma);
    let lambda_c = lambda_from(&c.inv, &delta);
    let inp = RicciInputs { gb: &c.jet.value, gb_inv: &c.inv, d1: &c.jet.d1, d2: &c.jet.d2, delta: &delta, back: &c.back };
    let ricci = conformal_ricci_point(&inp, c.lambda_used, &c.dlambda_used);
    let ricci_c = conformal_ricci_point(&inp, lambda_c, &c.dlambda_computed);
    let textbook = textbook_ricci(&c.gamma, &c.dgamma);
    (delta, lambda_c, ricci, textbook, (ricci_c - textbook).max_abs())
}

/// Evaluates `f` at the given indices in parallel and returns the first error
/// in index order, so failures are reported deterministically.
fn ordered<T: Send>(n: usize, f: impl Fn(usize) -> Result<T> + Sync) -> Result<Vec<T>> {
    let results: Vec<Result<T>> = (0..n).into_par_iter().map(&f).collect();
    results.into_iter().collect()
}

fn geometry_analytic(engine: &Engine<'_>, grid: &Grid, sector: Sector, points: &[PointResult]) -> Result<SectorGeometry> {
    let tol = &engine.cfg.options.tolerances;
    let phys = grid.physical_flat();
    let stage = format!("{sector} geometry");
    let per_point = ordered(phys.len(), |i| {
        let flat = phys[i];
        let x = grid.coords_flat(flat);
        let wrap = |e: Error| at_point(e, &stage, physical_index(grid, flat), x);
        let jet = match sector {
            Sector::G => engine.ebs_jet(0, x).map_err(wrap)?,
            Sector::F => engine.ebs_jet(1, x).map_err(wrap)?,
            Sector::H => engine.h_bar_jet(x, points[i].mean.h_bar_dd).map_err(|(e, _)| wrap(e))?,
        };
        let inv = positive_inverse(&jet.value, tol).map_err(wrap)?;
        let gamma = christoffel(&inv, &jet.d1);
        let dgamma = christoffel_derivative(&inv, &jet);
        let back = engine.backgrounds[sector.index()].at(x, tol).map_err(wrap)?;
        let delta = connection_difference(&gamma, &back.gamma);
        let mut d_delta = dgamma;
        for (m, row) in d_delta.iter_mut().enumerate() {
            for (k, v) in row.iter_mut().enumerate() {
                *v = *v - back.dgamma[m][k];
            }
        }
        let dlambda_computed = lambda_derivative(&inv, &jet, &delta, &d_delta);
        let (lambda_used, dlambda_used) = match sector {
            Sector::G => engine.lambda_jet(0, x).map_err(wrap)?,
            Sector::F => engine.lambda_jet(1, x).map_err(wrap)?,
            Sector::H => (lambda_from(&inv, &delta), dlambda_computed),
        };
        let antisym = back.riemann_antisymmetry();
        let c = CurvatureInputs { jet, inv, gamma, dgamma, back, lambda_used, dlambda_used, dlambda_computed };
        Ok((c, antisym))
    })?;
    Ok(assemble(sector, per_point))
}

/// Grid index of a stored point; ghost points clamp to the nearest edge.
fn physical_index(grid: &Grid, flat: usize) -> [usize; 3] {
    let s = grid.unflat(flat);
    [0, 1, 2].map(|a| s[a].saturating_sub(grid.pad_lo[a]).min(grid.spec.points[a] - 1))
}

fn eval_vec(v: &[Bound; 3], x: [f64; 3]) -> Result<Vec3> {
    Ok(Vec3([v[0].eval(x)?, v[1].eval(x)?, v[2].eval(x)?]))
}

fn assemble(sector: Sector, per_point: Vec<(CurvatureInputs, f64)>) -> SectorGeometry {
    let mut geo = SectorGeometry {
        sector,
        christoffel: Vec::with_capacity(per_point.len()),
        delta_gamma: Vec::with_capacity(per_point.len()),
        lambda_computed: Vec::with_capacity(per_point.len()),
        lambda_used: Vec::with_capacity(per_point.len()),
        ricci: Vec::with_capacity(per_point.len()),
        ricci_textbook: Vec::with_capacity(per_point.len()),
        ricci_identity_residual: 0.0,
        background_antisymmetry: 0.0,
    };
    let finished: Vec<_> = per_point.par_iter().map(|(c, a)| (finish_point(c), *a)).collect();
    for ((c, _), ((delta, lambda_c, ricci, textbook, resid), antisym)) in per_point.iter().zip(finished) {
        geo.christoffel.push(c.gamma);
        geo.delta_gamma.push(delta);
        geo.lambda_computed.push(lambda_c);
        geo.lambda_used.push(c.lambda_used);
        geo.ricci.push(ricci);
        geo.ricci_textbook.push(textbook);
        geo.ricci_identity_residual = geo.ricci_identity_residual.max(resid);
        geo.background_antisymmetry = geo.background_antisymmetry.max(antisym);
    }
    geo
}

fn geometry_fd(engine: &Engine<'_>, grid: &Grid, sector: Sector) -> Result<SectorGeometry> {
    let tol = &engine.cfg.options.tolerances;
    if let Some(axis) = (0..3).find(|&a| !grid.is_active(a)) {
        return Err(Error::InsufficientGhost { axis, needed: 5, available: 1 });
    }
    let stage = format!("{sector} geometry");
    let n = grid.len();
    let wrap_at = |flat: usize, e: Error| at_point(e, &stage, physical_index(grid, flat), grid.coords_flat(flat));

    // conformal metric on the padded grid
    let gb: Vec<SymMat3> = ordered(n, |flat| {
        let x = grid.coords_flat(flat);
        match sector {
            Sector::G => engine.ebs_jet(0, x).map(|j| j.value).map_err(|e| wrap_at(flat, e)),
            Sector::F => engine.ebs_jet(1, x).map(|j| j.value).map_err(|e| wrap_at(flat, e)),
            Sector::H => engine.h_bar_at(x).map_err(|(e, _)| wrap_at(flat, e)),
        }
    })?;
    let d1 = fd_gradient(grid, &gb)?;
    let d2 = fd_hessian(grid, &gb, &d1)?;

    let pointwise: Vec<(SymMat3, Christoffel, BackgroundPoint, Vec3, Vec3)> = ordered(n, |flat| {
        let x = grid.coords_flat(flat);
        let inv = positive_inverse(&gb[flat], tol).map_err(|e| wrap_at(flat, e))?;
        let gamma = christoffel(&inv, &[d1[0][flat], d1[1][flat], d1[2][flat]]);
        let back = engine.backgrounds[sector.index()].at(x, tol).map_err(|e| wrap_at(flat, e))?;
        let lambda_c = lambda_from(&inv, &connection_difference(&gamma, &back.gamma));
        let lambda_used = match sector {
            Sector::G => eval_vec(&engine.cfg.ansatz.g_lam, x).map_err(|e| wrap_at(flat, e))?,
            Sector::F => eval_vec(&engine.cfg.ansatz.f_lam, x).map_err(|e| wrap_at(flat, e))?,
            Sector::H => lambda_c,
        };
        Ok((inv, gamma, back, lambda_c, lambda_used))
    })?;
    let gammas: Vec<Christoffel> = pointwise.iter().map(|p| p.1).collect();
    let lambda_c: Vec<Vec3> = pointwise.iter().map(|p| p.3).collect();
    let lambda_u: Vec<Vec3> = pointwise.iter().map(|p| p.4).collect();
    let dgamma = fd_gradient(grid, &gammas)?;
    let dlc = fd_gradient(grid, &lambda_c)?;
    let dlu = fd_gradient(grid, &lambda_u)?;

    let mut per_point = Vec::with_capacity(grid.physical_len());
    for flat in grid.physical_flat() {
        let (inv, gamma, back, _, lambda_used) = pointwise[flat].clone();
        let jet = MetricJet {
            value: gb[flat],
            d1: [0, 1, 2].map(|a| d1[a][flat]),
            d2: [0, 1, 2].map(|a| [0, 1, 2].map(|b| d2[a][b][flat])),
        };
        let antisym = back.riemann_antisymmetry();
        per_point.push((
            CurvatureInputs {
                jet,
                inv,
                gamma,
                dgamma: [0, 1, 2].map(|m| dgamma[m][flat]),
                back,
                lambda_used,
                dlambda_used: [0, 1, 2].map(|j| dlu[j][flat]),
                dlambda_computed: [0, 1, 2].map(|j| dlc[j][flat]),
            },
            antisym,
        ));
    }
    Ok(assemble(sector, per_point))
}

/// Runs the whole decomposition. Aborts on the first failed internal check
/// with the check name and the grid point.
pub fn run_decomposition(cfg: &AnsatzConfig) -> Result<DecompositionResult> {
    let grid = Grid::new(cfg.grid.clone())?;
    let engine = Engine::new(cfg)?;
    let phys = grid.physical_flat();
    let coords: Vec<[f64; 3]> = phys.iter().map(|&f| grid.coords_flat(f)).collect();

    let point_results = ordered(phys.len(), |i| {
        engine.point_at(coords[i]).map_err(|(e, stage)| at_point(e, stage, physical_index(&grid, phys[i]), coords[i]))
    })?;

    let mut geometry = Vec::new();
    for &sector in &cfg.options.compute_geometry_of {
        let geo = match cfg.options.derivatives {
            DerivativeMode::Analytic => geometry_analytic(&engine, &grid, sector, &point_results)?,
            DerivativeMode::FiniteDifference => geometry_fd(&engine, &grid, sector)?,
        };
        geometry.push(geo);
    }

    let report = build_report(cfg, &point_results, &geometry);
    Ok(DecompositionResult {
        config_text: cfg.to_text(),
        chart: cfg.chart.clone(),
        points: cfg.grid.points,
        ghosts: cfg.grid.ghosts,
        options: cfg.options.clone(),
        coords,
        point_results,
        geometry,
        report,
    })
}

fn build_report(cfg: &AnsatzConfig, points: &[PointResult], geometry: &[SectorGeometry]) -> ValidationReport {
    let tol = &cfg.options.tolerances;
    let max = |f: &dyn Fn(&PointResult) -> f64| points.iter().fold(0.0f64, |m, p| m.max(f(p)));
    let mut r = ValidationReport::default();
    r.push(ReportEntry::check("symmetrization", max(&|p| p.mean.symmetry_residual), tol.symmetrization));
    r.push(ReportEntry::check("mean property (4-metric)", max(&|p| p.mean.mean_4d_residual), tol.mean_4d));
    r.push(ReportEntry::info(
        "mean property (spatial h g^-1 h = f)",
        Some(max(&|p| p.mean.spatial_mean_residual)),
        "diagnostic only; exact for p = 0",
    ));
    r.push(ReportEntry::check("shift identity", max(&|p| p.mean.shift_identity_residual), tol.shift_identity));
    r.push(ReportEntry::check(
        "rotation orthogonality",
        max(&|p| {
            let rr = p.mean.frame.r;
            (rr.transpose() * rr - Mat3::IDENTITY).max_abs().max((rr.det() - 1.0).abs())
        }),
        tol.rotation,
    ));
    r.push(ReportEntry::check(
        "Lorentz property",
        max(&|p| crate::lorentz::lorentz_residual(&p.mean.frame.l)),
        tol.rotation,
    ));
    for geo in geometry {
        let s = geo.sector;
        let note = if s == Sector::H { "h has no independent connection variable; metric-derived" } else { "" };
        r.push(ReportEntry::info(&format!("Lambda residual ({s})"), Some(geo.lambda_residual_max()), note));
        r.push(ReportEntry::check(&format!("Ricci identity ({s})"), geo.ricci_identity_residual, tol.ricci_identity));
        r.push(ReportEntry::check(&format!("background Riemann antisymmetry ({s})"), geo.background_antisymmetry, 1e-10));
    }
    let unused = cfg.unused_coordinates();
    r.push(ReportEntry::info(
        "unused coordinates",
        None,
        &if unused.is_empty() { "none".to_string() } else { unused.join(", ") },
    ));
    r.push(ReportEntry::info("background", None, "static backgrounds assumed (no time dependence)"));
    r.push(ReportEntry::info("derivatives", None, cfg.options.derivatives.as_str()));
    r
}
