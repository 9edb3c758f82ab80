//! The geometric-mean sector: spatial mean metric, shifts and conformal mean.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lorentz::{mat4_max_abs, mat4_mul, mat4_transpose, LorentzFrame, Mat4, SqrtAlgorithm, ETA};
use crate::mat3::{eig_sym3, inv3, Mat3, SymMat3, Vec3};
use crate::sector::{adm_blocks, metric_from_vielbein};
use crate::tolerance::ToleranceProfile;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeanDecomposition {
    pub h_dd: SymMat3,
    pub h_bar_dd: SymMat3,
    pub shift_g: Vec3,
    pub shift_f: Vec3,
    pub q: Vec3,
    pub frame: LorentzFrame,
    /// Relative asymmetry of `gEᵀ·B·R·fE` before symmetrization.
    pub symmetry_residual: f64,
    /// `h4·g4⁻¹·h4 = f4` on the full 4-metrics.
    pub mean_4d_residual: f64,
    /// Spatial-only `h·γ_g⁻¹·h = γ_f`; a diagnostic, see [`geometric_mean_check`].
    pub spatial_mean_residual: f64,
    pub shift_identity_residual: f64,
}

/// `h = sym(gEᵀ·B·R·fE)` and the relative asymmetry of the raw product.
pub fn mean_spatial(ge: &Mat3, fe: &Mat3, frame: &LorentzFrame, tol: &ToleranceProfile) -> Result<(SymMat3, f64)> {
    let raw = ge.transpose() * frame.b.to_mat3() * frame.r * *fe;
    let residual = raw.asymmetry() / (1.0 + raw.max_abs());
    if !(residual <= tol.symmetrization) {
        return Err(Error::SymmetrizationFailed { residual, tolerance: tol.symmetrization });
    }
    let h = raw.sym_part();
    let min = eig_sym3(&h)?.values[2];
    if !(min > 0.0) {
        return Err(Error::NotPositiveDefinite { min_eigenvalue: min });
    }
    Ok((h, residual))
}

/// Sector shifts relative to the mean shift `q`:
///
/// `β_g = q + (α_g/λ)·gE⁻¹·p`, `β_f = q − (α_f/λ)·fE⁻¹·Rᵀ·p`.
///
/// The f line carries `Rᵀ` because `p` lives in the g frame; with `R = I` both
/// lines reduce to the familiar symmetric form.
#[allow(clippy::too_many_arguments)]
pub fn sector_shifts(
    q: Vec3,
    alpha_g: f64,
    alpha_f: f64,
    lambda: f64,
    ge: &Mat3,
    fe: &Mat3,
    r: &Mat3,
    p: Vec3,
    tol: &ToleranceProfile,
) -> Result<(Vec3, Vec3)> {
    let ge_inv = inv3(ge, tol).map_err(|_| Error::SingularVielbein("gE is numerically singular".into()))?;
    let fe_inv = inv3(fe, tol).map_err(|_| Error::SingularVielbein("fE is numerically singular".into()))?;
    let shift_g = q + (ge_inv * p) * (alpha_g / lambda);
    let shift_f = q - (fe_inv * (r.transpose() * p)) * (alpha_f / lambda);
    Ok((shift_g, shift_f))
}

/// `h̄ = e^{−2(φ_g + φ_f)}·h`.
pub fn conformal_mean(h: &SymMat3, phi_g: f64, phi_f: f64) -> SymMat3 {
    h.scale((-2.0 * (phi_g + phi_f)).exp())
}

/// `‖h·γ_g⁻¹·h − γ_f‖∞ / (1 + ‖γ_f‖∞)`.
///
/// Exact for `p = 0`. With a boost the spatial blocks alone differ by
/// `v·vᵀ`, `v = fEᵀ·Rᵀ·p`, and only the 4-metrics satisfy the mean relation.
pub fn geometric_mean_check(gamma_g: &SymMat3, h: &SymMat3, gamma_f: &SymMat3, tol: &ToleranceProfile) -> f64 {
    let Ok(gi) = gamma_g.inverse(tol) else {
        return f64::MAX;
    };
    let hm = h.to_mat3();
    let prod = hm * gi.to_mat3() * hm;
    (prod - gamma_f.to_mat3()).max_abs() / (1.0 + gamma_f.max_abs())
}

/// Vielbein of the 4-metric `[[α, 0], [E·β, E]]`.
pub fn vielbein4(lapse: f64, shift: Vec3, e: &Mat3) -> Mat4 {
    let eb = *e * shift;
    let mut m = [[0.0; 4]; 4];
    m[0][0] = lapse;
    for i in 0..3 {
        m[i + 1][0] = eb[i];
        for j in 0..3 {
            m[i + 1][j + 1] = e[(i, j)];
        }
    }
    m
}

/// The 4-dimensional mean `h4 = Gᵀ·η·L·F` with its relative asymmetry and
/// the residual of `h4·g4⁻¹·h4 = f4`.
#[allow(clippy::too_many_arguments)]
pub fn mean_4d(
    ge: &Mat3,
    fe: &Mat3,
    alpha_g: f64,
    alpha_f: f64,
    shift_g: Vec3,
    shift_f: Vec3,
    frame: &LorentzFrame,
    tol: &ToleranceProfile,
) -> Result<(Mat4, f64)> {
    let g = vielbein4(alpha_g, shift_g, ge);
    let f = vielbein4(alpha_f, shift_f, fe);
    let h4 = mat4_mul(&mat4_mul(&mat4_mul(&mat4_transpose(&g), &ETA), &frame.l), &f);
    let f4 = mat4_mul(&mat4_mul(&mat4_transpose(&f), &ETA), &f);
    let g4_inv = adm_blocks(alpha_g, shift_g, &metric_from_vielbein(ge)?).inverse(tol)?;
    let prod = mat4_mul(&mat4_mul(&h4, &g4_inv), &h4);
    let mut worst: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            worst = worst.max((prod[i][j] - f4[i][j]).abs()).max((h4[i][j] - h4[j][i]).abs());
        }
    }
    Ok((h4, worst / (1.0 + mat4_max_abs(&f4))))
}

/// Everything derived from the mean sector at one point.
#[allow(clippy::too_many_arguments)]
pub fn decompose_mean(
    ge: &Mat3,
    fe: &Mat3,
    p: Vec3,
    q: Vec3,
    alpha_g: f64,
    alpha_f: f64,
    phi_g: f64,
    phi_f: f64,
    algorithm: SqrtAlgorithm,
    tol: &ToleranceProfile,
) -> Result<MeanDecomposition> {
    let frame = LorentzFrame::new(p, ge, fe, algorithm, tol)?;
    let (h_dd, symmetry_residual) = mean_spatial(ge, fe, &frame, tol)?;
    let (shift_g, shift_f) = sector_shifts(q, alpha_g, alpha_f, frame.lambda, ge, fe, &frame.r, p, tol)?;

    let ge_inv = inv3(ge, tol)?;
    let fe_inv = inv3(fe, tol)?;
    let expected = (ge_inv * p) * (alpha_g / frame.lambda) + (fe_inv * (frame.r.transpose() * p)) * (alpha_f / frame.lambda);
    let shift_identity_residual = ((shift_g - shift_f) - expected).max_abs() / (1.0 + expected.max_abs());

    let (_, mean_4d_residual) = mean_4d(ge, fe, alpha_g, alpha_f, shift_g, shift_f, &frame, tol)?;
    if !(mean_4d_residual <= tol.mean_4d) {
        return Err(Error::ValidationFailed {
            check: "mean property".into(),
            detail: format!("h4 g4^-1 h4 - f4 residual {mean_4d_residual:e} exceeds {:e}", tol.mean_4d),
        });
    }
    let gamma_g = metric_from_vielbein(ge)?;
    let gamma_f = metric_from_vielbein(fe)?;
    let spatial_mean_residual = geometric_mean_check(&gamma_g, &h_dd, &gamma_f, tol);

    Ok(MeanDecomposition {
        h_dd,
        h_bar_dd: conformal_mean(&h_dd, phi_g, phi_f),
        shift_g,
        shift_f,
        q,
        frame,
        symmetry_residual,
        mean_4d_residual,
        spatial_mean_residual,
        shift_identity_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> ToleranceProfile {
        ToleranceProfile::default()
    }

    fn ge() -> Mat3 {
        Mat3([[1.2, 0.3, -0.4], [0.0, 0.8, 0.5], [0.0, 0.0, 1.7]])
    }

    fn fe() -> Mat3 {
        Mat3([[0.9, -0.2, 0.1], [0.0, 1.4, 0.6], [0.0, 0.0, 0.6]])
    }

    #[test]
    fn mean_examples() {
        let t = tol();
        let id = Mat3::IDENTITY;
        let frame = LorentzFrame::new(Vec3::ZERO, &id, &id, SqrtAlgorithm::Eigen, &t).unwrap();
        let (h, res) = mean_spatial(&id, &id, &frame, &t).unwrap();
        assert_eq!((h, res), (SymMat3::IDENTITY, 0.0));

        let fe = Mat3::diag([2.0, 3.0, 5.0]);
        let frame = LorentzFrame::new(Vec3::ZERO, &id, &fe, SqrtAlgorithm::Eigen, &t).unwrap();
        let (h, _) = mean_spatial(&id, &fe, &frame, &t).unwrap();
        assert!((h - SymMat3::diag([2.0, 3.0, 5.0])).max_abs() < 1e-14);
    }

    #[test]
    fn generic_frame_is_symmetric() {
        let t = tol();
        for alg in SqrtAlgorithm::ALL {
            let frame = LorentzFrame::new(Vec3::new(0.4, -1.1, 0.8), &ge(), &fe(), alg, &t).unwrap();
            let (_, res) = mean_spatial(&ge(), &fe(), &frame, &t).unwrap();
            assert!(res < 1e-14, "{alg}: {res:e}");
        }
    }

    #[test]
    fn shift_examples() {
        let t = tol();
        let id = Mat3::IDENTITY;
        let q = Vec3::new(0.1, 0.2, 0.3);
        let (sg, sf) = sector_shifts(q, 1.3, 0.7, 1.0, &ge(), &fe(), &id, Vec3::ZERO, &t).unwrap();
        assert_eq!((sg, sf), (q, q));

        let p = Vec3::new(3f64.sqrt(), 0.0, 0.0);
        let (sg, sf) = sector_shifts(Vec3::ZERO, 1.0, 1.0, 2.0, &id, &id, &id, p, &t).unwrap();
        let h = 3f64.sqrt() / 2.0;
        assert!((sg - Vec3::new(h, 0.0, 0.0)).max_abs() < 1e-15);
        assert!((sf - Vec3::new(-h, 0.0, 0.0)).max_abs() < 1e-15);

        let p = Vec3::new(0.3, -0.5, 0.9);
        let frame = LorentzFrame::new(p, &ge(), &fe(), SqrtAlgorithm::Eigen, &t).unwrap();
        let (sg, _) = sector_shifts(q, 1.3, 0.7, frame.lambda, &ge(), &fe(), &frame.r, p, &t).unwrap();
        let lhs = (sg - q) * frame.lambda;
        let rhs = inv3(&ge(), &t).unwrap() * p * 1.3;
        assert!((lhs - rhs).max_abs() < 1e-12);
    }

    #[test]
    fn conformal_mean_examples() {
        let h = SymMat3([2.0, 0.1, 0.0, 3.0, 0.2, 1.0]);
        assert_eq!(conformal_mean(&h, 0.0, 0.0), h);
        assert!((conformal_mean(&h, 0.1, 2f64.ln() / 2.0 - 0.1) - h.scale(0.5)).max_abs() < 1e-15);
    }

    #[test]
    fn full_mean_holds_in_four_dimensions() {
        let t = tol();
        let p = Vec3::new(0.7, -1.3, 0.4);
        let m = decompose_mean(&ge(), &fe(), p, Vec3::new(0.2, 0.0, -0.1), 1.1, 0.8, 0.0, 0.0, SqrtAlgorithm::Polar, &t).unwrap();
        assert!(m.mean_4d_residual < 1e-13, "{:e}", m.mean_4d_residual);
        assert!(m.shift_identity_residual < 1e-15);
        // the spatial blocks alone miss by v vᵀ with v = fEᵀ Rᵀ p
        let v = fe().transpose() * (m.frame.r.transpose() * p);
        let gamma_g = metric_from_vielbein(&ge()).unwrap();
        let gamma_f = metric_from_vielbein(&fe()).unwrap();
        let hm = m.h_dd.to_mat3();
        let lhs = hm * gamma_g.inverse(&t).unwrap().to_mat3() * hm;
        assert!((lhs - gamma_f.to_mat3() - v.outer(&v)).max_abs() < 1e-12);
    }

    #[test]
    fn geometric_mean_check_examples() {
        let t = tol();
        let g = SymMat3([2.0, 0.1, 0.0, 3.0, 0.2, 1.0]);
        assert!(geometric_mean_check(&g, &g, &g, &t) < 1e-15);
        let r = geometric_mean_check(&SymMat3::IDENTITY, &SymMat3::diag([2.0, 3.0, 4.0]), &SymMat3::diag([4.0, 9.0, 16.0]), &t);
        assert_eq!(r, 0.0);
    }
}
