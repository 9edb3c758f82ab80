//! Per-sector assembly: vielbeins, spatial and conformal metrics, extrinsic
//! curvature and the ADM blocks of the 4-metric.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lorentz::{check_vielbein, Mat4};
use crate::mat3::{gram, Mat3, SymMat3, Vec3, SYM_PAIRS};
use crate::tolerance::ToleranceProfile;

/// The primary variables at one point, plus lapses and conformal traces.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointAnsatz {
    pub phi_g: f64,
    pub phi_f: f64,
    /// Conformal vielbeins, upper triangular with positive diagonal.
    pub g_ebs: Mat3,
    pub f_ebs: Mat3,
    pub p: Vec3,
    /// Shift of the mean metric.
    pub q: Vec3,
    /// Conformal trace-free curvature in mixed form `Ā^i_j`.
    pub g_a_ud: Mat3,
    pub f_a_ud: Mat3,
    pub g_lam: Vec3,
    pub f_lam: Vec3,
    pub alpha_g: f64,
    pub alpha_f: f64,
    pub kbar_g: f64,
    pub kbar_f: f64,
}

impl PointAnsatz {
    /// Two identical flat sectors at rest.
    pub fn flat() -> Self {
        Self {
            phi_g: 0.0,
            phi_f: 0.0,
            g_ebs: Mat3::IDENTITY,
            f_ebs: Mat3::IDENTITY,
            p: Vec3::ZERO,
            q: Vec3::ZERO,
            g_a_ud: Mat3::ZERO,
            f_a_ud: Mat3::ZERO,
            g_lam: Vec3::ZERO,
            f_lam: Vec3::ZERO,
            alpha_g: 1.0,
            alpha_f: 1.0,
            kbar_g: 0.0,
            kbar_f: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_vielbein(&self.g_ebs, "gEBS")?;
        check_vielbein(&self.f_ebs, "fEBS")?;
        for (name, v) in [("alpha_g", self.alpha_g), ("alpha_f", self.alpha_f)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidAnsatz(format!("lapse {name} = {v} must be positive")));
            }
        }
        let scalars = [self.phi_g, self.phi_f, self.kbar_g, self.kbar_f];
        if !(scalars.iter().all(|x| x.is_finite())
            && self.p.is_finite()
            && self.q.is_finite()
            && self.g_a_ud.is_finite()
            && self.f_a_ud.is_finite()
            && self.g_lam.is_finite()
            && self.f_lam.is_finite())
        {
            return Err(Error::InvalidAnsatz("non-finite primary variable".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectorDecomposition {
    /// Physical vielbein.
    pub e: Mat3,
    pub gamma: SymMat3,
    pub gamma_inv: SymMat3,
    pub gamma_bar: SymMat3,
    pub a_bar_dd: SymMat3,
    pub a_trace: f64,
    pub k_dd: SymMat3,
    pub k_trace: f64,
    pub shift: Vec3,
    pub lapse: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdmBlocks {
    pub g00: f64,
    pub g0i: Vec3,
    pub gij: SymMat3,
}

/// Result of [`reconstruct_k`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvatureSplit {
    pub k_dd: SymMat3,
    pub a_bar_dd: SymMat3,
    pub a_trace: f64,
    pub k_trace: f64,
}

/// `E = e^{2φ}·EBS`.
pub fn physical_vielbein(ebs: &Mat3, phi: f64) -> Mat3 {
    ebs.scale((2.0 * phi).exp())
}

/// Recovers `φ` from a physical and a conformal vielbein.
pub fn conformal_factor(e: &Mat3, ebs: &Mat3) -> f64 {
    0.5 * (e[(0, 0)] / ebs[(0, 0)]).ln()
}

/// `γ = Eᵀ·E`.
pub fn metric_from_vielbein(e: &Mat3) -> Result<SymMat3> {
    let det = e.det();
    let scale = e.max_abs();
    if !det.is_finite() || det == 0.0 || det.abs() <= 1e-14 * scale.powi(3) {
        return Err(Error::SingularVielbein(format!("det E = {det:e}")));
    }
    Ok(gram(e))
}

/// `γ̄ = e^{−4φ}·γ`.
pub fn conformal_metric(gamma: &SymMat3, phi: f64) -> SymMat3 {
    gamma.scale((-4.0 * phi).exp())
}

/// Lowers `Ā^i_j` with `γ̄` and rebuilds `K_ij = e^{4φ}Ā_ij + ⅓γ_ij·K̄`.
///
/// The lowered `Ā_ij` must be symmetric; otherwise the ansatz is rejected.
pub fn reconstruct_k(a_ud: &Mat3, kbar: f64, gamma: &SymMat3, phi: f64, tol: &ToleranceProfile) -> Result<CurvatureSplit> {
    let gamma_bar = conformal_metric(gamma, phi);
    let lowered = gamma_bar.to_mat3() * *a_ud;
    let asym = lowered.asymmetry() / (1.0 + lowered.max_abs());
    if !(asym <= tol.a_bar_symmetry) {
        return Err(Error::InvalidAnsatz(format!("asymmetric A_bar: lowered residual {asym:e}")));
    }
    let a_bar_dd = lowered.sym_part();
    let a_trace = a_ud.trace();
    let w = (4.0 * phi).exp();
    let k_dd = a_bar_dd.scale(w) + gamma.scale(kbar / 3.0);
    Ok(CurvatureSplit { k_dd, a_bar_dd, a_trace, k_trace: a_trace + kbar })
}

/// Forward map `Ā_ij = e^{−4φ}(K_ij − ⅓γ_ij·K + ⅓γ_ij·Ā)` with `K = γ^{ij}K_ij`.
pub fn forward_a_bar(k_dd: &SymMat3, gamma: &SymMat3, gamma_inv: &SymMat3, phi: f64, a_trace: f64) -> SymMat3 {
    let k = contract(gamma_inv, k_dd);
    (*k_dd + gamma.scale((a_trace - k) / 3.0)).scale((-4.0 * phi).exp())
}

/// `a^{ij}·b_ij`.
pub fn contract(a_uu: &SymMat3, b_dd: &SymMat3) -> f64 {
    SYM_PAIRS
        .iter()
        .enumerate()
        .map(|(s, &(i, j))| if i == j { a_uu.0[s] * b_dd.0[s] } else { 2.0 * a_uu.0[s] * b_dd.0[s] })
        .sum()
}

pub fn adm_blocks(lapse: f64, shift: Vec3, gamma: &SymMat3) -> AdmBlocks {
    let g0i = gamma.mul_vec(shift);
    AdmBlocks { g00: -lapse * lapse + shift.dot(&g0i), g0i, gij: *gamma }
}

impl AdmBlocks {
    pub fn to_mat4(&self) -> Mat4 {
        let mut m = [[0.0; 4]; 4];
        m[0][0] = self.g00;
        for i in 0..3 {
            m[0][i + 1] = self.g0i[i];
            m[i + 1][0] = self.g0i[i];
            for j in 0..3 {
                m[i + 1][j + 1] = self.gij.get(i, j);
            }
        }
        m
    }

    /// Determinant of the full 4-metric by cofactor expansion along the first row.
    pub fn det(&self) -> f64 {
        let m = self.to_mat4();
        let minor = |c: usize| {
            let cols: Vec<usize> = (0..4).filter(|&k| k != c).collect();
            let s = |r: usize, k: usize| m[r][cols[k]];
            s(1, 0) * (s(2, 1) * s(3, 2) - s(2, 2) * s(3, 1)) - s(1, 1) * (s(2, 0) * s(3, 2) - s(2, 2) * s(3, 0))
                + s(1, 2) * (s(2, 0) * s(3, 1) - s(2, 1) * s(3, 0))
        };
        (0..4).map(|c| if c % 2 == 0 { 1.0 } else { -1.0 } * m[0][c] * minor(c)).sum()
    }

    /// Reads lapse, shift and spatial metric back from the blocks.
    pub fn read_back(&self, tol: &ToleranceProfile) -> Result<(f64, Vec3, SymMat3)> {
        let shift = self.gij.inverse(tol)?.mul_vec(self.g0i);
        let lapse2 = shift.dot(&self.g0i) - self.g00;
        if !(lapse2 > 0.0) {
            return Err(Error::InvalidAnsatz("4-metric blocks do not have Lorentzian signature".into()));
        }
        Ok((lapse2.sqrt(), shift, self.gij))
    }

    /// Inverse 4-metric in ADM form.
    pub fn inverse(&self, tol: &ToleranceProfile) -> Result<Mat4> {
        let (lapse, shift, gamma) = self.read_back(tol)?;
        let gi = gamma.inverse(tol)?;
        let a2 = lapse * lapse;
        let mut m = [[0.0; 4]; 4];
        m[0][0] = -1.0 / a2;
        for i in 0..3 {
            m[0][i + 1] = shift[i] / a2;
            m[i + 1][0] = shift[i] / a2;
            for j in 0..3 {
                m[i + 1][j + 1] = gi.get(i, j) - shift[i] * shift[j] / a2;
            }
        }
        Ok(m)
    }
}

/// Full decomposition of one sector from its conformal inputs and its shift.
#[allow(clippy::too_many_arguments)]
pub fn decompose_sector(
    ebs: &Mat3,
    phi: f64,
    a_ud: &Mat3,
    kbar: f64,
    shift: Vec3,
    lapse: f64,
    tol: &ToleranceProfile,
) -> Result<SectorDecomposition> {
    let e = physical_vielbein(ebs, phi);
    let gamma = metric_from_vielbein(&e)?;
    let gamma_inv = gamma.inverse(tol)?;
    let gamma_bar = gram(ebs);
    let split = reconstruct_k(a_ud, kbar, &gamma, phi, tol)?;
    Ok(SectorDecomposition {
        e,
        gamma,
        gamma_inv,
        gamma_bar,
        a_bar_dd: split.a_bar_dd,
        a_trace: split.a_trace,
        k_dd: split.k_dd,
        k_trace: split.k_trace,
        shift,
        lapse,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> ToleranceProfile {
        ToleranceProfile::default()
    }

    #[test]
    fn vielbein_examples() {
        let ebs = Mat3([[1.0, 0.5, 0.0], [0.0, 2.0, 0.1], [0.0, 0.0, 0.7]]);
        assert_eq!(physical_vielbein(&ebs, 0.0), ebs);
        let e = physical_vielbein(&Mat3::IDENTITY, 2f64.ln() / 2.0);
        assert!((e - Mat3::IDENTITY.scale(2.0)).max_abs() < 1e-15);
        let e = physical_vielbein(&ebs, 0.37);
        assert!((conformal_factor(&e, &ebs) - 0.37).abs() < 1e-15);
    }

    #[test]
    fn metric_examples() {
        assert_eq!(metric_from_vielbein(&Mat3::IDENTITY).unwrap(), SymMat3::IDENTITY);
        let g = metric_from_vielbein(&Mat3::diag([2.0, 3.0, 4.0])).unwrap();
        assert_eq!(g, SymMat3::diag([4.0, 9.0, 16.0]));
        let e = Mat3([[1.0, 2.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 3.0]]);
        let g = metric_from_vielbein(&e).unwrap();
        assert_eq!(g, SymMat3([1.0, 2.0, 0.0, 5.0, 0.0, 9.0]));
        assert!((g.det() - e.det().powi(2)).abs() < 1e-12);
        assert!(metric_from_vielbein(&Mat3::ZERO).is_err());
    }

    #[test]
    fn conformal_examples() {
        let g = SymMat3([2.0, 0.1, 0.0, 3.0, 0.2, 1.0]);
        assert_eq!(conformal_metric(&g, 0.0), g);
        let gb = conformal_metric(&SymMat3::IDENTITY, 2f64.ln() / 4.0);
        assert!((gb - SymMat3::IDENTITY.scale(0.5)).max_abs() < 1e-15);
        let ebs = Mat3([[1.1, 0.3, -0.2], [0.0, 0.9, 0.4], [0.0, 0.0, 1.3]]);
        let phi = 0.21;
        let gamma = metric_from_vielbein(&physical_vielbein(&ebs, phi)).unwrap();
        let two_paths = conformal_metric(&gamma, phi) - gram(&ebs);
        assert!(two_paths.max_abs() < 1e-12);
    }

    #[test]
    fn curvature_examples() {
        let t = tol();
        let s = reconstruct_k(&Mat3::ZERO, 0.0, &SymMat3::IDENTITY, 0.0, &t).unwrap();
        assert_eq!(s.k_dd, SymMat3::ZERO);
        let s = reconstruct_k(&Mat3::ZERO, 0.9, &SymMat3::IDENTITY, 0.0, &t).unwrap();
        assert!((s.k_dd - SymMat3::IDENTITY.scale(0.3)).max_abs() < 1e-16);
        assert_eq!(s.k_trace, 0.9);
        // Ā^i_j = diag(1, 2, 3) with a non-diagonal γ̄ lowers to an asymmetric tensor
        let gamma = SymMat3([1.0, 0.5, 0.0, 1.0, 0.0, 1.0]);
        let err = reconstruct_k(&Mat3::diag([1.0, 2.0, 3.0]), 0.0, &gamma, 0.0, &t).unwrap_err();
        assert!(err.to_string().contains("asymmetric A_bar"));
    }

    #[test]
    fn curvature_round_trip() {
        let t = tol();
        let gamma = SymMat3([2.0, 0.3, -0.1, 1.5, 0.2, 1.2]);
        let phi = 0.15;
        let gamma_bar = conformal_metric(&gamma, phi);
        let a_dd = SymMat3([0.2, -0.1, 0.05, 0.3, 0.0, -0.4]);
        let a_ud = gamma_bar.inverse(&t).unwrap().to_mat3() * a_dd.to_mat3();
        let s = reconstruct_k(&a_ud, 0.4, &gamma, phi, &t).unwrap();
        assert!((s.k_trace - s.a_trace - 0.4).abs() < 1e-15);
        let back = forward_a_bar(&s.k_dd, &gamma, &gamma.inverse(&t).unwrap(), phi, s.a_trace);
        assert!((back - s.a_bar_dd).max_abs() < 1e-12);
    }

    #[test]
    fn adm_examples() {
        let t = tol();
        let b = adm_blocks(1.0, Vec3::ZERO, &SymMat3::IDENTITY);
        assert_eq!((b.g00, b.g0i, b.gij), (-1.0, Vec3::ZERO, SymMat3::IDENTITY));
        let b = adm_blocks(2.0, Vec3::new(1.0, 0.0, 0.0), &SymMat3::IDENTITY);
        assert_eq!((b.g00, b.g0i), (-3.0, Vec3::new(1.0, 0.0, 0.0)));

        let gamma = SymMat3([1.4, 0.2, -0.3, 0.9, 0.1, 2.2]);
        let shift = Vec3::new(0.3, -0.7, 0.2);
        let b = adm_blocks(1.3, shift, &gamma);
        let want = -1.69 * gamma.det();
        assert!((b.det() - want).abs() < 1e-10 * want.abs());
        let (lapse, s, g) = b.read_back(&t).unwrap();
        assert!((lapse - 1.3).abs() < 1e-14);
        assert!((s - shift).max_abs() < 1e-14);
        assert_eq!(g, gamma);
    }

    #[test]
    fn ansatz_validation() {
        assert!(PointAnsatz::flat().validate().is_ok());
        let mut a = PointAnsatz::flat();
        a.alpha_f = 0.0;
        assert!(matches!(a.validate(), Err(Error::InvalidAnsatz(_))));
        let mut a = PointAnsatz::flat();
        a.g_ebs[(2, 0)] = 0.1;
        assert!(matches!(a.validate(), Err(Error::SingularVielbein(_))));
    }
}
