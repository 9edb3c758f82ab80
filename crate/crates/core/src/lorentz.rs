//! Lorentz frame `L = Λ(p)·R` relating the g and f vielbeins.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mat3::{inv3, polar3, sqrt_spd_closed, sqrt_spd_eig, gram, Mat3, SymMat3, Vec3};
use crate::tolerance::ToleranceProfile;

/// Row-major 4×4 matrix, index 0 is time.
pub type Mat4 = [[f64; 4]; 4];

/// Minkowski metric with signature (−,+,+,+).
pub const ETA: Mat4 = [[-1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]];

/// How the rotation is extracted from `R̄`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SqrtAlgorithm {
    /// Invariant-based closed-form SPD root.
    ClosedForm,
    /// Eigendecomposition-based SPD root.
    #[default]
    Eigen,
    /// Orthogonal polar factor of `R̄⁻¹` directly.
    Polar,
}

impl SqrtAlgorithm {
    pub const ALL: [SqrtAlgorithm; 3] = [SqrtAlgorithm::ClosedForm, SqrtAlgorithm::Eigen, SqrtAlgorithm::Polar];

    pub fn as_str(&self) -> &'static str {
        match self {
            SqrtAlgorithm::ClosedForm => "closed_form",
            SqrtAlgorithm::Eigen => "eigen",
            SqrtAlgorithm::Polar => "polar",
        }
    }
}

impl fmt::Display for SqrtAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for SqrtAlgorithm {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "closed_form" => Ok(SqrtAlgorithm::ClosedForm),
            "eigen" => Ok(SqrtAlgorithm::Eigen),
            "polar" => Ok(SqrtAlgorithm::Polar),
            other => Err(format!("unknown sqrt algorithm `{other}` (expected closed_form, eigen or polar)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LorentzFrame {
    pub p: Vec3,
    /// Lorentz factor `√(1 + pᵀp)`.
    pub lambda: f64,
    /// Spatial block of the boost.
    pub b: SymMat3,
    pub rbar: Mat3,
    pub r: Mat3,
    pub l: Mat4,
}

impl LorentzFrame {
    /// Builds the frame for the vielbeins `ge`, `fe` and separation parameter `p`.
    pub fn new(p: Vec3, ge: &Mat3, fe: &Mat3, algorithm: SqrtAlgorithm, tol: &ToleranceProfile) -> Result<Self> {
        if !p.is_finite() {
            return Err(Error::InvalidInput("separation parameter is not finite".into()));
        }
        let (lambda, b) = boost_from_p(p);
        let rbar = rbar(ge, fe, &b, tol)?;
        let r = rotation_from_rbar(&rbar, algorithm, tol)?;
        let l = assemble_l(p, lambda, &b, &r);
        Ok(Self { p, lambda, b, rbar, r, l })
    }
}

/// Lorentz factor and spatial boost block `B = I + p·pᵀ/(1 + λ)`.
pub fn boost_from_p(p: Vec3) -> (f64, SymMat3) {
    let lambda = (1.0 + p.norm_sq()).sqrt();
    let c = 1.0 / (1.0 + lambda);
    let mut b = SymMat3::IDENTITY;
    for (slot, &(i, j)) in crate::mat3::SYM_PAIRS.iter().enumerate() {
        b.0[slot] += c * p[i] * p[j];
    }
    (lambda, b)
}

/// Checks the upper-triangular, positive-diagonal vielbein gauge.
pub fn check_vielbein(e: &Mat3, name: &str) -> Result<()> {
    if !e.is_finite() {
        return Err(Error::SingularVielbein(format!("{name} has non-finite entries")));
    }
    if !e.is_upper_triangular() {
        return Err(Error::SingularVielbein(format!("{name} is not upper triangular")));
    }
    if !(0..3).all(|i| e[(i, i)] > 0.0) {
        return Err(Error::SingularVielbein(format!("{name} has a non-positive diagonal entry")));
    }
    Ok(())
}

fn vielbein_inverse(e: &Mat3, name: &str, tol: &ToleranceProfile) -> Result<Mat3> {
    check_vielbein(e, name)?;
    inv3(e, tol).map_err(|_| Error::SingularVielbein(format!("{name} is numerically singular")))
}

/// `R̄ = (gE·fE⁻¹)ᵀ·B`.
///
/// This is the ordering for which `gEᵀ·B·R·fE` is symmetric when `γ = EᵀE`.
pub fn rbar(ge: &Mat3, fe: &Mat3, b: &SymMat3, tol: &ToleranceProfile) -> Result<Mat3> {
    check_vielbein(ge, "gE")?;
    let fe_inv = vielbein_inverse(fe, "fE", tol)?;
    Ok((*ge * fe_inv).transpose() * b.to_mat3())
}

/// Rotation `R = (R̄ᵀR̄)^{1/2}·R̄⁻¹`, the orthogonal polar factor of `R̄⁻¹`.
pub fn rotation_from_rbar(rbar: &Mat3, algorithm: SqrtAlgorithm, tol: &ToleranceProfile) -> Result<Mat3> {
    let rbar_inv = inv3(rbar, tol)?;
    let r0 = match algorithm {
        SqrtAlgorithm::Polar => polar3(&rbar_inv, tol)?.1,
        SqrtAlgorithm::Eigen => sqrt_spd_eig(&gram(rbar), tol)?.to_mat3() * rbar_inv,
        SqrtAlgorithm::ClosedForm => sqrt_spd_closed(&gram(rbar), tol)?.to_mat3() * rbar_inv,
    };
    let r = refine_rotation(r0, rbar, tol)?;
    let orth = (r.transpose() * r - Mat3::IDENTITY).max_abs();
    if !(orth <= tol.rotation) {
        return Err(Error::InvalidFrame(format!("rotation is not orthogonal: |RᵀR − I| = {orth:e}")));
    }
    let det = r.det();
    if !((det - 1.0).abs() <= tol.rotation) {
        return Err(Error::InvalidFrame(format!("rotation has det {det}, expected +1")));
    }
    Ok(r)
}

/// Polishes an approximate rotation against the condition `R·R̄` symmetric.
///
/// Squaring `R̄` inside the square-root routes costs `cond(R̄)²` in accuracy.
/// Each pass re-orthogonalizes with `r ← (r + r⁻ᵀ)/2`, then solves
/// `W·M + Mᵀ·W = Mᵀ − M` (`M = r·R̄`) for a skew `W` and applies `exp(W)`.
/// This is Newton's method on the symmetry condition, so the result is
/// accurate to `cond(R̄)·ε` whichever algorithm produced the first guess.
pub fn refine_rotation(r0: Mat3, rbar: &Mat3, tol: &ToleranceProfile) -> Result<Mat3> {
    let mut r = r0;
    for _ in 0..4 {
        for _ in 0..8 {
            let next = (r + inv3(&r, tol)?.transpose()).scale(0.5);
            let step = (next - r).max_abs();
            r = next;
            if step <= 4.0 * f64::EPSILON {
                break;
            }
        }
        let m = r * *rbar;
        // axial vector of Mᵀ − M, and the linear map ω ↦ axial(W·M + Mᵀ·W) = (tr M·I − M_sym)ω
        let c = Vec3::new(m[(1, 2)] - m[(2, 1)], m[(2, 0)] - m[(0, 2)], m[(0, 1)] - m[(1, 0)]);
        if c.max_abs() <= 4.0 * f64::EPSILON * m.max_abs() {
            break;
        }
        let j = Mat3::IDENTITY.scale(m.trace()) - m.sym_part().to_mat3();
        let omega = inv3(&j, tol)? * c;
        r = rodrigues(omega) * r;
    }
    Ok(r)
}

/// `exp(W)` for the skew matrix with axial vector `omega`.
fn rodrigues(omega: Vec3) -> Mat3 {
    let theta = omega.norm();
    let w = Mat3([[0.0, -omega[2], omega[1]], [omega[2], 0.0, -omega[0]], [-omega[1], omega[0], 0.0]]);
    let (a, b) = if theta < 1e-4 {
        let t2 = theta * theta;
        (1.0 - t2 / 6.0, 0.5 - t2 / 24.0)
    } else {
        (theta.sin() / theta, (1.0 - theta.cos()) / (theta * theta))
    };
    Mat3::IDENTITY + w.scale(a) + (w * w).scale(b)
}

/// `L = [[λ, pᵀR], [p, B·R]]`.
pub fn assemble_l(p: Vec3, lambda: f64, b: &SymMat3, r: &Mat3) -> Mat4 {
    let pr = r.transpose() * p;
    let br = b.to_mat3() * *r;
    let mut l = [[0.0; 4]; 4];
    l[0][0] = lambda;
    for i in 0..3 {
        l[0][i + 1] = pr[i];
        l[i + 1][0] = p[i];
        for j in 0..3 {
            l[i + 1][j + 1] = br[(i, j)];
        }
    }
    l
}

pub fn mat4_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut m = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    m
}

pub fn mat4_transpose(a: &Mat4) -> Mat4 {
    let mut m = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = a[j][i];
        }
    }
    m
}

pub fn mat4_max_abs(a: &Mat4) -> f64 {
    a.iter().flatten().fold(0.0, |m, x| m.max(x.abs()))
}

/// `‖LᵀηL − η‖∞`.
pub fn lorentz_residual(l: &Mat4) -> f64 {
    let m = mat4_mul(&mat4_mul(&mat4_transpose(l), &ETA), l);
    let mut worst: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            worst = worst.max((m[i][j] - ETA[i][j]).abs());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> ToleranceProfile {
        ToleranceProfile::default()
    }

    #[test]
    fn boost_examples() {
        let (l, b) = boost_from_p(Vec3::ZERO);
        assert_eq!(l, 1.0);
        assert_eq!(b, SymMat3::IDENTITY);

        let (l, b) = boost_from_p(Vec3::new(3f64.sqrt(), 0.0, 0.0));
        assert!((l - 2.0).abs() < 1e-15);
        assert!((b - SymMat3::diag([2.0, 1.0, 1.0])).max_abs() < 1e-15);

        let p = Vec3::new(0.3, -0.4, 1.2);
        let (l, b) = boost_from_p(p);
        let b2 = b.to_mat3() * b.to_mat3();
        let want = Mat3::IDENTITY + p.outer(&p);
        assert!((b2 - want).max_abs() < 1e-12);
        assert!((b.mul_vec(p) - p * l).max_abs() < 1e-12);
        assert!((b.det() - l).abs() < 1e-12 * l);
    }

    #[test]
    fn rbar_examples() {
        let t = tol();
        let id = Mat3::IDENTITY;
        assert_eq!(rbar(&id, &id, &SymMat3::IDENTITY, &t).unwrap(), id);
        let fe = Mat3::diag([2.0, 4.0, 5.0]);
        let rb = rbar(&id, &fe, &SymMat3::IDENTITY, &t).unwrap();
        assert!((rb - Mat3::diag([0.5, 0.25, 0.2])).max_abs() < 1e-16);
        assert!(rbar(&Mat3([[1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [0.0, 0.0, 1.0]]), &id, &SymMat3::IDENTITY, &t).is_err());
        assert!(rbar(&id, &Mat3::diag([1.0, -1.0, 1.0]), &SymMat3::IDENTITY, &t).is_err());
    }

    #[test]
    fn rbar_determinant() {
        let t = tol();
        let ge = Mat3([[1.2, 0.3, -0.4], [0.0, 0.8, 0.5], [0.0, 0.0, 1.7]]);
        let fe = Mat3([[0.9, -0.2, 0.1], [0.0, 1.4, 0.6], [0.0, 0.0, 0.6]]);
        let (lambda, b) = boost_from_p(Vec3::new(0.5, 1.0, -0.7));
        let rb = rbar(&ge, &fe, &b, &t).unwrap();
        let want = ge.det() / fe.det() * lambda;
        assert!((rb.det() - want).abs() < 1e-12 * want);
    }

    #[test]
    fn rotation_examples() {
        let t = tol();
        for alg in SqrtAlgorithm::ALL {
            let r = rotation_from_rbar(&Mat3::IDENTITY, alg, &t).unwrap();
            assert!((r - Mat3::IDENTITY).max_abs() < 1e-14, "{alg}");
            let r = rotation_from_rbar(&Mat3::diag([2.0, 3.0, 4.0]), alg, &t).unwrap();
            assert!((r - Mat3::IDENTITY).max_abs() < 1e-14, "{alg}");
            let rz = Mat3::rot_z(0.7);
            let r = rotation_from_rbar(&(rz * Mat3::diag([2.0, 3.0, 4.0])), alg, &t).unwrap();
            assert!((r - rz.transpose()).max_abs() < 1e-13, "{alg}");
        }
    }

    #[test]
    fn assemble_examples() {
        let l = assemble_l(Vec3::ZERO, 1.0, &SymMat3::IDENTITY, &Mat3::IDENTITY);
        assert_eq!(l, [[1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]]);
        let p = Vec3::new(3f64.sqrt(), 0.0, 0.0);
        let (lambda, b) = boost_from_p(p);
        let l = assemble_l(p, lambda, &b, &Mat3::IDENTITY);
        let s = 3f64.sqrt();
        let want = [[2.0, s, 0.0, 0.0], [s, 2.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]];
        for i in 0..4 {
            for j in 0..4 {
                assert!((l[i][j] - want[i][j]).abs() < 1e-15);
            }
        }
        assert!(lorentz_residual(&l) < 1e-14);
    }

    #[test]
    fn algorithm_names_round_trip() {
        for alg in SqrtAlgorithm::ALL {
            assert_eq!(alg.as_str().parse::<SqrtAlgorithm>().unwrap(), alg);
        }
        assert!("mathematica".parse::<SqrtAlgorithm>().is_err());
    }
}
