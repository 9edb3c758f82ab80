//! Fixed-size 3×3 real linear algebra.
//!
//! Everything in the decomposition is expressed with three small value types:
//! [`Vec3`], [`Mat3`] (row-major) and [`SymMat3`] (six independent entries in
//! the order 11, 12, 13, 22, 23, 33). On top of them live the symmetric
//! eigensolver and the three square-root / polar kernels used to extract the
//! rotation of the Lorentz frame.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance::ToleranceProfile;

/// Real 3-vector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec3(pub [f64; 3]);

/// Real 3×3 matrix, row-major.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Mat3(pub [[f64; 3]; 3]);

/// Symmetric 3×3 matrix stored as its upper triangle: 11, 12, 13, 22, 23, 33.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SymMat3(pub [f64; 6]);

/// Eigendecomposition of a symmetric matrix.
///
/// `values` are sorted in descending order and column `i` of `vectors` is the
/// unit eigenvector belonging to `values[i]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenSym3 {
    pub values: [f64; 3],
    pub vectors: Mat3,
}

/// Maps a symmetric index pair to the packed storage slot.
pub const fn sym_index(i: usize, j: usize) -> usize {
    const SLOT: [[usize; 3]; 3] = [[0, 1, 2], [1, 3, 4], [2, 4, 5]];
    SLOT[i][j]
}

/// Packed slot → (row, column) in the upper triangle.
pub const SYM_PAIRS: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

impl Vec3 {
    pub const ZERO: Self = Self([0.0; 3]);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self([x, y, z])
    }

    pub fn dot(&self, other: &Vec3) -> f64 {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Largest absolute component.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn outer(&self, other: &Vec3) -> Mat3 {
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = self.0[i] * other.0[j];
            }
        }
        Mat3(m)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }
}

impl Index<usize> for Vec3 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vec3 {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }
}

impl Mat3 {
    pub const ZERO: Self = Self([[0.0; 3]; 3]);
    pub const IDENTITY: Self = Self([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    pub fn from_rows(rows: [[f64; 3]; 3]) -> Self {
        Self(rows)
    }

    pub fn diag(d: [f64; 3]) -> Self {
        let mut m = Self::ZERO;
        for i in 0..3 {
            m.0[i][i] = d[i];
        }
        m
    }

    /// Rotation by `angle` about the z axis.
    pub fn rot_z(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
    }

    pub fn transpose(&self) -> Mat3 {
        let a = &self.0;
        Mat3([
            [a[0][0], a[1][0], a[2][0]],
            [a[0][1], a[1][1], a[2][1]],
            [a[0][2], a[1][2], a[2][2]],
        ])
    }

    pub fn col(&self, j: usize) -> Vec3 {
        Vec3([self.0[0][j], self.0[1][j], self.0[2][j]])
    }

    pub fn scale(&self, s: f64) -> Mat3 {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|x| *x *= s);
        m
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.0[1][0] == 0.0 && self.0[2][0] == 0.0 && self.0[2][1] == 0.0
    }

    /// Symmetric part `(m + mᵀ)/2`.
    pub fn sym_part(&self) -> SymMat3 {
        let a = &self.0;
        SymMat3([
            a[0][0],
            0.5 * (a[0][1] + a[1][0]),
            0.5 * (a[0][2] + a[2][0]),
            a[1][1],
            0.5 * (a[1][2] + a[2][1]),
            a[2][2],
        ])
    }

    /// Largest entry of `m − mᵀ`.
    pub fn asymmetry(&self) -> f64 {
        let a = &self.0;
        (a[0][1] - a[1][0])
            .abs()
            .max((a[0][2] - a[2][0]).abs())
            .max((a[1][2] - a[2][1]).abs())
    }

    pub fn det(&self) -> f64 {
        det3(self)
    }

    pub fn trace(&self) -> f64 {
        trace3(self)
    }
}

impl Index<(usize, usize)> for Mat3 {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for Mat3 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.0[i][j]
    }
}

impl Add for Mat3 {
    type Output = Mat3;
    fn add(mut self, o: Mat3) -> Mat3 {
        for i in 0..3 {
            for j in 0..3 {
                self.0[i][j] += o.0[i][j];
            }
        }
        self
    }
}

impl Sub for Mat3 {
    type Output = Mat3;
    fn sub(mut self, o: Mat3) -> Mat3 {
        for i in 0..3 {
            for j in 0..3 {
                self.0[i][j] -= o.0[i][j];
            }
        }
        self
    }
}

impl Mul for Mat3 {
    type Output = Mat3;
    fn mul(self, o: Mat3) -> Mat3 {
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = self.0[i][0] * o.0[0][j] + self.0[i][1] * o.0[1][j] + self.0[i][2] * o.0[2][j];
            }
        }
        Mat3(m)
    }
}

impl Mul<Vec3> for Mat3 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        let a = &self.0;
        Vec3([
            a[0][0] * v.0[0] + a[0][1] * v.0[1] + a[0][2] * v.0[2],
            a[1][0] * v.0[0] + a[1][1] * v.0[1] + a[1][2] * v.0[2],
            a[2][0] * v.0[0] + a[2][1] * v.0[1] + a[2][2] * v.0[2],
        ])
    }
}

impl Mul<f64> for Mat3 {
    type Output = Mat3;
    fn mul(self, s: f64) -> Mat3 {
        self.scale(s)
    }
}

impl Neg for Mat3 {
    type Output = Mat3;
    fn neg(self) -> Mat3 {
        self.scale(-1.0)
    }
}

impl SymMat3 {
    pub const ZERO: Self = Self([0.0; 6]);
    pub const IDENTITY: Self = Self([1.0, 0.0, 0.0, 1.0, 0.0, 1.0]);

    pub fn diag(d: [f64; 3]) -> Self {
        Self([d[0], 0.0, 0.0, d[1], 0.0, d[2]])
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[sym_index(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.0[sym_index(i, j)] = v;
    }

    pub fn to_mat3(&self) -> Mat3 {
        let s = &self.0;
        Mat3([[s[0], s[1], s[2]], [s[1], s[3], s[4]], [s[2], s[4], s[5]]])
    }

    pub fn scale(&self, s: f64) -> SymMat3 {
        let mut m = *self;
        m.0.iter_mut().for_each(|x| *x *= s);
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    pub fn trace(&self) -> f64 {
        self.0[0] + self.0[3] + self.0[5]
    }

    pub fn det(&self) -> f64 {
        let [a, b, c, d, e, f] = self.0;
        a * (d * f - e * e) - b * (b * f - e * c) + c * (b * e - d * c)
    }

    /// Inverse via cofactors.
    pub fn inverse(&self, tol: &ToleranceProfile) -> Result<SymMat3> {
        let [a, b, c, d, e, f] = self.0;
        let c00 = d * f - e * e;
        let c01 = c * e - b * f;
        let c02 = b * e - c * d;
        let det = a * c00 + b * c01 + c * c02;
        let scale = self.max_abs();
        if !det.is_finite() || det.abs() <= tol.singular * scale.powi(3) || det == 0.0 {
            return Err(Error::SingularMatrix { det });
        }
        let inv = 1.0 / det;
        Ok(SymMat3([
            c00 * inv,
            c01 * inv,
            c02 * inv,
            (a * f - c * c) * inv,
            (b * c - a * e) * inv,
            (a * d - b * b) * inv,
        ]))
    }

    pub fn mul_vec(&self, v: Vec3) -> Vec3 {
        self.to_mat3() * v
    }

    /// `vᵀ·self·v`.
    pub fn quad(&self, v: Vec3) -> f64 {
        v.dot(&self.mul_vec(v))
    }
}

impl Index<(usize, usize)> for SymMat3 {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.0[sym_index(i, j)]
    }
}

impl Add for SymMat3 {
    type Output = SymMat3;
    fn add(mut self, o: SymMat3) -> SymMat3 {
        for k in 0..6 {
            self.0[k] += o.0[k];
        }
        self
    }
}

impl Sub for SymMat3 {
    type Output = SymMat3;
    fn sub(mut self, o: SymMat3) -> SymMat3 {
        for k in 0..6 {
            self.0[k] -= o.0[k];
        }
        self
    }
}

impl Mul<f64> for SymMat3 {
    type Output = SymMat3;
    fn mul(self, s: f64) -> SymMat3 {
        self.scale(s)
    }
}

impl From<SymMat3> for Mat3 {
    fn from(s: SymMat3) -> Mat3 {
        s.to_mat3()
    }
}

/// `mᵀ·m` as a packed symmetric matrix.
pub fn gram(m: &Mat3) -> SymMat3 {
    let mut s = SymMat3::ZERO;
    for (slot, &(i, j)) in SYM_PAIRS.iter().enumerate() {
        s.0[slot] = (0..3).map(|a| m.0[a][i] * m.0[a][j]).sum();
    }
    s
}

pub fn det3(m: &Mat3) -> f64 {
    let a = &m.0;
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

pub fn trace3(m: &Mat3) -> f64 {
    m.0[0][0] + m.0[1][1] + m.0[2][2]
}

/// Cofactor inverse. Fails when `|det m| ≤ tol.singular·‖m‖³`.
pub fn inv3(m: &Mat3, tol: &ToleranceProfile) -> Result<Mat3> {
    let a = &m.0;
    let c = [
        [
            a[1][1] * a[2][2] - a[1][2] * a[2][1],
            a[0][2] * a[2][1] - a[0][1] * a[2][2],
            a[0][1] * a[1][2] - a[0][2] * a[1][1],
        ],
        [
            a[1][2] * a[2][0] - a[1][0] * a[2][2],
            a[0][0] * a[2][2] - a[0][2] * a[2][0],
            a[0][2] * a[1][0] - a[0][0] * a[1][2],
        ],
        [
            a[1][0] * a[2][1] - a[1][1] * a[2][0],
            a[0][1] * a[2][0] - a[0][0] * a[2][1],
            a[0][0] * a[1][1] - a[0][1] * a[1][0],
        ],
    ];
    let det = a[0][0] * c[0][0] + a[0][1] * c[1][0] + a[0][2] * c[2][0];
    let scale = m.max_abs();
    if !det.is_finite() || det == 0.0 || det.abs() <= tol.singular * scale.powi(3) {
        return Err(Error::SingularMatrix { det });
    }
    Ok(Mat3(c).scale(1.0 / det))
}

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
pub fn eig_sym3(a: &SymMat3) -> Result<EigenSym3> {
    if !a.is_finite() {
        return Err(Error::InvalidInput("eig_sym3: non-finite matrix entry".into()));
    }
    let mut m = a.to_mat3().0;
    let mut v = Mat3::IDENTITY.0;
    let scale = a.max_abs();
    if scale > 0.0 {
        for _sweep in 0..64 {
            let off = m[0][1].abs() + m[0][2].abs() + m[1][2].abs();
            if off <= f64::EPSILON * 1e-3 * scale {
                break;
            }
            for &(p, q) in &[(0usize, 1usize), (0, 2), (1, 2)] {
                let apq = m[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // m ← Jᵀ m J with J the (p, q) plane rotation
                for k in 0..3 {
                    let mkp = m[k][p];
                    let mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..3 {
                    let mpk = m[p][k];
                    let mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                m[p][q] = 0.0;
                m[q][p] = 0.0;
                for row in v.iter_mut() {
                    let vp = row[p];
                    let vq = row[q];
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| m[j][j].total_cmp(&m[i][i]));
    let values = [m[order[0]][order[0]], m[order[1]][order[1]], m[order[2]][order[2]]];
    let mut vectors = Mat3::ZERO;
    for (dst, &src) in order.iter().enumerate() {
        for r in 0..3 {
            vectors.0[r][dst] = v[r][src];
        }
    }
    Ok(EigenSym3 { values, vectors })
}

/// `V·diag(d)·Vᵀ`, symmetric by construction.
fn spectral(vectors: &Mat3, d: [f64; 3]) -> SymMat3 {
    let mut s = SymMat3::ZERO;
    for (slot, &(i, j)) in SYM_PAIRS.iter().enumerate() {
        s.0[slot] = (0..3).map(|k| vectors.0[i][k] * d[k] * vectors.0[j][k]).sum();
    }
    s
}

/// Principal square root of an SPD matrix through its eigendecomposition.
pub fn sqrt_spd_eig(a: &SymMat3, tol: &ToleranceProfile) -> Result<SymMat3> {
    let eig = eig_sym3(a)?;
    let floor = tol.spd * a.trace().abs();
    let min = eig.values[2];
    if !(min > floor) || min <= 0.0 {
        return Err(Error::NotPositiveDefinite { min_eigenvalue: min });
    }
    Ok(spectral(&eig.vectors, eig.values.map(f64::sqrt)))
}

/// Closed-form square root of a 3×3 SPD matrix built from its invariants.
///
/// With `A1 = tr a`, `A2 = (A1² − tr a²)/2`, `A3 = det a` and `k = A1² − 3·A2`,
/// the square root is `√(A1/3)·I` when `k` vanishes; otherwise the largest
/// eigenvalue comes from the trigonometric cubic solution, the invariants
/// `S1, S2, S3` of the root follow, and Cayley–Hamilton gives
/// `S = (S1·S3·I + (S1² − S2)·a − a²) / (S1·S2 − S3)`.
pub fn sqrt_spd_closed(a: &SymMat3, tol: &ToleranceProfile) -> Result<SymMat3> {
    if !a.is_finite() {
        return Err(Error::InvalidInput("sqrt_spd_closed: non-finite matrix entry".into()));
    }
    let am = a.to_mat3();
    let a_sq = am * am;
    let a1 = a.trace();
    let a2 = 0.5 * (a1 * a1 - a_sq.trace());
    let a3 = a.det();
    // λ_min ≥ A3/A2, so this screens out anything at or below the SPD floor.
    if !(a1 > 0.0 && a2 > 0.0 && a3 > 0.0) || a3 / a2 <= tol.spd * a1 {
        return Err(Error::NotPositiveDefinite { min_eigenvalue: if a2 > 0.0 { a3 / a2 } else { a3 } });
    }
    // k = A1² − 3·A2 and l = A1(A1² − 9/2·A2) + 27/2·A3, evaluated through the
    // deviator d = a − (A1/3)·I: k = 3/2·tr(d²), l = 27/2·det(d). Same values,
    // but without the cancellation that zeroes k for near-isotropic input.
    let dev = *a - SymMat3::IDENTITY.scale(a1 / 3.0);
    let d = &dev.0;
    let k = 1.5 * (d[0] * d[0] + d[3] * d[3] + d[5] * d[5] + 2.0 * (d[1] * d[1] + d[2] * d[2] + d[4] * d[4]));
    if k <= tol.k_zero * (a1 * a1).max(1.0) {
        return Ok(SymMat3::IDENTITY.scale((a1 / 3.0).sqrt()));
    }
    let l = 13.5 * dev.det();
    let phi = clamp_unit(l / k.powf(1.5)).acos();
    let lambda = ((a1 + 2.0 * k.sqrt() * (phi / 3.0).cos()) / 3.0).sqrt();
    let s3 = a3.sqrt();
    let s1 = lambda + (-lambda * lambda + a1 + 2.0 * s3 / lambda).max(0.0).sqrt();
    let s2 = 0.5 * (s1 * s1 - a1);
    let den = s1 * s2 - s3;
    if !den.is_finite() || den.abs() <= tol.denominator * s1.powi(3) {
        return Err(Error::DegenerateDenominator { value: den });
    }
    let c_id = s1 * s3;
    let c_a = s1 * s1 - s2;
    let mut s = SymMat3::ZERO;
    for (slot, &(i, j)) in SYM_PAIRS.iter().enumerate() {
        let id = if i == j { c_id } else { 0.0 };
        s.0[slot] = (id + c_a * am.0[i][j] - a_sq.0[i][j]) / den;
    }
    Ok(s)
}

fn clamp_unit(x: f64) -> f64 {
    x.clamp(-1.0, 1.0)
}

/// Left polar decomposition `m = p·q` with `p` SPD and `q` orthogonal.
///
/// `q` is the limit of the scaled Newton iteration `x ← (ζ·x + x⁻ᵀ/ζ)/2`
/// started from `m`, with the Frobenius scaling `ζ = (‖x⁻¹‖/‖x‖)^{1/2}` while
/// far from convergence. Working on `m` directly keeps the accuracy at
/// `cond(m)·ε`; going through the eigenvectors of `m·mᵀ` would square it.
/// `p` is the symmetric part of `m·qᵀ`.
pub fn polar3(m: &Mat3, tol: &ToleranceProfile) -> Result<(SymMat3, Mat3)> {
    if !m.is_finite() {
        return Err(Error::InvalidInput("polar3: non-finite matrix entry".into()));
    }
    let det = m.det();
    let scale = m.max_abs();
    if det == 0.0 || det.abs() <= tol.singular * scale.powi(3) {
        return Err(Error::SingularMatrix { det });
    }
    let mut q = *m;
    let mut scaled = true;
    for _ in 0..64 {
        let inv_t = inv3(&q, &ToleranceProfile { singular: 0.0, ..tol.clone() })?.transpose();
        let zeta = if scaled { (frobenius(&inv_t) / frobenius(&q)).sqrt() } else { 1.0 };
        let next = (q.scale(zeta) + inv_t.scale(1.0 / zeta)).scale(0.5);
        let step = (next - q).max_abs();
        q = next;
        if step <= 1e-2 {
            scaled = false;
        }
        if step <= 8.0 * f64::EPSILON {
            break;
        }
    }
    let p = (*m * q.transpose()).sym_part();
    Ok((p, q))
}

fn frobenius(m: &Mat3) -> f64 {
    m.0.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
}
