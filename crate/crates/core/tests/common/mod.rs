// Shared helpers for the integration tests. Random inputs are generated here
// rather than with the library's own generators, and reference values come
// from nalgebra.
#![allow(dead_code)]

use std::path::PathBuf;

use bimetric::config::flat_config_text;
use bimetric::{Mat3, SymMat3, Vec3};
use nalgebra::{Matrix3, Matrix4, SymmetricEigen, Vector3};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/configs").join(name)
}

pub fn na(m: &Mat3) -> Matrix3<f64> {
    Matrix3::from_fn(|i, j| m.0[i][j])
}

pub fn na_sym(s: &SymMat3) -> Matrix3<f64> {
    Matrix3::from_fn(|i, j| s.get(i, j))
}

pub fn na_vec(v: &Vec3) -> Vector3<f64> {
    Vector3::new(v.0[0], v.0[1], v.0[2])
}

pub fn from_na(m: &Matrix3<f64>) -> Mat3 {
    Mat3(std::array::from_fn(|i| std::array::from_fn(|j| m[(i, j)])))
}

pub fn sym_from_na(m: &Matrix3<f64>) -> SymMat3 {
    let s = (m + m.transpose()) * 0.5;
    SymMat3([s[(0, 0)], s[(0, 1)], s[(0, 2)], s[(1, 1)], s[(1, 2)], s[(2, 2)]])
}

pub fn max_abs(m: &Matrix3<f64>) -> f64 {
    m.amax()
}

/// Haar rotation from the QR factorization of a Gaussian-like matrix.
pub fn rotation(rng: &mut impl Rng) -> Matrix3<f64> {
    loop {
        // sum of uniforms is close enough to Gaussian for orientation sampling
        let g = Matrix3::from_fn(|_, _| (0..6).map(|_| rng.gen_range(-1.0..1.0)).sum::<f64>());
        if g.determinant().abs() < 1e-3 {
            continue;
        }
        let qr = g.qr();
        let (mut q, r) = (qr.q(), qr.r());
        for j in 0..3 {
            if r[(j, j)] < 0.0 {
                q.column_mut(j).neg_mut();
            }
        }
        if q.determinant() < 0.0 {
            q.column_mut(0).neg_mut();
        }
        return q;
    }
}

/// SPD matrix with eigenvalues `10^a·[1, t, c]`, `c ≤ max_cond` log-uniform.
pub fn spd(rng: &mut impl Rng, max_cond: f64) -> Matrix3<f64> {
    let a: f64 = rng.gen_range(-2.0..2.0);
    let c = 10f64.powf(rng.gen_range(0.0..max_cond.log10()));
    let t = 1.0 + (c - 1.0) * rng.gen::<f64>();
    let q = rotation(rng);
    q * Matrix3::from_diagonal(&Vector3::new(1.0, t, c)) * 10f64.powf(a) * q.transpose()
}

/// Isotropic matrix plus a relative perturbation between `1e-16` and `1e-3`,
/// sometimes with an exactly repeated pair of eigenvalues.
pub fn near_isotropic(rng: &mut impl Rng) -> Matrix3<f64> {
    let c = 10f64.powf(rng.gen_range(-2.0..2.0));
    let eps = 10f64.powf(rng.gen_range(-16.0..-3.0));
    if rng.gen_bool(0.3) {
        let q = rotation(rng);
        return q * Matrix3::from_diagonal(&Vector3::new(c, c, c * (1.0 + eps))) * q.transpose();
    }
    let d = Matrix3::from_fn(|_, _| rng.gen_range(-1.0..1.0));
    Matrix3::identity() * c + (d + d.transpose()) * (0.5 * c * eps)
}

/// Invertible matrix with singular values spanning at most `max_cond` and
/// either sign of determinant.
pub fn invertible(rng: &mut impl Rng, max_cond: f64) -> Matrix3<f64> {
    let s = spd(rng, max_cond);
    let m = rotation(rng) * s;
    if rng.gen_bool(0.5) {
        -m
    } else {
        m
    }
}

/// Upper-triangular vielbein with positive diagonal.
pub fn vielbein(rng: &mut impl Rng) -> Mat3 {
    let mut e = Mat3::ZERO;
    for i in 0..3 {
        e.0[i][i] = 10f64.powf(rng.gen_range(-0.5..0.5));
        for j in i + 1..3 {
            e.0[i][j] = rng.gen_range(-1.5..1.5);
        }
    }
    e
}

/// Upper-triangular vielbein with diagonal in `[0.5, 2]` and off-diagonal
/// entries in `[-1, 1]`; its metric has condition number below about `2e2`.
pub fn moderate_vielbein(rng: &mut impl Rng) -> Mat3 {
    let mut e = Mat3::ZERO;
    for i in 0..3 {
        e.0[i][i] = rng.gen_range(0.5..2.0);
        for j in i + 1..3 {
            e.0[i][j] = rng.gen_range(-1.0..1.0);
        }
    }
    e
}

/// Uniform point of the ball of radius `r`.
pub fn ball(rng: &mut impl Rng, r: f64) -> Vec3 {
    loop {
        let v = Vec3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if v.norm_sq() <= 1.0 {
            return v * r;
        }
    }
}

pub fn oracle_sqrt(a: &Matrix3<f64>) -> Matrix3<f64> {
    let e = SymmetricEigen::new(*a);
    e.eigenvectors * Matrix3::from_diagonal(&e.eigenvalues.map(f64::sqrt)) * e.eigenvectors.transpose()
}

pub fn oracle_eigenvalues(a: &Matrix3<f64>) -> [f64; 3] {
    let mut v: Vec<f64> = SymmetricEigen::new(*a).eigenvalues.iter().copied().collect();
    v.sort_by(|x, y| y.total_cmp(x));
    [v[0], v[1], v[2]]
}

/// `m = p·q` from the SVD.
pub fn oracle_polar(m: &Matrix3<f64>) -> (Matrix3<f64>, Matrix3<f64>) {
    let svd = m.svd(true, true);
    let (u, vt) = (svd.u.unwrap(), svd.v_t.unwrap());
    (u * Matrix3::from_diagonal(&svd.singular_values) * u.transpose(), u * vt)
}

pub fn boost(p: &Vector3<f64>) -> (f64, Matrix3<f64>) {
    let lambda = (1.0 + p.norm_squared()).sqrt();
    (lambda, Matrix3::identity() + p * p.transpose() / (1.0 + lambda))
}

/// The rotation that makes `geᵀ·B·R·fe` symmetric: the orthogonal polar
/// factor of `((ge·fe⁻¹)ᵀ·B)⁻¹`.
pub fn oracle_rotation(ge: &Mat3, fe: &Mat3, p: &Vec3) -> Matrix3<f64> {
    let (_, b) = boost(&na_vec(p));
    let rbar = (na(ge) * na(fe).try_inverse().unwrap()).transpose() * b;
    oracle_polar(&rbar.try_inverse().unwrap()).1
}

pub fn eta() -> Matrix4<f64> {
    Matrix4::from_diagonal(&nalgebra::Vector4::new(-1.0, 1.0, 1.0, 1.0))
}

/// `[[α, 0], [E·β, E]]`.
pub fn vielbein4(lapse: f64, shift: &Vec3, e: &Mat3) -> Matrix4<f64> {
    let e = na(e);
    let eb = e * na_vec(shift);
    let mut m = Matrix4::zeros();
    m[(0, 0)] = lapse;
    for i in 0..3 {
        m[(i + 1, 0)] = eb[i];
        for j in 0..3 {
            m[(i + 1, j + 1)] = e[(i, j)];
        }
    }
    m
}

/// Conformally flat `γ̄ = e^{0.4 r²} δ` in Cartesian coordinates with its
/// consistent connection, on an `n³` grid over `[-1, 1]³`.
pub fn conformal_config(n: usize, derivatives: &str, sectors: &str) -> String {
    let mut s = flat_config_text([n, n, n]);
    for k in ["gEBS_11", "gEBS_22", "gEBS_33"] {
        s = s.replace(&format!("ansatz.{k} = \"1\""), &format!("ansatz.{k} = \"exp(0.2*(x^2+y^2+z^2))\""));
    }
    for (k, c) in [("gLam_1", "x"), ("gLam_2", "y"), ("gLam_3", "z")] {
        s = s.replace(&format!("ansatz.{k} = \"0\""), &format!("ansatz.{k} = \"-0.4*{c}*exp(-0.4*(x^2+y^2+z^2))\""));
    }
    s + &format!("options.derivatives = {derivatives}\noptions.compute_geometry_of = {sectors}\n")
}

/// Ricci tensor of `e^{4ψ} δ` with `ψ = 0.1 r²`:
/// `R_ij = −2∂_i∂_jψ + 4∂_iψ∂_jψ − (2∇²ψ + 4|∇ψ|²)δ_ij`.
pub fn conformal_ricci_exact(x: [f64; 3]) -> SymMat3 {
    let r2: f64 = x.iter().map(|v| v * v).sum();
    let mut out = SymMat3::ZERO;
    for i in 0..3 {
        for j in i..3 {
            let d = if i == j { 1.0 } else { 0.0 };
            out.set(i, j, -0.4 * d + 0.16 * x[i] * x[j] - (1.2 + 0.16 * r2) * d);
        }
    }
    out
}

/// Largest value of a measured quantity against its bound.
pub struct Worst {
    pub name: &'static str,
    pub value: f64,
    pub bound: f64,
}

impl Worst {
    pub fn new(name: &'static str, bound: f64) -> Self {
        Self { name, value: 0.0, bound }
    }

    pub fn record(&mut self, v: f64) {
        // NaN must count as a failure
        if v.is_nan() || v > self.value {
            self.value = if v.is_nan() { f64::INFINITY } else { v };
        }
    }

    pub fn ok(&self) -> bool {
        self.value <= self.bound
    }
}

/// Prints one result line per criterion and fails if any part failed.
pub fn report(criterion: u32, title: &str, parts: &[&Worst], extra: &str) {
    let ok = parts.iter().all(|w| w.ok());
    let status = if ok { "PASS" } else { "FAIL" };
    println!("criterion {criterion} {status} {title}{extra}");
    for w in parts {
        println!("    {:<4} {:<46} {:>10.3e}  (bound {:.1e})", if w.ok() { "ok" } else { "FAIL" }, w.name, w.value, w.bound);
    }
    let failed: Vec<&str> = parts.iter().filter(|w| !w.ok()).map(|w| w.name).collect();
    assert!(failed.is_empty(), "criterion {criterion} failed: {}", failed.join(", "));
}
