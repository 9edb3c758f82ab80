//! Uniform grids over a chart and finite-difference stencils.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{Bound, Chart};
use crate::mat3::{SymMat3, Vec3};

/// Grid parameters as given in a config.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub chart: Chart,
    pub points: [usize; 3],
    pub ghosts: usize,
}

/// Minimum number of points along an active axis.
pub const MIN_POINTS: usize = 9;

/// A grid with ghost padding.
///
/// Storage is point-major with the first coordinate slowest and covers the
/// padded block. Ghost layers are added on a side only where the chart admits
/// the extra coordinates (e.g. not across `r = 0`); sides without padding use
/// one-sided stencils instead.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub spec: GridSpec,
    pub spacing: [f64; 3],
    /// Coordinate of the first physical point per axis.
    pub origin: [f64; 3],
    pub pad_lo: [usize; 3],
    pub pad_hi: [usize; 3],
    pub shape: [usize; 3],
}

impl Grid {
    pub fn new(spec: GridSpec) -> Result<Self> {
        spec.chart.validate()?;
        if spec.ghosts < 2 {
            return Err(Error::config("grid.ghosts", "at least 2 ghost layers are required by the 5-point stencils"));
        }
        let mut spacing = [0.0; 3];
        let mut origin = [0.0; 3];
        let mut pad_lo = [0; 3];
        let mut pad_hi = [0; 3];
        let mut shape = [0; 3];
        for axis in 0..3 {
            let n = spec.points[axis];
            let (lo, hi) = (spec.chart.lower[axis], spec.chart.upper[axis]);
            let name = &spec.chart.coords[axis];
            if n == 0 {
                return Err(Error::config("grid.points", format!("axis `{name}` has no points")));
            }
            if n == 1 {
                origin[axis] = 0.5 * (lo + hi);
                shape[axis] = 1;
                continue;
            }
            if n < MIN_POINTS {
                return Err(Error::config(
                    "grid.points",
                    format!("axis `{name}` needs at least {MIN_POINTS} points (or exactly 1), got {n}"),
                ));
            }
            if !(hi > lo) {
                return Err(Error::config("chart.upper", format!("axis `{name}` has {n} points but zero width")));
            }
            let h = (hi - lo) / (n - 1) as f64;
            spacing[axis] = h;
            origin[axis] = lo;
            let g = spec.ghosts;
            pad_lo[axis] = if spec.chart.admits(axis, lo - g as f64 * h) { g } else { 0 };
            pad_hi[axis] = if spec.chart.admits(axis, hi + g as f64 * h) { g } else { 0 };
            shape[axis] = n + pad_lo[axis] + pad_hi[axis];
        }
        Ok(Self { spec, spacing, origin, pad_lo, pad_hi, shape })
    }

    pub fn chart(&self) -> &Chart {
        &self.spec.chart
    }

    pub fn points(&self) -> [usize; 3] {
        self.spec.points
    }

    pub fn is_active(&self, axis: usize) -> bool {
        self.spec.points[axis] > 1
    }

    /// Number of stored (padded) points.
    pub fn len(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn physical_len(&self) -> usize {
        self.spec.points.iter().product()
    }

    pub fn flat(&self, idx: [usize; 3]) -> usize {
        (idx[0] * self.shape[1] + idx[1]) * self.shape[2] + idx[2]
    }

    pub fn unflat(&self, mut flat: usize) -> [usize; 3] {
        let c = flat % self.shape[2];
        flat /= self.shape[2];
        [flat / self.shape[1], flat % self.shape[1], c]
    }

    /// Coordinates of a stored point.
    pub fn coords(&self, idx: [usize; 3]) -> [f64; 3] {
        let mut x = [0.0; 3];
        for axis in 0..3 {
            x[axis] = self.origin[axis] + (idx[axis] as f64 - self.pad_lo[axis] as f64) * self.spacing[axis];
        }
        x
    }

    pub fn coords_flat(&self, flat: usize) -> [f64; 3] {
        self.coords(self.unflat(flat))
    }

    /// Stored index of physical point `p` (0-based along each axis).
    pub fn stored_index(&self, p: [usize; 3]) -> [usize; 3] {
        [p[0] + self.pad_lo[0], p[1] + self.pad_lo[1], p[2] + self.pad_lo[2]]
    }

    /// Flat stored indices of the physical points, first coordinate slowest.
    pub fn physical_flat(&self) -> Vec<usize> {
        let n = self.spec.points;
        let mut out = Vec::with_capacity(self.physical_len());
        for a in 0..n[0] {
            for b in 0..n[1] {
                for c in 0..n[2] {
                    out.push(self.flat(self.stored_index([a, b, c])));
                }
            }
        }
        out
    }

    /// Evaluates `f` at every stored point, in parallel.
    pub fn map<T: Send, F>(&self, f: F) -> Result<Vec<T>>
    where
        F: Fn([f64; 3]) -> Result<T> + Sync,
    {
        (0..self.len()).into_par_iter().map(|i| f(self.coords_flat(i))).collect()
    }

    /// Evaluates an expression at every stored point.
    pub fn eval(&self, e: &Bound) -> Result<Vec<f64>> {
        self.map(|x| e.eval(x))
    }
}

/// Values that stencils can combine linearly.
pub trait Linear: Copy + Send + Sync {
    fn zero() -> Self;
    fn axpy(&mut self, a: f64, x: &Self);
}

impl Linear for f64 {
    fn zero() -> Self {
        0.0
    }
    fn axpy(&mut self, a: f64, x: &Self) {
        *self += a * x;
    }
}

impl Linear for Vec3 {
    fn zero() -> Self {
        Vec3::ZERO
    }
    fn axpy(&mut self, a: f64, x: &Self) {
        for i in 0..3 {
            self.0[i] += a * x.0[i];
        }
    }
}

impl Linear for SymMat3 {
    fn zero() -> Self {
        SymMat3::ZERO
    }
    fn axpy(&mut self, a: f64, x: &Self) {
        for i in 0..6 {
            self.0[i] += a * x.0[i];
        }
    }
}

impl<T: Linear, const N: usize> Linear for [T; N] {
    fn zero() -> Self {
        [T::zero(); N]
    }
    fn axpy(&mut self, a: f64, x: &Self) {
        for (s, v) in self.iter_mut().zip(x) {
            s.axpy(a, v);
        }
    }
}

/// Finite-difference weights for the derivative of order `m` at `x0` using
/// nodes `xs` (Fornberg's recursion).
pub fn fornberg_weights(x0: f64, xs: &[f64], m: usize) -> Vec<f64> {
    let n = xs.len();
    let mut c = vec![vec![0.0; m + 1]; n];
    let mut c1 = 1.0;
    let mut c4 = xs[0] - x0;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - x0;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[m]).collect()
}

/// Stencil window (first node, weights) for position `i` of `n` points.
///
/// First derivatives use 5 nodes, centred when possible. Second derivatives
/// use the centred 5-node stencil, or 6 nodes against an edge, keeping fourth
/// order everywhere.
fn window(i: usize, n: usize, order: usize) -> (usize, Vec<f64>) {
    let width = if order == 1 || (i >= 2 && i + 2 < n) { 5 } else { 6 };
    let start = i.saturating_sub(2).min(n - width);
    let xs: Vec<f64> = (start..start + width).map(|k| k as f64).collect();
    (start, fornberg_weights(i as f64, &xs, order))
}

/// Derivative of order 1 or 2 along `axis`, fourth-order accurate.
pub fn fd_derivative<T: Linear>(grid: &Grid, field: &[T], axis: usize, order: usize) -> Result<Vec<T>> {
    assert!(order == 1 || order == 2, "derivative order must be 1 or 2");
    assert_eq!(field.len(), grid.len(), "field does not match grid");
    let n = grid.shape[axis];
    let needed = if order == 1 { 5 } else { 6 };
    if !grid.is_active(axis) || n < needed {
        return Err(Error::InsufficientGhost { axis, needed, available: n });
    }
    let scale = grid.spacing[axis].powi(order as i32).recip();
    let windows: Vec<(usize, Vec<f64>)> = (0..n).map(|i| window(i, n, order)).collect();
    let stride = match axis {
        0 => grid.shape[1] * grid.shape[2],
        1 => grid.shape[2],
        _ => 1,
    };
    let out = (0..grid.len())
        .into_par_iter()
        .map(|flat| {
            let i = grid.unflat(flat)[axis];
            let (start, w) = &windows[i];
            let base = flat - i * stride;
            let mut acc = T::zero();
            for (k, wk) in w.iter().enumerate() {
                acc.axpy(wk * scale, &field[base + (start + k) * stride]);
            }
            acc
        })
        .collect();
    Ok(out)
}

/// `∂_a∂_b` for every pair: diagonal entries use the second-derivative
/// stencil, mixed ones nest first derivatives (which commute exactly).
pub fn fd_hessian<T: Linear>(grid: &Grid, field: &[T], first: &[Vec<T>; 3]) -> Result<[[Vec<T>; 3]; 3]> {
    let mut out: [[Vec<T>; 3]; 3] = Default::default();
    for a in 0..3 {
        out[a][a] = fd_derivative(grid, field, a, 2)?;
        for b in 0..a {
            let mixed = fd_derivative(grid, &first[b], a, 1)?;
            out[b][a] = mixed.clone();
            out[a][b] = mixed;
        }
    }
    Ok(out)
}

/// All three first derivatives.
pub fn fd_gradient<T: Linear>(grid: &Grid, field: &[T]) -> Result<[Vec<T>; 3]> {
    Ok([fd_derivative(grid, field, 0, 1)?, fd_derivative(grid, field, 1, 1)?, fd_derivative(grid, field, 2, 1)?])
}

/// Evaluates `∂e/∂coord` at every stored point.
pub fn analytic_derivative(grid: &Grid, e: &Bound, coord: usize) -> Result<Vec<f64>> {
    grid.eval(&e.diff(coord))
}

/// Export-facing field over the physical points only.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridField {
    pub name: String,
    /// Index positions, `u` up and `d` down, e.g. `dd` or `ud`; empty for scalars.
    pub index_flags: String,
    pub components: usize,
    /// Point-major values, `components` per point.
    pub data: Vec<f64>,
}

/// Flattens a value into export components.
pub trait Components {
    const COUNT: usize;
    fn write(&self, out: &mut Vec<f64>);
}

impl Components for f64 {
    const COUNT: usize = 1;
    fn write(&self, out: &mut Vec<f64>) {
        out.push(*self);
    }
}

impl Components for Vec3 {
    const COUNT: usize = 3;
    fn write(&self, out: &mut Vec<f64>) {
        out.extend_from_slice(&self.0);
    }
}

impl Components for SymMat3 {
    const COUNT: usize = 6;
    fn write(&self, out: &mut Vec<f64>) {
        out.extend_from_slice(&self.0);
    }
}

impl Components for crate::mat3::Mat3 {
    const COUNT: usize = 9;
    fn write(&self, out: &mut Vec<f64>) {
        out.extend(self.0.iter().flatten());
    }
}

impl<T: Components, const N: usize> Components for [T; N] {
    const COUNT: usize = N * T::COUNT;
    fn write(&self, out: &mut Vec<f64>) {
        self.iter().for_each(|v| v.write(out));
    }
}

impl GridField {
    /// Collects `values` (one per physical point, in physical order).
    pub fn from_values<T: Components>(name: &str, index_flags: &str, values: impl IntoIterator<Item = T>) -> Self {
        let mut data = Vec::new();
        for v in values {
            v.write(&mut data);
        }
        Self { name: name.to_string(), index_flags: index_flags.to_string(), components: T::COUNT, data }
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.data[i * self.components..(i + 1) * self.components]
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.components.max(1)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}
