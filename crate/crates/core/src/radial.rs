//! Cell-centered radial grids and the differential and integral operators
//! acting on radially symmetric functions of `x ∈ ℝ³`.
//!
//! A radial function `u(|x|)` is stored by its samples at the cell centers
//! `r_i = (i + 1/2)·Δr`, `Δr = r_max / n`. There is no node at the origin.
//! Everything beyond `r_max` is treated as zero.

use std::f64::consts::PI;

use crate::error::{invalid, Result};

/// Smallest node count accepted by [`RadialGrid::new`].
pub const MIN_NODES: usize = 16;

/// Uniform cell-centered grid on `(0, r_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    r_max: f64,
    n: usize,
}

impl RadialGrid {
    pub fn new(r_max: f64, n: usize) -> Result<Self> {
        if !(r_max.is_finite() && r_max > 0.0) {
            return Err(invalid(format!("r_max must be positive, got {r_max}")));
        }
        if n < MIN_NODES {
            return Err(invalid(format!("need at least {MIN_NODES} nodes, got {n}")));
        }
        Ok(Self { r_max, n })
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Grid spacing `Δr`.
    pub fn spacing(&self) -> f64 {
        self.r_max / self.n as f64
    }

    /// Cell center `r_i = (i + 1/2)·Δr`.
    #[inline]
    pub fn node(&self, i: usize) -> f64 {
        (i as f64 + 0.5) * self.spacing()
    }

    /// Cell face `r_{i-1/2} = i·Δr`; `face(n)` is `r_max`.
    #[inline]
    pub fn face(&self, i: usize) -> f64 {
        i as f64 * self.spacing()
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.node(i))
    }

    /// Same node count on `(0, factor·r_max]`.
    pub fn dilated(&self, factor: f64) -> Result<Self> {
        Self::new(self.r_max * factor, self.n)
    }
}

/// Convenience constructor mirroring [`RadialGrid::new`].
pub fn make_grid(r_max: f64, n: usize) -> Result<RadialGrid> {
    RadialGrid::new(r_max, n)
}

/// Samples of a radial function on a [`RadialGrid`].
///
/// Densities (`u`, `g`, `μ`) are non-negative; derived quantities such as
/// derivatives and Laplacians are signed, so the sign is checked by the
/// operations that need it rather than by the type.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialField {
    grid: RadialGrid,
    values: Vec<f64>,
}

impl RadialField {
    pub fn new(grid: RadialGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(invalid(format!(
                "field has {} values but the grid has {} nodes",
                values.len(),
                grid.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(invalid(format!("non-finite field value {v}")));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: RadialGrid) -> Self {
        Self {
            grid,
            values: vec![0.0; grid.len()],
        }
    }

    pub fn from_fn(grid: RadialGrid, f: impl Fn(f64) -> f64) -> Self {
        let values = grid.nodes().map(f).collect();
        Self { grid, values }
    }

    pub fn from_fn_indexed(grid: RadialGrid, f: impl Fn(usize) -> f64) -> Self {
        let values = (0..grid.len()).map(f).collect();
        Self { grid, values }
    }

    pub(crate) fn from_raw(grid: RadialGrid, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        Self { grid, values }
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Pointwise product with another field on the same grid.
    pub fn mul(&self, other: &RadialField) -> Result<Self> {
        self.check_same_grid(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .collect();
        Ok(Self::from_raw(self.grid, values))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        self.map(|v| factor * v)
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|&v| v >= 0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    /// Linear interpolation in `r`; even extension below the first node and
    /// zero beyond `r_max`.
    pub fn interpolate(&self, r: f64) -> f64 {
        let h = self.grid.spacing();
        let r = r.abs();
        if r > self.grid.r_max() {
            return 0.0;
        }
        let s = r / h - 0.5;
        if s <= 0.0 {
            return self.values[0];
        }
        let i = s.floor() as usize;
        if i + 1 >= self.values.len() {
            return self.values[self.values.len() - 1];
        }
        let t = s - i as f64;
        (1.0 - t) * self.values[i] + t * self.values[i + 1]
    }

    pub(crate) fn check_same_grid(&self, other: &RadialField) -> Result<()> {
        if self.grid != other.grid {
            return Err(invalid("fields live on different grids"));
        }
        Ok(())
    }

    pub(crate) fn require_nonnegative(&self, what: &str) -> Result<()> {
        match self.values.iter().find(|&&v| v < 0.0) {
            Some(v) => Err(invalid(format!("{what} must be non-negative, found {v}"))),
            None => Ok(()),
        }
    }
}

/// Midpoint rule for `∫_{ℝ³} f dx = ∫ 4πr² f(r) dr`.
pub fn integrate_radial(f: &RadialField) -> f64 {
    integrate_values(f.grid(), f.values())
}

pub(crate) fn integrate_values(grid: &RadialGrid, values: &[f64]) -> f64 {
    let h = grid.spacing();
    let sum: f64 = values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let r = grid.node(i);
            r * r * v
        })
        .sum();
    4.0 * PI * h * sum
}

/// `∂_r f` by second-order differences.
///
/// The first node uses the even reflection `f(-r_0) = f(r_0)`; the last node
/// uses the one-sided three-point formula.
pub fn radial_derivative(f: &RadialField) -> RadialField {
    let mut out = vec![0.0; f.values().len()];
    derivative_into(f.grid(), f.values(), &mut out);
    RadialField::from_raw(*f.grid(), out)
}

pub(crate) fn derivative_into(grid: &RadialGrid, f: &[f64], out: &mut [f64]) {
    let n = f.len();
    let inv2h = 0.5 / grid.spacing();
    out[0] = (f[1] - f[0]) * inv2h;
    for i in 1..n - 1 {
        out[i] = (f[i + 1] - f[i - 1]) * inv2h;
    }
    out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2h;
}

/// Radial Laplacian `f'' + (2/r) f'` in flux form.
///
/// `Δf_i = 3 (F_{i+1/2} - F_{i-1/2}) / (r_{i+1/2}³ - r_{i-1/2}³)` with face
/// fluxes `F = r² ∂_r f`. The flux through the origin vanishes, which is the
/// even reflection at `r = 0`. Past the last node a ghost value is obtained by
/// quadratic extrapolation, so `Δ(r²) = 6` holds exactly at every node.
pub fn radial_laplacian(f: &RadialField) -> RadialField {
    let mut out = vec![0.0; f.values().len()];
    laplacian_into(f.grid(), f.values(), &mut out);
    RadialField::from_raw(*f.grid(), out)
}

pub(crate) fn laplacian_into(grid: &RadialGrid, f: &[f64], out: &mut [f64]) {
    let n = f.len();
    let h = grid.spacing();
    let ghost = 3.0 * f[n - 1] - 3.0 * f[n - 2] + f[n - 3];
    let mut flux_left = 0.0;
    for i in 0..n {
        let right = if i + 1 < n { f[i + 1] } else { ghost };
        let face = grid.face(i + 1);
        let flux_right = face * face * (right - f[i]) / h;
        let inner = grid.face(i);
        let shell = face * face * face - inner * inner * inner;
        out[i] = 3.0 * (flux_right - flux_left) / shell;
        flux_left = flux_right;
    }
}

/// `(∫ u^p dx)^{1/p}` for non-negative `u`.
pub fn lp_norm(u: &RadialField, p: f64) -> Result<f64> {
    if !(p > 0.0) {
        return Err(invalid(format!("exponent must be positive, got {p}")));
    }
    u.require_nonnegative("u")?;
    Ok(power_integral(u.grid(), u.values(), p).powf(1.0 / p))
}

/// `∫ u^p dx` without the outer root.
pub(crate) fn power_integral(grid: &RadialGrid, values: &[f64], p: f64) -> f64 {
    let h = grid.spacing();
    let sum: f64 = values
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let r = grid.node(i);
            r * r * v.powf(p)
        })
        .sum();
    4.0 * PI * h * sum
}
