//! Matrix-valued convolution kernels `b^{ij}(v)` and numerical checks of the
//! two structural hypotheses the non-local inequality relies on:
//!
//! * evenness and positive semi-definiteness, `b(v) = b(-v)`, `ξᵀ b(v) ξ ≥ 0`;
//! * the distributional identity `-∂_i ∂_j b^{ij} = δ₀`.
//!
//! Two kernels are built in: the isotropic Coulomb kernel `δ_ij / (4π|v|)`
//! and the Landau projection kernel `(L / 8π|v|)(δ_ij - v_i v_j / |v|²)`.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

pub type Mat3 = [[f64; 3]; 3];

pub const ZERO3: Mat3 = [[0.0; 3]; 3];

/// Sub-cells per axis used when averaging a kernel over a grid cell.
pub const CELL_SUBSAMPLES: usize = 5;

pub trait MatrixKernel: Send + Sync {
    /// `b(v)` for `v ≠ 0`.
    fn evaluate(&self, v: [f64; 3]) -> Result<Mat3>;

    /// `d` in `b(λv) = λ^d b(v)`.
    fn homogeneity_degree(&self) -> f64;

    fn name(&self) -> String;
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CoulombKernel;

impl MatrixKernel for CoulombKernel {
    fn evaluate(&self, v: [f64; 3]) -> Result<Mat3> {
        let r = norm(v);
        if r == 0.0 {
            return Err(Error::SingularPoint);
        }
        let d = 1.0 / (4.0 * PI * r);
        Ok([[d, 0.0, 0.0], [0.0, d, 0.0], [0.0, 0.0, d]])
    }

    fn homogeneity_degree(&self) -> f64 {
        -1.0
    }

    fn name(&self) -> String {
        "coulomb".into()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandauKernel {
    scale: f64,
}

impl LandauKernel {
    pub fn scale(&self) -> f64 {
        self.scale
    }
}

impl MatrixKernel for LandauKernel {
    fn evaluate(&self, v: [f64; 3]) -> Result<Mat3> {
        let r2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        if r2 == 0.0 {
            return Err(Error::SingularPoint);
        }
        let r = r2.sqrt();
        let c = self.scale / (8.0 * PI * r);
        let mut m = ZERO3;
        for i in 0..3 {
            for j in 0..3 {
                let delta = if i == j { 1.0 } else { 0.0 };
                m[i][j] = c * (delta - v[i] * v[j] / r2);
            }
        }
        Ok(m)
    }

    fn homogeneity_degree(&self) -> f64 {
        -1.0
    }

    fn name(&self) -> String {
        format!("landau(L={})", self.scale)
    }
}

pub fn coulomb_kernel() -> CoulombKernel {
    CoulombKernel
}

pub fn landau_kernel(scale: f64) -> Result<LandauKernel> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(invalid(format!(
            "Landau scale L must be positive, got {scale}"
        )));
    }
    Ok(LandauKernel { scale })
}

/// Built-in kernel selector used by configuration files and the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum KernelChoice {
    #[default]
    Coulomb,
    Landau,
}

impl KernelChoice {
    /// The Landau kernel is built with `L = 1`.
    pub fn build(self) -> Box<dyn MatrixKernel> {
        match self {
            KernelChoice::Coulomb => Box::new(CoulombKernel),
            KernelChoice::Landau => Box::new(LandauKernel { scale: 1.0 }),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            KernelChoice::Coulomb => "coulomb",
            KernelChoice::Landau => "landau",
        }
    }
}

impl std::str::FromStr for KernelChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coulomb" => Ok(KernelChoice::Coulomb),
            "landau" => Ok(KernelChoice::Landau),
            other => Err(invalid(format!("unknown kernel {other:?}"))),
        }
    }
}

#[inline]
pub(crate) fn norm(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

#[inline]
pub fn quadratic_form(m: &Mat3, xi: [f64; 3]) -> f64 {
    let mut s = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            s += m[i][j] * xi[i] * xi[j];
        }
    }
    s
}

/// Average of `k` over the axis-aligned cube of side `h` centered at `center`.
///
/// Regular cells are sub-sampled at `5³` midpoints. A cell centered on the
/// singularity is handled through homogeneity: with `I(s)` the integral over
/// the centered cube of side `s`, `I(s) = S + 5^{-(3+d)} I(s)` where `S` is
/// the midpoint sum over the 124 off-center sub-cells, so
/// `I(s) = S / (1 - 5^{-(3+d)})`. This requires `d > -3`, i.e. a locally
/// integrable kernel.
pub fn cell_average(k: &dyn MatrixKernel, center: [f64; 3], h: f64) -> Result<Mat3> {
    let m = CELL_SUBSAMPLES;
    let sub = h / m as f64;
    let singular = center == [0.0; 3];
    let mut acc = ZERO3;
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                let off = |i: usize| (i as f64 + 0.5) * sub - 0.5 * h;
                if singular && 2 * a + 1 == m && 2 * b + 1 == m && 2 * c + 1 == m {
                    continue;
                }
                let p = [center[0] + off(a), center[1] + off(b), center[2] + off(c)];
                add_assign(&mut acc, &k.evaluate(p)?, 1.0);
            }
        }
    }
    let count = (m * m * m) as f64;
    let mut scale = 1.0 / count;
    if singular {
        let d = k.homogeneity_degree();
        if !(d > -3.0) {
            return Err(invalid(format!(
                "kernel of degree {d} is not locally integrable in 3D"
            )));
        }
        scale /= 1.0 - (m as f64).powf(-(3.0 + d));
    }
    Ok(scaled(&acc, scale))
}

/// Kernel weight for a lattice offset `index·h`: cell averages on the
/// `3×3×3` block around the singularity, point values elsewhere.
pub(crate) fn lattice_weight(k: &dyn MatrixKernel, index: [i64; 3], h: f64) -> Result<Mat3> {
    let v = [
        index[0] as f64 * h,
        index[1] as f64 * h,
        index[2] as f64 * h,
    ];
    if index.iter().all(|i| i.abs() <= 1) {
        cell_average(k, v, h)
    } else {
        k.evaluate(v)
    }
}

pub(crate) fn add_assign(acc: &mut Mat3, m: &Mat3, w: f64) {
    for i in 0..3 {
        for j in 0..3 {
            acc[i][j] += w * m[i][j];
        }
    }
}

fn scaled(m: &Mat3, s: f64) -> Mat3 {
    let mut out = *m;
    for row in out.iter_mut() {
        for x in row.iter_mut() {
            *x *= s;
        }
    }
    out
}

/// Outcome of the admissibility checks on a kernel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelCheckReport {
    /// `max |b(v) - b(-v)|` over sampled `v`, entrywise.
    pub max_evenness_violation: f64,
    /// `min ξᵀ b(v) ξ / |ξ|²` over sampled pairs.
    pub min_quadratic_form: f64,
    /// `|-∫ b^{ij}(x-y) ∂_i∂_j φ(y) dy - φ(x)|`, when the delta check ran.
    pub delta_identity_error: Option<f64>,
}

impl KernelCheckReport {
    pub fn is_admissible(&self, tol: f64) -> bool {
        self.max_evenness_violation <= tol && self.min_quadratic_form >= -tol
    }
}

pub const MIN_SAMPLES: usize = 100;

/// Randomized check of evenness and positive semi-definiteness.
///
/// `|v|` is log-uniform in `[1e-3, 1e3]` with a uniformly distributed
/// direction; `ξ` is standard normal. Each sample also probes `ξ = v`, the
/// null direction of the Landau projection.
pub fn check_evenness_psd(
    k: &dyn MatrixKernel,
    n_samples: usize,
    seed: u64,
) -> Result<KernelCheckReport> {
    if n_samples < MIN_SAMPLES {
        return Err(invalid(format!(
            "need at least {MIN_SAMPLES} samples, got {n_samples}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = (1e-3f64.ln(), 1e3f64.ln());
    let mut max_even: f64 = 0.0;
    let mut min_q = f64::INFINITY;
    for _ in 0..n_samples {
        let dir = loop {
            let d: [f64; 3] = [
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
            ];
            let n = norm(d);
            if n > 1e-8 {
                break [d[0] / n, d[1] / n, d[2] / n];
            }
        };
        let radius = rng.random_range(lo..hi).exp();
        let v = [dir[0] * radius, dir[1] * radius, dir[2] * radius];
        let xi: [f64; 3] = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];

        let b = k.evaluate(v)?;
        let b_neg = k.evaluate([-v[0], -v[1], -v[2]])?;
        for i in 0..3 {
            for j in 0..3 {
                max_even = max_even.max((b[i][j] - b_neg[i][j]).abs());
            }
        }
        for probe in [xi, v] {
            let n2 = probe.iter().map(|x| x * x).sum::<f64>();
            if n2 > 0.0 {
                min_q = min_q.min(quadratic_form(&b, probe) / n2);
            }
        }
    }
    Ok(KernelCheckReport {
        max_evenness_violation: max_even,
        min_quadratic_form: min_q,
        delta_identity_error: None,
    })
}

/// Smooth test function with analytic second derivatives.
pub trait TestFunction {
    fn value(&self, y: [f64; 3]) -> f64;
    fn hessian(&self, y: [f64; 3]) -> Mat3;
    /// Center of the region carrying the function's mass.
    fn center(&self) -> [f64; 3];
}

/// `φ(y) = exp(-|y - c|²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianBump {
    pub center: [f64; 3],
}

impl GaussianBump {
    pub fn at(center: [f64; 3]) -> Self {
        Self { center }
    }
}

impl TestFunction for GaussianBump {
    fn value(&self, y: [f64; 3]) -> f64 {
        let z = [
            y[0] - self.center[0],
            y[1] - self.center[1],
            y[2] - self.center[2],
        ];
        (-(z[0] * z[0] + z[1] * z[1] + z[2] * z[2])).exp()
    }

    fn hessian(&self, y: [f64; 3]) -> Mat3 {
        let z = [
            y[0] - self.center[0],
            y[1] - self.center[1],
            y[2] - self.center[2],
        ];
        let e = (-(z[0] * z[0] + z[1] * z[1] + z[2] * z[2])).exp();
        let mut m = ZERO3;
        for i in 0..3 {
            for j in 0..3 {
                let delta = if i == j { 2.0 } else { 0.0 };
                m[i][j] = (4.0 * z[i] * z[j] - delta) * e;
            }
        }
        m
    }

    fn center(&self) -> [f64; 3] {
        self.center
    }
}

/// Quadrature value of `-∫ b^{ij}(x - y) ∂_i∂_j φ(y) dy`, which equals `φ(x)`
/// for kernels with `-∂_i∂_j b^{ij} = δ₀` (times `L` for a scaled Landau
/// kernel).
///
/// The lattice has spacing `h = 2·box_half_width / n_per_axis`, contains `x`
/// as a node, and covers the box of that half width around `phi.center()`.
/// Derivatives fall on `φ`, never on the kernel.
pub fn check_delta_identity(
    k: &dyn MatrixKernel,
    phi: &dyn TestFunction,
    x: [f64; 3],
    box_half_width: f64,
    n_per_axis: usize,
) -> Result<f64> {
    if !(box_half_width > 0.0 && box_half_width.is_finite()) || n_per_axis < 4 {
        return Err(invalid(format!(
            "degenerate box: half width {box_half_width}, {n_per_axis} cells per axis"
        )));
    }
    let h = 2.0 * box_half_width / n_per_axis as f64;
    let c = phi.center();
    let range = |axis: usize| {
        let lo = ((c[axis] - box_half_width - x[axis]) / h).ceil() as i64;
        let hi = ((c[axis] + box_half_width - x[axis]) / h).floor() as i64;
        lo..=hi
    };
    let mut total = 0.0;
    for a in range(0) {
        for b in range(1) {
            for cc in range(2) {
                let y = [
                    x[0] + a as f64 * h,
                    x[1] + b as f64 * h,
                    x[2] + cc as f64 * h,
                ];
                let w = lattice_weight(k, [-a, -b, -cc], h)?;
                let hess = phi.hessian(y);
                let mut s = 0.0;
                for i in 0..3 {
                    for j in 0..3 {
                        s += w[i][j] * hess[i][j];
                    }
                }
                total += s;
            }
        }
    }
    Ok(-total * h * h * h)
}
