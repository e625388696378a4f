//! The two sides of the non-local inequality
//!
//! ```text
//! ∫ g^{p+1} ≤ ((p+1)/p)² ∫ (b^{ij} * g) ∂_i g^{p/2} ∂_j g^{p/2}
//! ```
//!
//! for the Coulomb kernel (radial path, `O(n)`) and for general matrix
//! kernels (3D tensor path, FFT convolution). Also the Maxwellian sharpness
//! ratio and the predicted `d/dt ∫u^p` along the flow.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::kernels::{KernelChoice, MatrixKernel};
use crate::potential::newton_potential;
use crate::radial::{integrate_radial, radial_derivative, RadialField};
use crate::tensor::{kernel_contraction, TensorGrid};

/// Largest tensor grid accepted by the 3D path.
pub const MAX_TENSOR_NODES_PER_AXIS: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FunctionalReport {
    pub p: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub grid_meta: String,
}

/// How the right-hand side is discretized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RhsMethod {
    /// Coulomb kernel on the radial grid of `g`.
    CoulombRadial,
    /// Any built-in kernel on a `n_per_axis³` tensor grid over
    /// `[-box_half_width, box_half_width]³`.
    Tensor {
        kernel: KernelChoice,
        box_half_width: f64,
        n_per_axis: usize,
    },
}

fn check_exponent(p: f64) -> Result<()> {
    if p > 0.0 && p.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("exponent must be positive, got {p}")))
    }
}

#[inline]
fn constant(p: f64) -> f64 {
    let c = (p + 1.0) / p;
    c * c
}

/// `∫ g^{p+1} dx`.
pub fn lhs_power_integral(g: &RadialField, p: f64) -> Result<f64> {
    check_exponent(p)?;
    g.require_nonnegative("g")?;
    Ok(integrate_radial(&g.map(|v| v.powf(p + 1.0))))
}

/// `∫ (G * g) |∂_r g^{p/2}|² dx` without the constant.
fn coulomb_dirichlet(g: &RadialField, p: f64) -> f64 {
    let w = g.map(|v| v.powf(0.5 * p));
    let dw = radial_derivative(&w);
    let phi = newton_potential(g);
    let integrand = RadialField::from_fn_indexed(*g.grid(), |i| {
        let d = dw.values()[i];
        phi.values()[i] * d * d
    });
    integrate_radial(&integrand)
}

/// `((p+1)/p)² ∫ (G * g) |∇g^{p/2}|² dx` on the radial grid.
///
/// `g^{p/2}` is formed pointwise before differencing.
pub fn rhs_coulomb(g: &RadialField, p: f64) -> Result<f64> {
    check_exponent(p)?;
    g.require_nonnegative("g")?;
    Ok(constant(p) * coulomb_dirichlet(g, p))
}

/// `((p+1)/p)² ∫ (b^{ij} * g) ∂_i g^{p/2} ∂_j g^{p/2} dx` on a tensor grid,
/// with `g` interpolated from its radial samples.
pub fn rhs_matrix_kernel_3d(
    g: &RadialField,
    p: f64,
    k: &dyn MatrixKernel,
    box_half_width: f64,
    n_per_axis: usize,
) -> Result<f64> {
    g.require_nonnegative("g")?;
    let (_, rhs) = tensor_sides(|r| g.interpolate(r), p, k, box_half_width, n_per_axis)?;
    Ok(rhs)
}

/// Both sides on the tensor grid for a radial profile.
fn tensor_sides(
    profile: impl Fn(f64) -> f64,
    p: f64,
    k: &dyn MatrixKernel,
    box_half_width: f64,
    n_per_axis: usize,
) -> Result<(f64, f64)> {
    check_exponent(p)?;
    if n_per_axis > MAX_TENSOR_NODES_PER_AXIS {
        return Err(Error::ResourceGuard(format!(
            "{n_per_axis} nodes per axis exceeds the cap of {MAX_TENSOR_NODES_PER_AXIS}"
        )));
    }
    if n_per_axis < 8 || !(box_half_width > 0.0 && box_half_width.is_finite()) {
        return Err(invalid(format!(
            "degenerate tensor grid: half width {box_half_width}, {n_per_axis} nodes per axis"
        )));
    }
    let grid = TensorGrid {
        half_width: box_half_width,
        n: n_per_axis,
    };
    let g = grid.sample_radial(profile);
    let lhs = grid.integrate(&g.iter().map(|v| v.powf(p + 1.0)).collect::<Vec<_>>());
    if g.iter().all(|&v| v == 0.0) {
        return Ok((lhs, 0.0));
    }
    let w: Vec<f64> = g.iter().map(|v| v.powf(0.5 * p)).collect();
    let rhs = constant(p) * kernel_contraction(k, &grid, &g, &w)?;
    Ok((lhs, rhs))
}

fn report(p: f64, lhs: f64, rhs: f64, grid_meta: String) -> Result<FunctionalReport> {
    if !(rhs > 0.0) {
        return Err(Error::DegenerateInput(format!(
            "right-hand side is {rhs}; ratio undefined"
        )));
    }
    Ok(FunctionalReport {
        p,
        lhs,
        rhs,
        ratio: lhs / rhs,
        grid_meta,
    })
}

/// `lhs / rhs` for `g`; the inequality asserts the ratio is at most one.
pub fn inequality_ratio(g: &RadialField, p: f64, method: RhsMethod) -> Result<FunctionalReport> {
    check_exponent(p)?;
    g.require_nonnegative("g")?;
    if g.is_zero() {
        return Err(Error::DegenerateInput("g is identically zero".into()));
    }
    match method {
        RhsMethod::CoulombRadial => {
            let lhs = lhs_power_integral(g, p)?;
            let rhs = rhs_coulomb(g, p)?;
            let grid = g.grid();
            report(
                p,
                lhs,
                rhs,
                format!("radial n={} r_max={}", grid.len(), grid.r_max()),
            )
        }
        RhsMethod::Tensor {
            kernel,
            box_half_width,
            n_per_axis,
        } => {
            let k = kernel.build();
            let (lhs, rhs) = tensor_sides(
                |r| g.interpolate(r),
                p,
                k.as_ref(),
                box_half_width,
                n_per_axis,
            )?;
            report(
                p,
                lhs,
                rhs,
                format!(
                    "tensor kernel={} n={n_per_axis} box={box_half_width}",
                    kernel.as_str()
                ),
            )
        }
    }
}

/// `μ(v) = (2π)^{-3/2} exp(-|v|²/2)`.
pub fn maxwellian(r: f64) -> f64 {
    (2.0 * PI).powf(-1.5) * (-0.5 * r * r).exp()
}

pub const MIN_SHARPNESS_BOX: f64 = 6.0;

/// Both sides for `g = μ` with the Landau kernel (`L = 1`) on a tensor grid.
pub fn maxwellian_report(
    p: f64,
    box_half_width: f64,
    n_per_axis: usize,
) -> Result<FunctionalReport> {
    if !(p >= 1.0) {
        return Err(invalid(format!("sharpness check needs p ≥ 1, got {p}")));
    }
    if !(box_half_width >= MIN_SHARPNESS_BOX) {
        return Err(invalid(format!(
            "box half width {box_half_width} does not capture the Maxwellian (need ≥ {MIN_SHARPNESS_BOX})"
        )));
    }
    let k = KernelChoice::Landau.build();
    let (lhs, rhs) = tensor_sides(maxwellian, p, k.as_ref(), box_half_width, n_per_axis)?;
    report(
        p,
        lhs,
        rhs,
        format!("tensor kernel=landau n={n_per_axis} box={box_half_width}"),
    )
}

/// Ratio `lhs / rhs` at the Maxwellian; exactly one at `p = 1` in the
/// continuum.
pub fn maxwellian_sharpness(p: f64, box_half_width: f64, n_per_axis: usize) -> Result<f64> {
    Ok(maxwellian_report(p, box_half_width, n_per_axis)?.ratio)
}

/// Predicted `d/dt ∫u^p` along `∂_t u = (G*u) Δu + α u²`:
///
/// ```text
/// p [ -(4/p)((p-1)/p) ∫(G*u)|∂_r u^{p/2}|² - (1/p) ∫u^{p+1} + α ∫u^{p+1} ]
/// ```
pub fn lp_production_rate(u: &RadialField, p: f64, alpha: f64) -> Result<f64> {
    check_exponent(p)?;
    u.require_nonnegative("u")?;
    let power = integrate_radial(&u.map(|v| v.powf(p + 1.0)));
    let dirichlet = if p == 1.0 {
        0.0
    } else {
        coulomb_dirichlet(u, p)
    };
    Ok(p * (-(4.0 / p) * ((p - 1.0) / p) * dirichlet - power / p + alpha * power))
}
