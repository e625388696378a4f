//! Numerical laboratory for the non-local quadratic heat equation
//!
//! ```text
//! ∂_t u = {(-Δ)⁻¹u} Δu + α u²,   x ∈ ℝ³
//! ```
//!
//! and for the weighted non-local inequality behind its `L^p` estimates,
//!
//! ```text
//! ∫ g^{p+1} ≤ ((p+1)/p)² ∫ (b^{ij} * g) ∂_i g^{p/2} ∂_j g^{p/2}.
//! ```
//!
//! * [`radial`] and [`potential`]: radial grids, quadrature, derivatives and
//!   the Newton potential.
//! * [`kernels`]: Coulomb and Landau matrix kernels with admissibility checks.
//! * [`functionals`] and [`suite`]: both sides of the inequality, the
//!   Maxwellian sharpness ratio, randomized verification suites.
//! * [`evolution`]: explicit radial solver with conservation and `L^p`
//!   diagnostics.
//! * [`threshold`]: the curve `h(p)` and admissible exponents.
//! * [`cli`]: the batch front end behind the `nlheat` binary.

// `!(x > 0.0)` rejects NaN along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod evolution;
pub mod functionals;
pub mod kernels;
pub mod potential;
pub mod radial;
pub mod suite;
pub mod tensor;
pub mod threshold;

pub use error::{Error, Result};
pub use evolution::{
    conservation_residual, evolve, make_initial_data, monotonicity_report, rhs_model, step,
    Evolution, EvolutionConfig, EvolutionSeries, InitialData,
};
pub use functionals::{
    inequality_ratio, lhs_power_integral, lp_production_rate, maxwellian_sharpness, rhs_coulomb,
    rhs_matrix_kernel_3d, FunctionalReport, RhsMethod,
};
pub use kernels::{
    check_delta_identity, check_evenness_psd, coulomb_kernel, landau_kernel, KernelCheckReport,
    KernelChoice, MatrixKernel,
};
pub use potential::newton_potential;
pub use radial::{
    integrate_radial, lp_norm, make_grid, radial_derivative, radial_laplacian, RadialField,
    RadialGrid,
};
pub use threshold::{
    admissible_gamma, decay_q_range, h, monotonicity_coefficient, ThresholdResult,
};
