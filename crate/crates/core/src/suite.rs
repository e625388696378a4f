//! Randomized families of strictly positive radial test functions and the
//! inequality suite run over them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::functionals::{inequality_ratio, RhsMethod};
use crate::kernels::KernelChoice;
use crate::radial::{make_grid, RadialField};

pub const DEFAULT_EXPONENTS: [f64; 5] = [0.5, 1.0, 1.5, 2.0, 3.0];
pub const DEFAULT_FUNCTION_COUNT: usize = 25;
pub const DEFAULT_TOLERANCE: f64 = 1e-3;
/// `g(r_max) / max g` for the automatically chosen domain.
pub const TAIL_TOLERANCE: f64 = 1e-16;
/// `g / max g` at the faces of the tensor box.
pub const BOX_TAIL_TOLERANCE: f64 = 1e-8;
/// Radial samples interpolated onto the tensor grid.
const TENSOR_SOURCE_NODES: usize = 4096;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum TestProfile {
    /// `Σ c_k exp(-((r - m_k)/σ_k)²)` with `c_k > 0`.
    GaussianMixture { components: Vec<[f64; 3]> },
    /// `A exp(-(r/σ)^a)`.
    StretchedExp {
        amplitude: f64,
        sigma: f64,
        power: f64,
    },
}

impl TestProfile {
    pub fn eval(&self, r: f64) -> f64 {
        match self {
            TestProfile::GaussianMixture { components } => components
                .iter()
                .map(|[c, m, s]| c * (-((r - m) / s).powi(2)).exp())
                .sum(),
            TestProfile::StretchedExp {
                amplitude,
                sigma,
                power,
            } => amplitude * (-(r / sigma).powf(*power)).exp(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            TestProfile::GaussianMixture { components } => {
                format!("gaussian_mixture_{}", components.len())
            }
            TestProfile::StretchedExp { power, .. } => format!("stretched_exp_a{power:.3}"),
        }
    }

    /// Smallest scan radius beyond which `g ≤ tol · max g`.
    pub fn tail_radius(&self, tol: f64) -> f64 {
        let scale = match self {
            TestProfile::GaussianMixture { components } => {
                components.iter().map(|[_, m, s]| m + s).fold(0.0, f64::max)
            }
            TestProfile::StretchedExp { sigma, .. } => *sigma,
        };
        let dr = scale * 1e-3;
        let far = 1000.0 * scale;
        let peak = (0..)
            .map(|i| i as f64 * dr)
            .take_while(|&r| r <= 10.0 * scale)
            .map(|r| self.eval(r))
            .fold(0.0, f64::max);
        let mut r = far;
        while r > 0.0 && self.eval(r) <= tol * peak {
            r -= scale * 0.01;
        }
        r + scale * 0.01
    }

    pub fn sample(&self, r_max: f64, n: usize) -> Result<RadialField> {
        let grid = make_grid(r_max, n)?;
        Ok(RadialField::from_fn(grid, |r| self.eval(r)))
    }
}

/// `count` profiles alternating between the two families.
pub fn random_profiles(count: usize, seed: u64) -> Vec<TestProfile> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            if i % 2 == 0 {
                let k = rng.random_range(1..=3);
                let components = (0..k)
                    .map(|_| {
                        [
                            rng.random_range(0.2..2.0),
                            rng.random_range(0.0..2.0),
                            rng.random_range(0.5..2.5),
                        ]
                    })
                    .collect();
                TestProfile::GaussianMixture { components }
            } else {
                TestProfile::StretchedExp {
                    amplitude: rng.random_range(0.2..3.0),
                    sigma: rng.random_range(0.5..2.0),
                    power: rng.random_range(1.0..=3.0),
                }
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteRow {
    pub function: String,
    pub p: f64,
    pub n: usize,
    pub r_max: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
}

/// Coulomb-kernel ratios for every `(profile, p)` pair on `n`-node grids.
///
/// `r_max` is the profile's tail radius unless overridden.
pub fn run_inequality_suite(
    profiles: &[TestProfile],
    exponents: &[f64],
    n: usize,
    r_max: Option<f64>,
) -> Result<Vec<SuiteRow>> {
    if exponents.is_empty() {
        return Err(invalid("no exponents requested"));
    }
    let mut rows = Vec::with_capacity(profiles.len() * exponents.len());
    for (idx, profile) in profiles.iter().enumerate() {
        let r_max = r_max.unwrap_or_else(|| profile.tail_radius(TAIL_TOLERANCE));
        let g = profile.sample(r_max, n)?;
        for &p in exponents {
            let report = inequality_ratio(&g, p, RhsMethod::CoulombRadial)?;
            rows.push(SuiteRow {
                function: format!("{idx:02}_{}", profile.label()),
                p,
                n,
                r_max,
                lhs: report.lhs,
                rhs: report.rhs,
                ratio: report.ratio,
            });
        }
    }
    Ok(rows)
}

/// Same suite with the right-hand side on an `n_per_axis³` tensor grid, for
/// any built-in kernel.
///
/// Each profile gets the box `[-R, R]³` with `R` its tail radius at
/// [`BOX_TAIL_TOLERANCE`]; `SuiteRow::r_max` records `R`.
pub fn run_tensor_suite(
    profiles: &[TestProfile],
    exponents: &[f64],
    kernel: KernelChoice,
    n_per_axis: usize,
) -> Result<Vec<SuiteRow>> {
    if exponents.is_empty() {
        return Err(invalid("no exponents requested"));
    }
    let mut rows = Vec::with_capacity(profiles.len() * exponents.len());
    for (idx, profile) in profiles.iter().enumerate() {
        let half_width = profile.tail_radius(BOX_TAIL_TOLERANCE);
        let g = profile.sample(profile.tail_radius(TAIL_TOLERANCE), TENSOR_SOURCE_NODES)?;
        let method = RhsMethod::Tensor {
            kernel,
            box_half_width: half_width,
            n_per_axis,
        };
        for &p in exponents {
            let report = inequality_ratio(&g, p, method)?;
            rows.push(SuiteRow {
                function: format!("{idx:02}_{}", profile.label()),
                p,
                n: n_per_axis,
                r_max: half_width,
                lhs: report.lhs,
                rhs: report.rhs,
                ratio: report.ratio,
            });
        }
    }
    Ok(rows)
}

/// `max(ratio - 1, 0)` over the rows.
pub fn max_overshoot(rows: &[SuiteRow]) -> f64 {
    rows.iter()
        .map(|r| (r.ratio - 1.0).max(0.0))
        .fold(0.0, f64::max)
}

pub fn max_ratio(rows: &[SuiteRow]) -> f64 {
    rows.iter()
        .map(|r| r.ratio)
        .fold(f64::NEG_INFINITY, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profiles_are_deterministic_and_positive() {
        let a = random_profiles(10, 3);
        let b = random_profiles(10, 3);
        assert_eq!(a, b);
        assert_ne!(a, random_profiles(10, 4));
        for p in &a {
            for r in [0.0, 0.5, 3.0, 10.0] {
                assert!(p.eval(r) > 0.0);
            }
        }
    }

    #[test]
    fn tail_radius_for_gaussian() {
        let g = TestProfile::GaussianMixture {
            components: vec![[1.0, 0.0, 1.0]],
        };
        let r = g.tail_radius(1e-10);
        // exp(-r²) = 1e-10 at r = √(10 ln 10) ≈ 4.80.
        assert!((r - 4.799).abs() < 0.02, "{r}");
    }

    #[test]
    fn tensor_suite_approaches_radial_for_coulomb() {
        // A smooth Gaussian and a cusped exponential with a long tail.
        let profiles = random_profiles(2, 5);
        let radial = run_inequality_suite(&profiles, &[2.0], 2048, None).unwrap();
        let coarse = run_tensor_suite(&profiles, &[2.0], KernelChoice::Coulomb, 32).unwrap();
        let fine = run_tensor_suite(&profiles, &[2.0], KernelChoice::Coulomb, 48).unwrap();
        assert_eq!(radial[0].function, fine[0].function);
        assert!((fine[0].ratio - radial[0].ratio).abs() / radial[0].ratio < 0.01);
        for i in 0..2 {
            let err = |rows: &[SuiteRow]| (rows[i].ratio - radial[i].ratio).abs();
            assert!(err(&fine) < err(&coarse));
        }
    }
}
