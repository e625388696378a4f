//! Discrete operators against closed forms and independent quadratures.

use std::f64::consts::PI;

use approx::assert_relative_eq;
use statrs::function::erf::erf;

use nonlocal_heat::evolution::{evolve, EvolutionConfig, InitialData};
use nonlocal_heat::kernels::GaussianBump;
use nonlocal_heat::{
    check_delta_identity, coulomb_kernel, inequality_ratio, landau_kernel, lhs_power_integral,
    make_grid, make_initial_data, rhs_coulomb, rhs_matrix_kernel_3d, KernelChoice, RadialField,
    RhsMethod,
};

/// Composite Simpson rule on `[a, b]` with `2m` panels.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, m: usize) -> f64 {
    let n = 2 * m;
    let h = (b - a) / n as f64;
    let inner: f64 = (1..n)
        .map(|i| {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            w * f(a + i as f64 * h)
        })
        .sum();
    (f(a) + f(b) + inner) * h / 3.0
}

/// `(G * e^{-|x|²})(r)`.
fn gaussian_potential(r: f64) -> f64 {
    if r < 1e-8 {
        0.5
    } else {
        PI.sqrt() / 4.0 * erf(r) / r
    }
}

/// `((p+1)/p)² ∫ (G*g) |∂_r g^{p/2}|² dx` for `g = e^{-r²}`, by Simpson.
fn gaussian_rhs_oracle(p: f64) -> f64 {
    let c = ((p + 1.0) / p).powi(2);
    // ∂_r e^{-p r²/2} = -p r e^{-p r²/2}.
    let integrand = |r: f64| {
        let d = p * r * (-0.5 * p * r * r).exp();
        4.0 * PI * r * r * gaussian_potential(r) * d * d
    };
    c * simpson(integrand, 0.0, 12.0, 20_000)
}

#[test]
fn gaussian_lhs_matches_closed_form() {
    let g = RadialField::from_fn(make_grid(12.0, 4096).unwrap(), |r| (-r * r).exp());
    for p in [0.5, 1.0, 1.5, 2.0, 3.0] {
        let exact = (PI / (p + 1.0)).powf(1.5);
        assert_relative_eq!(
            lhs_power_integral(&g, p).unwrap(),
            exact,
            max_relative = 1e-6
        );
    }
}

#[test]
fn gaussian_rhs_matches_quadrature() {
    let g = RadialField::from_fn(make_grid(12.0, 4096).unwrap(), |r| (-r * r).exp());
    for p in [0.5, 1.0, 2.0, 3.0] {
        let oracle = gaussian_rhs_oracle(p);
        assert_relative_eq!(rhs_coulomb(&g, p).unwrap(), oracle, max_relative = 1e-5);
    }
}

#[test]
fn unit_ball_lhs_for_large_exponent() {
    // Indicator data, p ≥ 2 only.
    let g = RadialField::from_fn(make_grid(2.0, 4096).unwrap(), |r| {
        if r <= 1.0 {
            1.0
        } else {
            0.0
        }
    });
    assert_relative_eq!(
        lhs_power_integral(&g, 2.0).unwrap(),
        4.0 * PI / 3.0,
        max_relative = 1e-3
    );
}

#[test]
fn coulomb_tensor_path_matches_radial_path() {
    let g = RadialField::from_fn(make_grid(12.0, 4096).unwrap(), |r| (-r * r).exp());
    let radial = rhs_coulomb(&g, 2.0).unwrap();
    let tensor = rhs_matrix_kernel_3d(&g, 2.0, &coulomb_kernel(), 6.0, 48).unwrap();
    assert!((tensor - radial).abs() / radial < 0.05, "{tensor} {radial}");

    let method = RhsMethod::Tensor {
        kernel: KernelChoice::Coulomb,
        box_half_width: 6.0,
        n_per_axis: 48,
    };
    let r3 = inequality_ratio(&g, 2.0, method).unwrap().ratio;
    let r1 = inequality_ratio(&g, 2.0, RhsMethod::CoulombRadial)
        .unwrap()
        .ratio;
    assert!((r3 - r1).abs() / r1 < 0.05);
}

#[test]
fn landau_scale_is_linear_in_the_right_hand_side() {
    let g = RadialField::from_fn(make_grid(10.0, 1024).unwrap(), |r| (-r * r).exp());
    let one = rhs_matrix_kernel_3d(&g, 1.0, &landau_kernel(1.0).unwrap(), 5.0, 24).unwrap();
    let three = rhs_matrix_kernel_3d(&g, 1.0, &landau_kernel(3.0).unwrap(), 5.0, 24).unwrap();
    assert_relative_eq!(three, 3.0 * one, max_relative = 1e-12);
}

#[test]
fn delta_identity_off_axis() {
    let phi = GaussianBump::at([0.0; 3]);
    let x = [0.5, -0.5, 0.25];
    let target = (-(0.25 + 0.25 + 0.0625f64)).exp();
    for k in [KernelChoice::Coulomb, KernelChoice::Landau] {
        let v = check_delta_identity(k.build().as_ref(), &phi, x, 5.0, 64).unwrap();
        assert!((v - target).abs() < 1e-2, "{} {v} {target}", k.as_str());
    }
}

#[test]
fn delta_identity_with_shifted_bump() {
    let phi = GaussianBump::at([0.3, 0.0, -0.2]);
    let v = check_delta_identity(&coulomb_kernel(), &phi, [0.3, 0.0, -0.2], 5.0, 64).unwrap();
    assert!((v - 1.0).abs() < 1e-2, "{v}");
}

#[test]
fn positivity_clamps_are_rare() {
    let grid = make_grid(8.0, 512).unwrap();
    for data in [
        InitialData::Gaussian {
            amplitude: 1.0,
            sigma: 1.0,
        },
        InitialData::SmoothedBall {
            amplitude: 1.0,
            radius: 1.5,
            width: 0.5,
        },
        InitialData::PowerTail {
            amplitude: 1.0,
            s: 3.0,
        },
    ] {
        let u0 = make_initial_data(&data, grid).unwrap();
        let config = EvolutionConfig::new(0.9, 0.2, 0.25, grid).unwrap();
        let series = evolve(&u0, config).unwrap();
        assert!(
            series.clamp_fraction() < 1e-3,
            "{data:?}: {}",
            series.clamp_fraction()
        );
        assert!(series.mass.iter().all(|m| *m > 0.0));
    }
}
