use num_rational::Ratio;
use proptest::prelude::*;

use nonlocal_heat::error::Error;
use nonlocal_heat::evolution::{stable_dt, step};
use nonlocal_heat::kernels::quadratic_form;
use nonlocal_heat::threshold::{h_exact, ALPHA_CRITICAL};
use nonlocal_heat::{
    admissible_gamma, coulomb_kernel, h, inequality_ratio, integrate_radial, landau_kernel,
    lp_norm, make_grid, monotonicity_coefficient, newton_potential, MatrixKernel, RadialField,
    RhsMethod,
};

fn mixture(grid: nonlocal_heat::RadialGrid, c: [f64; 3], m: [f64; 3]) -> RadialField {
    RadialField::from_fn(grid, move |r| {
        (0..3)
            .map(|k| c[k] * (-((r - m[k]) / (0.6 + 0.4 * k as f64)).powi(2)).exp())
            .sum()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn coefficient_sign_matches_threshold(p in 1e-3f64..=8.0, alpha in 0.0f64..=1.2) {
        let negative = monotonicity_coefficient(p, alpha).unwrap() <= 0.0;
        prop_assert_eq!(negative, alpha <= h(p).unwrap());
    }

    #[test]
    fn admissible_gamma_postcondition(alpha in 0.0f64..1.1) {
        match admissible_gamma(alpha) {
            Ok(t) => {
                prop_assert!(alpha < ALPHA_CRITICAL);
                prop_assert!(t.gamma > 0.0);
                prop_assert!(h(t.exponent()).unwrap() >= alpha);
                prop_assert!(monotonicity_coefficient(t.exponent(), alpha).unwrap() <= 0.0);
            }
            Err(Error::OutOfRange(_)) => prop_assert!(alpha >= ALPHA_CRITICAL),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn rational_threshold_agrees_with_float(a in 1i64..200, b in 1i64..50) {
        let exact = h_exact(Ratio::new(a, b)).unwrap();
        let float = *exact.numer() as f64 / *exact.denom() as f64;
        prop_assert!((float - h(a as f64 / b as f64).unwrap()).abs() <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn newton_potential_linear_and_positive(
        c in prop::array::uniform3(0.0f64..2.0),
        m in prop::array::uniform3(0.0f64..2.0),
        d in prop::array::uniform3(0.0f64..2.0),
        a in -3.0f64..3.0,
    ) {
        let grid = make_grid(10.0, 256).unwrap();
        let u = mixture(grid, c, m);
        let v = mixture(grid, d, m);
        let combo = RadialField::from_fn_indexed(grid, |i| u.values()[i] + a * v.values()[i]);
        let (pu, pv, pc) = (newton_potential(&u), newton_potential(&v), newton_potential(&combo));
        for i in 0..grid.len() {
            let expect = pu.values()[i] + a * pv.values()[i];
            prop_assert!((pc.values()[i] - expect).abs() <= 1e-12 * (1.0 + expect.abs()));
        }
        prop_assert!(pu.is_nonnegative());
    }

    #[test]
    fn ratio_is_amplitude_invariant(
        c in prop::array::uniform3(0.05f64..2.0),
        m in prop::array::uniform3(0.0f64..2.0),
        lambda in 1e-3f64..1e3,
        p in 0.5f64..3.0,
    ) {
        let grid = make_grid(14.0, 512).unwrap();
        let g = mixture(grid, c, m);
        let base = inequality_ratio(&g, p, RhsMethod::CoulombRadial).unwrap().ratio;
        let scaled = inequality_ratio(&g.scaled(lambda), p, RhsMethod::CoulombRadial).unwrap().ratio;
        prop_assert!((scaled - base).abs() <= 1e-12 * base);
        prop_assert!(base > 0.0 && base <= 1.0);
    }

    #[test]
    fn integral_and_norm_homogeneity(
        c in prop::array::uniform3(0.0f64..2.0),
        m in prop::array::uniform3(0.0f64..2.0),
        lambda in 1e-2f64..1e2,
        p in 0.5f64..4.0,
    ) {
        let grid = make_grid(10.0, 128).unwrap();
        let u = mixture(grid, c, m);
        let s = u.scaled(lambda);
        let (iu, is) = (integrate_radial(&u), integrate_radial(&s));
        prop_assert!((is - lambda * iu).abs() <= 1e-12 * (lambda * iu).abs().max(1e-300));
        let (nu, ns) = (lp_norm(&u, p).unwrap(), lp_norm(&s, p).unwrap());
        prop_assert!((ns - lambda * nu).abs() <= 1e-12 * (lambda * nu).max(1e-300));
    }

    #[test]
    fn kernels_even_and_positive_semidefinite(
        v in prop::array::uniform3(-10.0f64..10.0),
        xi in prop::array::uniform3(-1.0f64..1.0),
        scale in 0.1f64..10.0,
    ) {
        prop_assume!(v.iter().map(|x| x * x).sum::<f64>() > 1e-12);
        let neg = [-v[0], -v[1], -v[2]];
        let kernels: [Box<dyn MatrixKernel>; 2] =
            [Box::new(coulomb_kernel()), Box::new(landau_kernel(scale).unwrap())];
        for k in kernels {
            let (a, b) = (k.evaluate(v).unwrap(), k.evaluate(neg).unwrap());
            prop_assert_eq!(a, b);
            let norm = xi.iter().map(|x| x * x).sum::<f64>();
            prop_assert!(quadratic_form(&a, xi) >= -1e-14 * norm * a[0][0].abs().max(1.0));
            prop_assert!(quadratic_form(&a, v) >= -1e-12);
        }
    }

    #[test]
    fn stable_steps_keep_data_nonnegative(
        c in prop::array::uniform3(0.05f64..3.0),
        m in prop::array::uniform3(0.0f64..2.0),
        alpha in 0.0f64..1.5,
    ) {
        let grid = make_grid(12.0, 128).unwrap();
        let mut u = mixture(grid, c, m);
        for _ in 0..20 {
            let dt = stable_dt(&u, alpha, 0.25);
            u = step(&u, alpha, dt).unwrap().field;
            prop_assert!(u.is_nonnegative());
        }
    }
}
