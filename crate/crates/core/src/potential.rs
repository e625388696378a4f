//! Newton potential `(-Δ)⁻¹u = G * u`, `G(x) = 1/(4π|x|)`, for radial `u`.
//!
//! For radial data the convolution collapses to
//!
//! ```text
//! (G * u)(r) = (1/r) ∫₀^r s² u(s) ds + ∫_r^∞ s u(s) ds
//! ```
//!
//! Both integrals are taken with `u` constant on each cell and the polynomial
//! weights integrated exactly, so data that are piecewise constant on the
//! cells (indicators of balls aligned with faces, for instance) get their
//! potential exactly at every node.

use crate::radial::{RadialField, RadialGrid};

pub fn newton_potential(u: &RadialField) -> RadialField {
    let mut out = vec![0.0; u.values().len()];
    newton_potential_into(u.grid(), u.values(), &mut out);
    RadialField::from_raw(*u.grid(), out)
}

/// Two cumulative passes, `O(n)`.
pub(crate) fn newton_potential_into(grid: &RadialGrid, u: &[f64], out: &mut [f64]) {
    let n = u.len();

    // Outer pass: ∫_{r_i}^{r_max} s u ds, accumulated from the boundary inward.
    let mut tail = 0.0;
    for i in (0..n).rev() {
        let r = grid.node(i);
        let right = grid.face(i + 1);
        out[i] = tail + 0.5 * u[i] * (right * right - r * r);
        let left = grid.face(i);
        tail += 0.5 * u[i] * (right * right - left * left);
    }

    // Inner pass: (1/r_i) ∫₀^{r_i} s² u ds.
    let mut enclosed = 0.0;
    for i in 0..n {
        let r = grid.node(i);
        let left = grid.face(i);
        let right = grid.face(i + 1);
        let partial = enclosed + u[i] * (r * r * r - left * left * left) / 3.0;
        out[i] += partial / r;
        enclosed += u[i] * (right * right * right - left * left * left) / 3.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::{integrate_radial, make_grid, radial_laplacian};
    use std::f64::consts::PI;

    fn max_err(f: &RadialField, exact: impl Fn(f64) -> f64) -> f64 {
        f.grid()
            .nodes()
            .zip(f.values())
            .map(|(r, v)| (v - exact(r)).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn unit_ball_closed_form() {
        let g = make_grid(2.0, 256).unwrap();
        let ball = RadialField::from_fn(g, |r| if r <= 1.0 { 1.0 } else { 0.0 });
        let phi = newton_potential(&ball);
        let exact = |r: f64| {
            if r <= 1.0 {
                0.5 - r * r / 6.0
            } else {
                1.0 / (3.0 * r)
            }
        };
        assert!(max_err(&phi, exact) < 1e-12);
    }

    #[test]
    fn gaussian_closed_form() {
        let g = make_grid(10.0, 4096).unwrap();
        let u = RadialField::from_fn(g, |r| (-r * r).exp());
        let phi = newton_potential(&u);
        let exact = |r: f64| PI.sqrt() / 4.0 * statrs::function::erf::erf(r) / r;
        assert!(max_err(&phi, exact) < 1e-5);
        assert!((exact(1.0) - 0.3734).abs() < 1e-4);
    }

    #[test]
    fn far_field_is_point_mass() {
        let g = make_grid(50.0, 20000).unwrap();
        let u = RadialField::from_fn(g, |r| (-(r / 0.2).powi(2)).exp());
        let mass = integrate_radial(&u);
        let phi = newton_potential(&u);
        for i in [5000, 10000, 19999] {
            let r = g.node(i);
            let far = mass / (4.0 * PI * r);
            assert!((phi.values()[i] - far).abs() / far < 1e-4);
        }
    }

    #[test]
    fn linear_and_positive() {
        let g = make_grid(6.0, 300).unwrap();
        let u = RadialField::from_fn(g, |r| (-r * r).exp());
        let v = RadialField::from_fn(g, |r| 1.0 / (1.0 + r.powi(4)));
        let (a, b) = (2.5, -0.75);
        let combo = RadialField::from_fn(g, |r| a * (-r * r).exp() + b / (1.0 + r.powi(4)));
        let lhs = newton_potential(&combo);
        let pu = newton_potential(&u);
        let pv = newton_potential(&v);
        for i in 0..g.len() {
            let rhs = a * pu.values()[i] + b * pv.values()[i];
            assert!((lhs.values()[i] - rhs).abs() <= 1e-12 * rhs.abs().max(1e-300));
        }
        assert!(pu.values().iter().all(|&x| x >= 0.0));
    }

    #[test]
    fn discrete_inverse_converges_at_second_order() {
        let err = |n| {
            let g = make_grid(8.0, n).unwrap();
            let u = RadialField::from_fn(g, |r| (-r * r).exp());
            let lap = radial_laplacian(&newton_potential(&u));
            // Interior nodes: away from the truncation boundary.
            (0..n * 3 / 4)
                .map(|i| (-lap.values()[i] - u.values()[i]).abs())
                .fold(0.0, f64::max)
        };
        let (e1, e2, e3) = (err(128), err(256), err(512));
        assert!(e1 / e2 > 3.5 && e2 / e3 > 3.5, "{e1} {e2} {e3}");
    }
}
