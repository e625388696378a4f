//! Newton potential of radial data against the closed forms.
//!
//! ```text
//! cargo run --release --example newton_potential
//! ```

use std::f64::consts::PI;

use nonlocal_heat::{make_grid, newton_potential, radial_laplacian, RadialField};

fn main() -> nonlocal_heat::Result<()> {
    let grid = make_grid(2.0, 4096)?;
    let ball = RadialField::from_fn(grid, |r| if r <= 1.0 { 1.0 } else { 0.0 });
    let phi = newton_potential(&ball);

    println!("unit ball");
    println!("{:>8} {:>14} {:>14}", "r", "discrete", "exact");
    for i in [0, 1024, 2047, 2048, 3072, 4095] {
        let r = grid.node(i);
        let exact = if r <= 1.0 {
            0.5 - r * r / 6.0
        } else {
            1.0 / (3.0 * r)
        };
        println!("{r:8.4} {:14.10} {exact:14.10}", phi.values()[i]);
    }

    // G * e^{-r²} = (√π/4) erf(r)/r; the discrete Laplacian inverts it.
    let grid = make_grid(10.0, 4096)?;
    let gauss = RadialField::from_fn(grid, |r| (-r * r).exp());
    let phi = newton_potential(&gauss);
    let lap = radial_laplacian(&phi);
    let residual = (0..grid.len() / 2)
        .map(|i| (lap.values()[i] + gauss.values()[i]).abs())
        .fold(0.0, f64::max);
    println!("\ngaussian: φ(0) = {:.10} (exact 1/2)", phi.values()[0]);
    println!("max |Δφ + u| on r < 5: {residual:.3e}");
    println!(
        "far field 4πrφ at r = 10: {:.8}",
        4.0 * PI * grid.node(4095) * phi.values()[4095]
    );
    println!("mass ∫u:                  {:.8}", PI.powf(1.5));
    Ok(())
}
