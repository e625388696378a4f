//! Evenness, positive semi-definiteness and the delta identity for the
//! built-in kernels.
//!
//! ```text
//! cargo run --release --example kernel_admissibility
//! ```

use nonlocal_heat::kernels::GaussianBump;
use nonlocal_heat::{check_delta_identity, check_evenness_psd, KernelChoice};

fn main() -> nonlocal_heat::Result<()> {
    let phi = GaussianBump::at([0.0; 3]);
    for choice in [KernelChoice::Coulomb, KernelChoice::Landau] {
        let k = choice.build();
        let report = check_evenness_psd(k.as_ref(), 10_000, 0)?;
        println!(
            "{}: evenness {:.1e}, min ξᵀbξ/|ξ|² {:.3e}",
            k.name(),
            report.max_evenness_violation,
            report.min_quadratic_form
        );
        for x in [[0.0f64, 0.0, 0.0], [1.0, 0.0, 0.0]] {
            let target = (-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2])).exp();
            for n in [16, 32, 64] {
                let v = check_delta_identity(k.as_ref(), &phi, x, 5.0, n)?;
                println!("  x = {x:?}  n = {n:2}  -∫b:∇²φ = {v:.6}  φ(x) = {target:.6}");
            }
        }
    }
    Ok(())
}
