//! The Landau inequality at the Maxwellian, where the ratio is one at p = 1.
//!
//! ```text
//! cargo run --release --example maxwellian_sharpness
//! ```

use nonlocal_heat::functionals::maxwellian_report;

fn main() -> nonlocal_heat::Result<()> {
    println!("{:>4} {:>12} {:>12} {:>10}", "n", "lhs", "rhs", "ratio");
    for n in [16, 24, 32, 48, 64] {
        let r = maxwellian_report(1.0, 6.0, n)?;
        println!("{n:>4} {:>12.8} {:>12.8} {:>10.6}", r.lhs, r.rhs, r.ratio);
    }
    println!(
        "∫μ² = (4π)^(-3/2) = {:.8}",
        (4.0 * std::f64::consts::PI).powf(-1.5)
    );

    // Away from p = 1 the Maxwellian is not extremal.
    for p in [1.5, 2.0] {
        let r = maxwellian_report(p, 6.0, 48)?;
        println!("p = {p}: ratio {:.6}", r.ratio);
    }
    Ok(())
}
