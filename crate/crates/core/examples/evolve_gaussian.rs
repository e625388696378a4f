//! Evolves Gaussian data and prints the conservation law and norm decay.
//!
//! ```text
//! cargo run --release --example evolve_gaussian [alpha]
//! ```

use nonlocal_heat::evolution::max_successive_uptick;
use nonlocal_heat::{
    admissible_gamma, conservation_residual, decay_q_range, evolve, make_grid, make_initial_data,
    monotonicity_report, EvolutionConfig, InitialData,
};

fn main() -> nonlocal_heat::Result<()> {
    let alpha: f64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0.9);
    let grid = make_grid(8.0, 1024)?;
    let data = InitialData::Gaussian {
        amplitude: 1.0,
        sigma: 1.0,
    };
    let u0 = make_initial_data(&data, grid)?;

    let mut ps = vec![1.5, 2.0, decay_q_range().upper];
    if let Ok(t) = admissible_gamma(alpha) {
        println!(
            "α = {alpha}: γ = {:.6}, tracking p = {:.6}",
            t.gamma,
            t.exponent()
        );
        ps.push(t.exponent());
    }
    let config = EvolutionConfig::new(alpha, 1.0, 0.25, grid)?
        .with_diag_ps(ps.iter().copied())
        .with_record_interval(0.1);
    let series = evolve(&u0, config)?;

    println!(
        "{:>5} {:>10} {:>10} {:>10} {:>10}",
        "t", "mass", "∫u²", "∫₀ᵗ∫u²", "max u"
    );
    for i in 0..series.len() {
        println!(
            "{:5.2} {:10.6} {:10.6} {:10.6} {:10.6}",
            series.times[i],
            series.mass[i],
            series.l2sq[i],
            series.accumulated_l2[i],
            series.max_u[i]
        );
    }
    println!(
        "conservation residual {:.3e}",
        conservation_residual(&series, alpha)
    );
    for p in ps {
        println!(
            "p = {p:.6}: uptick vs t=0 {:.2e}, successive {:.2e}",
            monotonicity_report(&series, p)?,
            max_successive_uptick(&series, p)?
        );
    }
    println!("{} steps, {} clamped nodes", series.steps, series.clamped);
    Ok(())
}
