//! Randomized Coulomb inequality suite under grid refinement.
//!
//! ```text
//! cargo run --release --example inequality_suite [seed]
//! ```

use nonlocal_heat::suite::{
    max_overshoot, max_ratio, random_profiles, run_inequality_suite, DEFAULT_EXPONENTS,
};

fn main() -> nonlocal_heat::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0);
    let profiles = random_profiles(25, seed);

    for n in [512, 2048, 4096] {
        let rows = run_inequality_suite(&profiles, &DEFAULT_EXPONENTS, n, None)?;
        println!(
            "n = {n:4}: {} ratios, max {:.6}, overshoot {:.2e}",
            rows.len(),
            max_ratio(&rows),
            max_overshoot(&rows)
        );
    }

    let rows = run_inequality_suite(&profiles[..4], &DEFAULT_EXPONENTS, 2048, None)?;
    println!(
        "\n{:<26} {:>4} {:>12} {:>12} {:>9}",
        "function", "p", "lhs", "rhs", "ratio"
    );
    for r in rows {
        println!(
            "{:<26} {:>4} {:>12.5e} {:>12.5e} {:>9.5}",
            r.function, r.p, r.lhs, r.rhs, r.ratio
        );
    }
    Ok(())
}
