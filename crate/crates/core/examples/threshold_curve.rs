//! The curve h(p) and the admissible exponents 3/2 + γ(α).
//!
//! ```text
//! cargo run --release --example threshold_curve
//! ```

use num_rational::Ratio;

use nonlocal_heat::threshold::h_exact;
use nonlocal_heat::{admissible_gamma, h, Error};

fn main() -> nonlocal_heat::Result<()> {
    println!("h(3/2) = {} exactly", h_exact(Ratio::new(3, 2))?);
    println!("\n{:>6} {:>10}", "p", "h(p)");
    for i in 1..=16 {
        let p = 0.5 * i as f64;
        println!("{p:6.2} {:10.6}", h(p)?);
    }

    println!("\n{:>6} {:>10} {:>10} {:>10}", "α", "p*", "γ", "3/2+γ");
    for alpha in [0.0, 0.5, 0.8, 0.9, 0.95, 0.98, 0.986, 74.0 / 75.0, 1.0] {
        match admissible_gamma(alpha) {
            Ok(t) => println!(
                "{alpha:6.4} {:10.6} {:10.6} {:10.6}",
                t.p_star,
                t.gamma,
                t.exponent()
            ),
            Err(Error::OutOfRange(msg)) => println!("{alpha:6.4} {msg}"),
            Err(e) => return Err(e),
        }
    }
    Ok(())
}
