//! Interacting blast waves on a coarse grid. Reports the smallest density and
//! pressure seen, or where a scheme produced a nonphysical state.
//!
//! cargo run --release --example blast_wave -- 200

use weno_maim::problems::{ProblemId, ProblemSpec};
use weno_maim::runner::{solve, standard_schemes};

fn main() -> weno_maim::Result<()> {
    let n = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(200);
    let spec = ProblemSpec::new(ProblemId::Blast).with_grid(n, 1);
    for scheme in standard_schemes() {
        let r = solve(&spec, &scheme)?.report;
        match &r.blow_up {
            Some(b) => println!("{:<24} blew up at t = {:.4}: {}", r.scheme, b.time, b.reason),
            None => println!(
                "{:<24} {} steps, min rho {:.3e}, min p {:.3e}, {} averaging fallbacks",
                r.scheme,
                r.steps,
                r.min_density.unwrap_or(f64::NAN),
                r.min_pressure.unwrap_or(f64::NAN),
                r.fallbacks
            ),
        }
    }
    Ok(())
}
