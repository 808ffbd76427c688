//! Square-wave advection over many periods, comparing overshoot and L1 error
//! between schemes. Pass the final time as the first argument.
//!
//! cargo run --release --example long_time_advection -- 20

use weno_maim::problems::{ProblemId, ProblemSpec};
use weno_maim::runner::solve;
use weno_maim::MappingKind;

fn main() -> weno_maim::Result<()> {
    let t_final = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(20.0);
    for id in [ProblemId::Slp, ProblemId::Bicwp] {
        let mut spec = ProblemSpec::new(id).with_grid(200, 1);
        spec.t_final = t_final;
        for scheme in [
            MappingKind::Identity,
            MappingKind::Henrick,
            MappingKind::maim3_default(),
            MappingKind::maim4_default(),
        ] {
            let r = solve(&spec, &scheme)?.report;
            let l1 = r.norms.map_or(f64::NAN, |n| n.l1);
            let osc = r.oscillation.expect("bounded problem");
            println!(
                "{:<6} {:<16} L1 {:.4e}  overshoot {:.2e}  undershoot {:.2e}",
                id.name(),
                r.scheme,
                l1,
                osc.overshoot,
                osc.undershoot
            );
        }
    }
    Ok(())
}
