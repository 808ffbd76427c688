//! Grid-refinement study on the smooth advection problem for every standard
//! scheme.
//!
//! cargo run --example convergence

use weno_maim::problems::{ProblemId, ProblemSpec};
use weno_maim::runner::{converge, standard_schemes};

fn main() -> weno_maim::Result<()> {
    let base = ProblemSpec::new(ProblemId::LaeSine);
    let grids = [20, 40, 80, 160];
    for scheme in standard_schemes() {
        let table = converge(&base, &scheme, &grids)?;
        println!("{}", table.scheme);
        for row in &table.rows {
            let order = row.orders.map_or("-".to_string(), |o| format!("{:.3}", o[0]));
            println!("  N = {:4}  L1 = {:.4e}  order {}", row.n, row.norms.l1, order);
        }
    }
    Ok(())
}
