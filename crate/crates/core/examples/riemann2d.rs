//! Small 2D Riemann problem with MAIM3. Prints a summary and writes the
//! final field to `riemann2d.csv` in the working directory.

use weno_maim::problems::{ProblemId, ProblemSpec};
use weno_maim::runner::{field_csv, solve};
use weno_maim::MappingKind;

fn main() -> weno_maim::Result<()> {
    let spec = ProblemSpec::new(ProblemId::Riemann2d).with_grid(64, 64);
    let out = solve(&spec, &MappingKind::maim3_default())?;
    let r = &out.report;
    println!(
        "{} {}x{} to t = {}: {} steps in {:.1?}",
        r.scheme, r.nx, r.ny, r.t_final, r.steps, r.wall_time
    );
    if let Some(field) = out.field {
        let rho = field.interior_component(0);
        let (lo, hi) = rho.iter().fold((f64::MAX, f64::MIN), |(a, b), &v| (a.min(v), b.max(v)));
        println!("density range [{lo:.4}, {hi:.4}]");
        std::fs::write("riemann2d.csv", field_csv(&field))?;
    }
    Ok(())
}
